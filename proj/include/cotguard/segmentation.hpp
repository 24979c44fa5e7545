// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cotguard Authors

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cotguard/chain.hpp"
#include "cotguard/text.hpp"

namespace cotguard {

/// Segmentation configuration for the thinking region.
///
/// Boundaries are sentence terminators followed by whitespace, blank lines,
/// and enumerated list markers ("1. ", "2) ") at line start or after
/// whitespace. Fragments shorter than `min_step_chars` code points merge
/// into the following step; a short trailing fragment stands alone (merging
/// backwards would retract an already-delivered step in streaming mode).
struct SegmentationRules {
  std::string think_tag = "thinking";
  std::string sentence_terminators = ".?!";
  bool blank_line_boundary = true;
  bool list_marker_boundary = true;
  size_t min_step_chars = 12;
  bool unterminated_is_thinking = true;

  std::string open_tag() const { return "<" + think_tag + ">"; }
  std::string close_tag() const { return "</" + think_tag + ">"; }
};

namespace detail {

/// A confirmed step boundary: the current fragment ends at `end`, the next
/// fragment begins at `next` (bytes between the two belong to the
/// inter-step separator, e.g. a consumed list marker).
struct Cut {
  size_t end = 0;
  size_t next = 0;
};

/// Incremental boundary scanner over an append-only buffer. Resumable:
/// returns NeedMore when the decision at the current position requires
/// bytes that have not arrived yet.
class BoundaryScanner {
 public:
  explicit BoundaryScanner(const SegmentationRules* rules) : rules_(rules) {}

  enum class Status { Found, NeedMore, End };

  Status next(std::string_view buf, bool eof, Cut* out) {
    const size_t n = buf.size();
    while (pos_ < n) {
      const char c = buf[pos_];
      if (is_terminator(c)) {
        size_t j = pos_ + 1;
        while (j < n && is_terminator(buf[j])) ++j;
        if (j >= n && !eof) return Status::NeedMore;  // run may extend
        if (j < n && text::is_space(buf[j])) {
          *out = Cut{j, j};
          pos_ = j;
          return Status::Found;
        }
        pos_ = j;
        continue;
      }
      if (rules_->blank_line_boundary && c == '\n') {
        size_t k = pos_ + 1;
        int newlines = 1;
        while (k < n && text::is_space(buf[k])) {
          if (buf[k] == '\n') ++newlines;
          ++k;
        }
        if (k >= n && !eof && newlines < 2) return Status::NeedMore;
        if (newlines >= 2) {
          *out = Cut{pos_, k};
          pos_ = k;
          return Status::Found;
        }
        pos_ = k;
        continue;
      }
      if (rules_->list_marker_boundary && text::is_digit(c) &&
          (pos_ == 0 || text::is_space(buf[pos_ - 1]))) {
        size_t j = pos_ + 1;
        while (j < n && text::is_digit(buf[j])) ++j;
        if (j >= n && !eof) return Status::NeedMore;
        if (j < n && (buf[j] == '.' || buf[j] == ')')) {
          if (j + 1 >= n && !eof) return Status::NeedMore;
          if (j + 1 < n && text::is_space(buf[j + 1])) {
            *out = Cut{pos_, j + 1};
            pos_ = j + 1;
            return Status::Found;
          }
          pos_ = j + 1;
          continue;
        }
        pos_ = j;
        continue;
      }
      ++pos_;
    }
    return eof ? Status::End : Status::NeedMore;
  }

  size_t position() const { return pos_; }

 private:
  bool is_terminator(char c) const {
    return rules_->sentence_terminators.find(c) != std::string::npos;
  }

  const SegmentationRules* rules_;
  size_t pos_ = 0;
};

/// Turns raw fragment ranges into steps, applying trimming, empty-fragment
/// dropping and short-fragment forward merging. A step is surfaced only when
/// the fragment after it starts (so the terminal flag is always correct),
/// or at region close.
class StepAssembler {
 public:
  explicit StepAssembler(const SegmentationRules* rules) : rules_(rules) {}

  void add_fragment(std::string_view region, size_t begin, size_t end,
                    std::vector<ReasoningStep>* out) {
    auto [a, b] = text::trimmed_range(region, begin, end);
    if (a >= b) return;  // whitespace-only fragment joins the separator
    if (pending_complete_) {
      emit(region, /*terminal=*/false, out);
    }
    if (has_pending_) {
      pend_.end = b;  // forward-merge the short pending fragment
    } else {
      pend_ = ByteRange{a, b};
      has_pending_ = true;
    }
    if (text::codepoint_count(region.substr(pend_.begin, pend_.size())) >=
        rules_->min_step_chars) {
      pending_complete_ = true;
    }
  }

  void finish(std::string_view region, std::vector<ReasoningStep>* out) {
    if (has_pending_) emit(region, /*terminal=*/true, out);
  }

  size_t emitted() const { return emitted_; }

 private:
  void emit(std::string_view region, bool terminal, std::vector<ReasoningStep>* out) {
    ReasoningStep step;
    step.index = emitted_++;
    step.span = pend_;
    step.text = std::string(region.substr(pend_.begin, pend_.size()));
    step.terminal = terminal;
    out->push_back(std::move(step));
    has_pending_ = false;
    pending_complete_ = false;
    pend_ = ByteRange{};
  }

  const SegmentationRules* rules_;
  ByteRange pend_;
  bool has_pending_ = false;
  bool pending_complete_ = false;
  size_t emitted_ = 0;
};

}  // namespace detail

/// Separators reconstructed from step spans: separators[i] is the source
/// text between step i-1 and step i (plus leading/trailing entries).
inline std::vector<std::string> derive_separators(std::string_view region,
                                                  const std::vector<ReasoningStep>& steps) {
  std::vector<std::string> seps;
  seps.reserve(steps.size() + 1);
  size_t prev_end = 0;
  for (const auto& step : steps) {
    seps.emplace_back(region.substr(prev_end, step.span.begin - prev_end));
    prev_end = step.span.end;
  }
  seps.emplace_back(region.substr(prev_end));
  return seps;
}

/// Segment a complete thinking region into steps. Total: empty input yields
/// an empty list.
inline std::vector<ReasoningStep> segment_steps(std::string_view thinking_text,
                                                const SegmentationRules& rules) {
  std::vector<ReasoningStep> steps;
  detail::BoundaryScanner scanner(&rules);
  detail::StepAssembler assembler(&rules);
  size_t frag_start = 0;
  detail::Cut cut;
  while (scanner.next(thinking_text, /*eof=*/true, &cut) == detail::BoundaryScanner::Status::Found) {
    assembler.add_fragment(thinking_text, frag_start, cut.end, &steps);
    frag_start = cut.next;
  }
  assembler.add_fragment(thinking_text, frag_start, thinking_text.size(), &steps);
  assembler.finish(thinking_text, &steps);
  return steps;
}

}  // namespace cotguard
