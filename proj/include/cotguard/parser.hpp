// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cotguard Authors

#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "cotguard/chain.hpp"
#include "cotguard/error.hpp"
#include "cotguard/segmentation.hpp"
#include "cotguard/text.hpp"

namespace cotguard {

enum class ParsePhase { BeforeThinking, InsideThinking, AfterThinking };

inline const char* to_string(ParsePhase p) {
  switch (p) {
    case ParsePhase::BeforeThinking: return "before_thinking";
    case ParsePhase::InsideThinking: return "inside_thinking";
    case ParsePhase::AfterThinking: return "after_thinking";
  }
  return "?";
}

/// Incremental parser over a model output stream.
///
/// Chunks may split tags and multi-byte characters at any byte; the parser
/// holds back ambiguous tails (partial tags, incomplete code points) and
/// never emits a step whose trailing boundary is unconfirmed. Emitted steps
/// are final: later chunks never retract or alter them. Text before the
/// first opening tag and all text after the first closing tag (including any
/// later tag pairs) belongs to the final answer.
class StreamParser {
 public:
  explicit StreamParser(SegmentationRules rules)
      : rules_(std::move(rules)),
        open_tag_(rules_.open_tag()),
        close_tag_(rules_.close_tag()),
        scanner_(&rules_),
        assembler_(&rules_) {}

  struct FeedResult {
    std::vector<ReasoningStep> steps;   // steps completed by this chunk
    std::string answer_fragment;        // answer bytes released by this chunk
  };

  FeedResult feed(std::string_view chunk) {
    if (finished_) raise(ErrorCode::ConfigInvalid, "feed after finish");
    std::string data;
    data.reserve(carry_.size() + chunk.size());
    data.append(carry_);
    data.append(chunk);
    carry_.clear();
    FeedResult result;
    consume(data, /*eof=*/false, &result);
    return result;
  }

  /// Close the stream: applies the unterminated-block policy, validates the
  /// remaining tail and assembles the full parse result.
  ParsedOutput finish() {
    if (!finished_) {
      FeedResult result;
      std::string data;
      data.swap(carry_);
      consume(data, /*eof=*/true, &result);
      append_steps(result.steps);
      finished_ = true;
    }
    ParsedOutput out;
    out.had_thinking_block = had_thinking_;
    out.final_answer = answer_;
    out.chain.steps = steps_;
    out.chain.source_region =
        had_thinking_ ? ByteRange{think_begin_raw_, think_begin_raw_ + think_buf_.size()}
                      : ByteRange{};
    out.chain.separators = derive_separators(think_buf_, steps_);
    return out;
  }

  ParsePhase phase() const { return phase_; }
  size_t emitted_step_count() const { return steps_.size(); }
  size_t buffered_bytes() const { return carry_.size(); }

 private:
  void consume(std::string_view data, bool eof, FeedResult* result) {
    size_t i = 0;
    while (i < data.size() || (eof && !region_closed_ && phase_ == ParsePhase::InsideThinking)) {
      switch (phase_) {
        case ParsePhase::BeforeThinking: {
          size_t p = data.find(open_tag_, i);
          if (p != std::string_view::npos) {
            emit_answer(data.substr(i, p - i), result);
            i = p + open_tag_.size();
            raw_pos_ += open_tag_.size();
            had_thinking_ = true;
            think_begin_raw_ = raw_pos_;
            phase_ = ParsePhase::InsideThinking;
            continue;
          }
          size_t hold = eof ? 0 : holdback(data.substr(i), open_tag_);
          size_t take = data.size() - i - hold;
          emit_answer(data.substr(i, take), result);
          carry_.assign(data.substr(i + take));
          return;
        }
        case ParsePhase::InsideThinking: {
          size_t p = data.find(close_tag_, i);
          if (p != std::string_view::npos) {
            append_thinking(data.substr(i, p - i));
            close_region(result);
            i = p + close_tag_.size();
            raw_pos_ += close_tag_.size();
            phase_ = ParsePhase::AfterThinking;
            continue;
          }
          if (eof) {
            if (!rules_.unterminated_is_thinking) {
              raise(ErrorCode::UnterminatedThinkingBlock,
                    "opening <" + rules_.think_tag + "> without closing tag");
            }
            append_thinking(data.substr(i));
            close_region(result);
            return;
          }
          size_t hold = holdback(data.substr(i), close_tag_);
          size_t take = data.size() - i - hold;
          append_thinking(data.substr(i, take));
          scan_thinking(/*region_eof=*/false, result);
          carry_.assign(data.substr(i + take));
          return;
        }
        case ParsePhase::AfterThinking: {
          size_t hold = eof ? 0 : utf8_hold(data.substr(i));
          size_t take = data.size() - i - hold;
          emit_answer(data.substr(i, take), result);
          carry_.assign(data.substr(i + take));
          return;
        }
      }
    }
  }

  /// Bytes to withhold: the longest data suffix that could still become
  /// `tag`, or an incomplete trailing code point. The two cannot coincide
  /// (tags are pure ASCII).
  size_t holdback(std::string_view tail, const std::string& tag) const {
    size_t max_k = std::min(tail.size(), tag.size() - 1);
    for (size_t k = max_k; k >= 1; --k) {
      if (tail.substr(tail.size() - k) == std::string_view(tag).substr(0, k)) return k;
    }
    return utf8_hold(tail);
  }

  size_t utf8_hold(std::string_view tail) const {
    return tail.size() - text::utf8_complete_prefix(tail);
  }

  void emit_answer(std::string_view piece, FeedResult* result) {
    if (piece.empty()) return;
    check_utf8(piece);
    answer_.append(piece);
    result->answer_fragment.append(piece);
    raw_pos_ += piece.size();
  }

  void append_thinking(std::string_view piece) {
    if (piece.empty()) return;
    check_utf8(piece);
    think_buf_.append(piece);
    raw_pos_ += piece.size();
  }

  void check_utf8(std::string_view piece) const {
    // Pieces are cut on code-point boundaries, so piecewise validity is
    // whole-stream validity.
    if (!text::utf8_valid(piece)) {
      raise(ErrorCode::InvalidUtf8Fragment, "malformed byte sequence in stream");
    }
  }

  void scan_thinking(bool region_eof, FeedResult* result) {
    detail::Cut cut;
    std::vector<ReasoningStep> fresh;
    while (scanner_.next(think_buf_, region_eof, &cut) ==
           detail::BoundaryScanner::Status::Found) {
      assembler_.add_fragment(think_buf_, frag_start_, cut.end, &fresh);
      frag_start_ = cut.next;
    }
    if (region_eof) {
      assembler_.add_fragment(think_buf_, frag_start_, think_buf_.size(), &fresh);
      assembler_.finish(think_buf_, &fresh);
      frag_start_ = think_buf_.size();
    }
    append_steps(fresh);
    for (auto& s : fresh) result->steps.push_back(std::move(s));
  }

  void close_region(FeedResult* result) {
    if (region_closed_) return;
    scan_thinking(/*region_eof=*/true, result);
    region_closed_ = true;
  }

  void append_steps(const std::vector<ReasoningStep>& fresh) {
    for (const auto& s : fresh) steps_.push_back(s);
  }

  SegmentationRules rules_;
  std::string open_tag_;
  std::string close_tag_;
  detail::BoundaryScanner scanner_;
  detail::StepAssembler assembler_;

  ParsePhase phase_ = ParsePhase::BeforeThinking;
  std::string carry_;       // held-back tail: partial tag or partial code point
  std::string think_buf_;   // thinking-region content accumulated so far
  std::string answer_;      // final answer accumulated so far
  std::vector<ReasoningStep> steps_;
  size_t frag_start_ = 0;
  size_t raw_pos_ = 0;      // absolute offset of the next unconsumed raw byte
  size_t think_begin_raw_ = 0;
  bool had_thinking_ = false;
  bool region_closed_ = false;
  bool finished_ = false;
};

/// One-shot parse of a complete output. Shares the streaming machinery, so
/// chunked and whole-text parses agree by construction.
inline ParsedOutput parse_complete(const RawModelOutput& raw, const SegmentationRules& rules) {
  StreamParser parser(rules);
  parser.feed(raw.text);
  return parser.finish();
}

}  // namespace cotguard
