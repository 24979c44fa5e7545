// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cotguard Authors

#pragma once

#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cotguard/chain.hpp"
#include "cotguard/error.hpp"
#include "cotguard/fusion.hpp"
#include "cotguard/text.hpp"

namespace cotguard {

/// One lexicon rule: a literal term (matched on word boundaries) or a
/// regular expression, with a unit-interval severity.
struct LexiconEntry {
  std::string pattern;
  double severity = 0.0;
  bool is_regex = false;
  bool case_sensitive = false;
  std::regex compiled;  // regex entries only
};

/// Sensitive-term rule set backing the lexical scorer.
///
/// File format: one entry per line, PATTERN<TAB>SEVERITY<TAB>FLAGS with
/// FLAGS a comma-separated subset of {regex, case}; the FLAGS column may be
/// omitted. Lines starting with '#' are comments.
struct LexiconRuleSet {
  std::vector<LexiconEntry> entries;
  std::string version;

  static LexiconRuleSet parse(std::string_view content, const std::string& source_name) {
    LexiconRuleSet set;
    std::istringstream in{std::string(content)};
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string_view view = text::trim(line);
      if (view.empty()) continue;
      if (view.front() == '#') {
        constexpr std::string_view kVersion = "# version:";
        if (view.substr(0, kVersion.size()) == kVersion) {
          set.version = std::string(text::trim(view.substr(kVersion.size())));
        }
        continue;
      }
      auto fail = [&](const std::string& why) {
        raise(ErrorCode::ConfigInvalid,
              source_name + ":" + std::to_string(line_no) + ": " + why);
      };
      size_t t1 = line.find('\t');
      if (t1 == std::string::npos) fail("expected PATTERN<TAB>SEVERITY");
      size_t t2 = line.find('\t', t1 + 1);
      LexiconEntry entry;
      entry.pattern = line.substr(0, t1);
      std::string severity_str =
          line.substr(t1 + 1, (t2 == std::string::npos ? line.size() : t2) - t1 - 1);
      try {
        entry.severity = std::stod(severity_str);
      } catch (const std::exception&) {
        fail("severity is not a number: '" + severity_str + "'");
      }
      if (entry.severity < 0.0 || entry.severity > 1.0) {
        fail("severity must lie in [0,1], got " + severity_str);
      }
      if (t2 != std::string::npos) {
        std::string flags = line.substr(t2 + 1);
        std::istringstream fl(flags);
        std::string flag;
        while (std::getline(fl, flag, ',')) {
          std::string f{text::trim(flag)};
          if (f == "regex") entry.is_regex = true;
          else if (f == "case") entry.case_sensitive = true;
          else if (!f.empty()) fail("unknown flag '" + f + "'");
        }
      }
      if (entry.pattern.empty()) fail("empty pattern");
      if (entry.is_regex) {
        try {
          auto flags = std::regex::ECMAScript;
          if (!entry.case_sensitive) flags |= std::regex::icase;
          entry.compiled = std::regex(entry.pattern, flags);
        } catch (const std::regex_error& e) {
          fail(std::string("pattern does not compile: ") + e.what());
        }
      }
      set.entries.push_back(std::move(entry));
    }
    if (set.version.empty()) set.version = text::digest_hex(content);
    return set;
  }

  static LexiconRuleSet load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::ConfigInvalid, "cannot open lexicon file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
  }
};

namespace detail {

/// All word-boundary occurrences of a literal term.
inline void literal_matches(std::string_view haystack_raw, const LexiconEntry& entry,
                            std::vector<ByteRange>* spans) {
  std::string haystack;
  std::string needle;
  if (entry.case_sensitive) {
    haystack = std::string(haystack_raw);
    needle = entry.pattern;
  } else {
    haystack = text::to_lower(haystack_raw);
    needle = text::to_lower(entry.pattern);
  }
  size_t pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    bool left_ok = pos == 0 || !text::is_word_byte(static_cast<unsigned char>(haystack[pos - 1]));
    size_t end = pos + needle.size();
    bool right_ok =
        end == haystack.size() || !text::is_word_byte(static_cast<unsigned char>(haystack[end]));
    if (left_ok && right_ok) spans->push_back(ByteRange{pos, end});
    ++pos;
  }
}

}  // namespace detail

/// Byte ranges of every lexicon hit in `text` (used by the redaction
/// rewriter). Regex entries contribute their match extents.
inline std::vector<ByteRange> lexicon_match_spans(std::string_view step_text,
                                                  const LexiconRuleSet& rules) {
  std::vector<ByteRange> spans;
  for (const auto& entry : rules.entries) {
    if (entry.is_regex) {
      auto begin = std::cregex_iterator(step_text.data(), step_text.data() + step_text.size(),
                                        entry.compiled);
      for (auto it = begin; it != std::cregex_iterator(); ++it) {
        spans.push_back(ByteRange{static_cast<size_t>(it->position()),
                                  static_cast<size_t>(it->position() + it->length())});
      }
    } else {
      detail::literal_matches(step_text, entry, &spans);
    }
  }
  return spans;
}

/// Lexical component score: 1 minus the summed severities of all distinct
/// matched entries, clamped to [0,1]. Each entry counts once no matter how
/// often it matches, so the result is independent of match order.
inline double score_lexical(std::string_view step_text, const LexiconRuleSet& rules) {
  double penalty = 0.0;
  for (const auto& entry : rules.entries) {
    bool hit = false;
    if (entry.is_regex) {
      hit = std::regex_search(step_text.begin(), step_text.end(), entry.compiled);
    } else {
      std::vector<ByteRange> spans;
      detail::literal_matches(step_text, entry, &spans);
      hit = !spans.empty();
    }
    if (hit) penalty += entry.severity;
  }
  return clamp01(1.0 - penalty);
}

inline double score_lexical(const ReasoningStep& step, const LexiconRuleSet& rules) {
  return score_lexical(std::string_view(step.text), rules);
}

}  // namespace cotguard
