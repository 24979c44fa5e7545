// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cotguard Authors

#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cotguard/error.hpp"
#include "cotguard/fusion.hpp"
#include "cotguard/text.hpp"

namespace cotguard {

/// Synonym table for the substitution transform. File format: one entry per
/// line, WORD<TAB>synonym,synonym,... Lines starting with '#' are comments.
struct SynonymTable {
  std::map<std::string, std::vector<std::string>> entries;  // lower-cased word -> synonyms

  static SynonymTable parse(std::string_view content, const std::string& source_name) {
    SynonymTable table;
    std::istringstream in{std::string(content)};
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string_view view = text::trim(line);
      if (view.empty() || view.front() == '#') continue;
      size_t tab = line.find('\t');
      if (tab == std::string::npos) {
        raise(ErrorCode::ConfigInvalid, source_name + ":" + std::to_string(line_no) +
                                            ": expected WORD<TAB>synonyms");
      }
      std::string word = text::to_lower(text::trim(line.substr(0, tab)));
      std::vector<std::string> synonyms;
      std::istringstream rest(line.substr(tab + 1));
      std::string syn;
      while (std::getline(rest, syn, ',')) {
        std::string s{text::trim(syn)};
        if (!s.empty()) synonyms.push_back(s);
      }
      if (word.empty() || synonyms.empty()) {
        raise(ErrorCode::ConfigInvalid,
              source_name + ":" + std::to_string(line_no) + ": empty word or synonym list");
      }
      table.entries[word] = std::move(synonyms);
    }
    return table;
  }

  static SynonymTable load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::ConfigInvalid, "cannot open synonym table: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
  }
};

enum class TransformKind { SynonymSubstitution, ClauseReorder, FormalityShift };

inline const char* to_string(TransformKind t) {
  switch (t) {
    case TransformKind::SynonymSubstitution: return "synonym_substitution";
    case TransformKind::ClauseReorder: return "clause_reorder";
    case TransformKind::FormalityShift: return "formality_shift";
  }
  return "?";
}

/// Deterministic variant generator configuration: same (text, spec) always
/// yields the same variant list.
struct VariantSpec {
  std::vector<TransformKind> transforms{TransformKind::SynonymSubstitution,
                                        TransformKind::ClauseReorder,
                                        TransformKind::FormalityShift};
  uint64_t seed = 0;
  SynonymTable synonyms;
};

namespace detail {

inline uint64_t mix(uint64_t seed, uint64_t salt, std::string_view s) {
  uint64_t h = text::fnv1a64(s);
  h ^= seed + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= salt * 0xbf58476d1ce4e5b9ULL;
  return h;
}

inline std::string apply_synonyms(std::string_view input, const SynonymTable& table,
                                  uint64_t choice) {
  std::string out;
  out.reserve(input.size());
  size_t i = 0;
  size_t word_index = 0;
  while (i < input.size()) {
    if (text::is_word_byte(static_cast<unsigned char>(input[i]))) {
      size_t j = i;
      while (j < input.size() && text::is_word_byte(static_cast<unsigned char>(input[j]))) ++j;
      std::string word = text::to_lower(input.substr(i, j - i));
      auto it = table.entries.find(word);
      if (it != table.entries.end() && !it->second.empty()) {
        out += it->second[(choice + word_index) % it->second.size()];
      } else {
        out.append(input.substr(i, j - i));
      }
      ++word_index;
      i = j;
    } else {
      out += input[i++];
    }
  }
  return out;
}

inline std::string apply_clause_reorder(std::string_view input) {
  // Rotate the leading clause to the back; fall back to swapping around a
  // coordinating conjunction when no clause separator exists.
  for (std::string_view sep : {std::string_view(", "), std::string_view("; ")}) {
    size_t p = input.find(sep);
    if (p != std::string_view::npos && p > 0 && p + sep.size() < input.size()) {
      std::string out;
      out.append(input.substr(p + sep.size()));
      out.append(sep);
      out.append(input.substr(0, p));
      return out;
    }
  }
  constexpr std::string_view kAnd = " and ";
  size_t p = input.find(kAnd);
  if (p != std::string_view::npos && p > 0 && p + kAnd.size() < input.size()) {
    std::string out;
    out.append(input.substr(p + kAnd.size()));
    out.append(kAnd);
    out.append(input.substr(0, p));
    return out;
  }
  return std::string(input);
}

inline std::string apply_formality_shift(std::string_view input, uint64_t choice) {
  static const char* kPrefixes[] = {
      "Stated formally, ",
      "To rephrase the point, ",
      "Expressed another way, ",
  };
  if (input.empty()) return std::string(input);
  std::string body(input);
  body[0] = text::ascii_lower(body[0]);
  return std::string(kPrefixes[choice % 3]) + body;
}

}  // namespace detail

struct VariantGeneration {
  std::vector<std::string> variants;
  int padded = 0;  // slots filled with the original text (audited)
};

/// Generate K deterministic paraphrases of a step. Transforms are cycled
/// with varying salts; duplicates (including the original) are skipped where
/// possible and the original pads any remaining slots.
inline VariantGeneration generate_variants(std::string_view step_text, const VariantSpec& spec,
                                           int k) {
  VariantGeneration gen;
  if (k < 1) return gen;
  std::vector<std::string> seen;
  const size_t n_transforms = std::max<size_t>(spec.transforms.size(), 1);
  const size_t max_attempts = static_cast<size_t>(k) * n_transforms * 2;
  for (size_t attempt = 0; attempt < max_attempts && gen.variants.size() < static_cast<size_t>(k);
       ++attempt) {
    std::string candidate;
    if (spec.transforms.empty()) {
      candidate = std::string(step_text);
    } else {
      TransformKind t = spec.transforms[attempt % n_transforms];
      uint64_t salt = attempt / n_transforms;
      uint64_t choice = detail::mix(spec.seed, salt, step_text);
      switch (t) {
        case TransformKind::SynonymSubstitution:
          candidate = detail::apply_synonyms(step_text, spec.synonyms, choice);
          break;
        case TransformKind::ClauseReorder:
          candidate = detail::apply_clause_reorder(step_text);
          break;
        case TransformKind::FormalityShift:
          candidate = detail::apply_formality_shift(step_text, choice);
          break;
      }
    }
    if (candidate == step_text) continue;
    if (std::find(seen.begin(), seen.end(), candidate) != seen.end()) continue;
    seen.push_back(candidate);
    gen.variants.push_back(std::move(candidate));
  }
  while (gen.variants.size() < static_cast<size_t>(k)) {
    gen.variants.emplace_back(step_text);
    ++gen.padded;
  }
  return gen;
}

/// K paraphrases with their fused scores and the resulting statistics.
struct VariantSet {
  std::string original;
  std::vector<std::string> variants;
  std::vector<double> scores;
  double mean = 0.0;
  double variance = 0.0;  // population variance over the K scores
};

enum class VerifyDecision { StableAccept, StableReject, UnstableRewrite };

inline const char* to_string(VerifyDecision d) {
  switch (d) {
    case VerifyDecision::StableAccept: return "stable_accept";
    case VerifyDecision::StableReject: return "stable_reject";
    case VerifyDecision::UnstableRewrite: return "unstable_rewrite";
  }
  return "?";
}

struct VerificationReport {
  VariantSet variant_set;
  double effective_score = 0.0;  // variant-score mean; replaces the step score
  VerifyDecision decision = VerifyDecision::StableAccept;
  int padded_variants = 0;
};

inline double population_mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

inline double population_variance(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double m = population_mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return acc / static_cast<double>(v.size());
}

/// Consistency verification for a gray-zone step: score K paraphrases, take
/// their mean as the effective score, and gate the decision on the score
/// variance. High variance marks semantic instability and routes to rewrite;
/// a stable mean is accepted or rejected against tau_unsafe.
inline VerificationReport verify(std::string_view step_text,
                                 const std::function<double(const std::string&)>& score_fn,
                                 const VariantSpec& spec, int k, double delta,
                                 const BandThresholds& thresholds) {
  VerificationReport report;
  auto gen = generate_variants(step_text, spec, k);
  report.padded_variants = gen.padded;
  report.variant_set.original = std::string(step_text);
  report.variant_set.variants = std::move(gen.variants);
  report.variant_set.scores.reserve(report.variant_set.variants.size());
  for (const auto& variant : report.variant_set.variants) {
    report.variant_set.scores.push_back(score_fn(variant));
  }
  report.variant_set.mean = population_mean(report.variant_set.scores);
  report.variant_set.variance = population_variance(report.variant_set.scores);
  report.effective_score = report.variant_set.mean;
  if (report.variant_set.variance > delta) {
    report.decision = VerifyDecision::UnstableRewrite;
  } else if (report.effective_score >= thresholds.tau_unsafe) {
    report.decision = VerifyDecision::StableAccept;
  } else {
    report.decision = VerifyDecision::StableReject;
  }
  return report;
}

}  // namespace cotguard
