// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cotguard Authors

#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cotguard/chain.hpp"
#include "cotguard/error.hpp"
#include "cotguard/fusion.hpp"
#include "cotguard/text.hpp"

namespace cotguard {

/// Binding for the semantic-level scorer.
///
/// Reference mode scores against a weighted risk-phrase table and is fully
/// deterministic; remote mode delegates to an external scorer over the
/// gateway transport ({step_text, context_digest} -> {score}). The remote
/// call is injected as a function so the scorer itself stays transport-free.
struct SemanticBinding {
  enum class Mode { Reference, Remote };

  Mode mode = Mode::Reference;

  /// Lower-cased phrase -> risk weight in [0,1]; kept sorted for
  /// deterministic iteration.
  std::vector<std::pair<std::string, double>> reference_table;

  std::string remote_endpoint;
  int timeout_ms = 2000;

  /// Wired by the transport layer in remote mode; must throw
  /// Error(RemoteScorerUnavailable) on failure.
  std::function<double(const std::string& step_text, const std::string& context_digest)>
      remote_fn;
};

/// Spans of every reference-table phrase contained in the step (matched on
/// the lower-cased text). Used by the redaction rewriter.
inline std::vector<ByteRange> semantic_match_spans(std::string_view step_text,
                                                   const SemanticBinding& binding) {
  std::vector<ByteRange> spans;
  std::string lower = text::to_lower(step_text);
  for (const auto& [phrase, weight] : binding.reference_table) {
    (void)weight;
    size_t pos = 0;
    while ((pos = lower.find(phrase, pos)) != std::string::npos) {
      spans.push_back(ByteRange{pos, pos + phrase.size()});
      ++pos;
    }
  }
  return spans;
}

/// Semantic component score. Reference mode: 1 minus the maximum risk
/// weight over all table phrases contained in the lower-cased step (a single
/// strong risk dominates). Remote mode: the remote score, range-clamped.
inline double score_semantic(std::string_view step_text, const SemanticBinding& binding,
                             const std::string& context_digest = std::string()) {
  if (binding.mode == SemanticBinding::Mode::Remote) {
    if (!binding.remote_fn) {
      raise(ErrorCode::RemoteScorerUnavailable,
            "remote semantic scorer not wired (endpoint " + binding.remote_endpoint + ")");
    }
    return clamp01(binding.remote_fn(std::string(step_text), context_digest));
  }
  std::string lower = text::to_lower(step_text);
  double max_risk = 0.0;
  for (const auto& [phrase, weight] : binding.reference_table) {
    if (!phrase.empty() && lower.find(phrase) != std::string::npos && weight > max_risk) {
      max_risk = weight;
    }
  }
  return clamp01(1.0 - max_risk);
}

inline double score_semantic(const ReasoningStep& step, const SemanticBinding& binding,
                             const std::string& context_digest = std::string()) {
  return score_semantic(std::string_view(step.text), binding, context_digest);
}

}  // namespace cotguard
