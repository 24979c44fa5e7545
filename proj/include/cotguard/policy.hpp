// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cotguard Authors

#pragma once

#include <regex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cotguard/chain.hpp"
#include "cotguard/error.hpp"
#include "cotguard/fusion.hpp"

namespace cotguard {

enum class PolicyRuleKind {
  Escalation,            // fused-score trend across consecutive prior steps
  CircumventionMarker,   // phrases signaling rule evasion
  Contradiction,         // step continues what an earlier step refused
  CategoryPattern,       // topic pattern conditioned on the user query
};

inline const char* to_string(PolicyRuleKind k) {
  switch (k) {
    case PolicyRuleKind::Escalation: return "escalation";
    case PolicyRuleKind::CircumventionMarker: return "circumvention_marker";
    case PolicyRuleKind::Contradiction: return "contradiction";
    case PolicyRuleKind::CategoryPattern: return "category_pattern";
  }
  return "?";
}

/// A policy-level rule. Matchers are regular expressions compiled at load;
/// which ones apply depends on the kind.
struct PolicyRule {
  std::string id;
  PolicyRuleKind kind = PolicyRuleKind::CircumventionMarker;
  double penalty = 0.0;

  // CircumventionMarker / CategoryPattern: pattern against the step text.
  std::string pattern_src;
  std::regex pattern;

  // CategoryPattern: optional pattern against the user query (empty = any).
  std::string query_pattern_src;
  std::regex query_pattern;

  // Contradiction: refusal matched against prior steps, continuation
  // against the current step.
  std::string refusal_src;
  std::regex refusal;
  std::string continuation_src;
  std::regex continuation;

  // Escalation: window of prior steps and the minimum total score drop.
  int window = 3;
  double min_drop = 0.2;
};

/// Causal context for policy scoring: the user query and the steps already
/// evaluated (text plus post-intervention fused score), in step order.
struct ChainContext {
  std::string user_query;
  std::vector<std::pair<std::string, double>> prior_steps;
  int prior_interventions = 0;
};

namespace detail {

inline bool regex_hit(const std::regex& re, std::string_view s) {
  return std::regex_search(s.begin(), s.end(), re);
}

inline bool escalation_fires(const PolicyRule& rule, const ChainContext& ctx) {
  const auto& prior = ctx.prior_steps;
  if (rule.window < 2 || prior.size() < static_cast<size_t>(rule.window)) return false;
  size_t first = prior.size() - static_cast<size_t>(rule.window);
  for (size_t i = first + 1; i < prior.size(); ++i) {
    if (!(prior[i].second < prior[i - 1].second)) return false;  // must strictly decrease
  }
  double drop = prior[first].second - prior.back().second;
  return drop >= rule.min_drop;
}

inline bool contradiction_fires(const PolicyRule& rule, std::string_view step_text,
                                const ChainContext& ctx) {
  if (!regex_hit(rule.continuation, step_text)) return false;
  for (const auto& [prior_text, score] : ctx.prior_steps) {
    (void)score;
    if (regex_hit(rule.refusal, prior_text)) return true;
  }
  return false;
}

}  // namespace detail

/// Policy component score: 1 minus the summed penalties of all fired rules,
/// clamped. Empty rule set or empty context can only raise the score.
inline double score_policy(std::string_view step_text, const ChainContext& ctx,
                           const std::vector<PolicyRule>& rules) {
  double penalty = 0.0;
  for (const auto& rule : rules) {
    bool fired = false;
    switch (rule.kind) {
      case PolicyRuleKind::Escalation:
        fired = detail::escalation_fires(rule, ctx);
        break;
      case PolicyRuleKind::CircumventionMarker:
        fired = detail::regex_hit(rule.pattern, step_text);
        break;
      case PolicyRuleKind::Contradiction:
        fired = detail::contradiction_fires(rule, step_text, ctx);
        break;
      case PolicyRuleKind::CategoryPattern:
        fired = detail::regex_hit(rule.pattern, step_text) &&
                (rule.query_pattern_src.empty() ||
                 detail::regex_hit(rule.query_pattern, ctx.user_query));
        break;
    }
    if (fired) penalty += rule.penalty;
  }
  return clamp01(1.0 - penalty);
}

inline double score_policy(const ReasoningStep& step, const ChainContext& ctx,
                           const std::vector<PolicyRule>& rules) {
  return score_policy(std::string_view(step.text), ctx, rules);
}

}  // namespace cotguard
