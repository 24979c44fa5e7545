// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cotguard Authors

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cotguard/chain.hpp"
#include "cotguard/error.hpp"
#include "cotguard/fusion.hpp"
#include "cotguard/verifier.hpp"

namespace cotguard {

enum class ActionKind { Proceed, Rewrite, Truncate, Fallback };

inline const char* to_string(ActionKind a) {
  switch (a) {
    case ActionKind::Proceed: return "proceed";
    case ActionKind::Rewrite: return "rewrite";
    case ActionKind::Truncate: return "truncate";
    case ActionKind::Fallback: return "fallback";
  }
  return "?";
}

struct InterventionAction {
  ActionKind kind = ActionKind::Proceed;
  int attempt = 0;       // rewrite attempt number, Rewrite only
  std::string reason;    // machine-readable cause code
};

struct InterventionConfig {
  int max_rewrite_attempts = 3;
};

/// The per-step decision function. Total and pure over its inputs:
///   Safe                      -> Proceed
///   Unsafe                    -> Truncate (no rewrite detour)
///   GrayZone + StableAccept   -> Proceed
///   GrayZone + StableReject   -> Truncate (stably low is genuine risk)
///   GrayZone + UnstableRewrite-> Rewrite while attempts remain, else Fallback
inline InterventionAction decide(Band band, const std::optional<VerifyDecision>& report,
                                 int attempt, const InterventionConfig& cfg) {
  switch (band) {
    case Band::Safe:
      return {ActionKind::Proceed, 0, "safe_band"};
    case Band::Unsafe:
      return {ActionKind::Truncate, 0, "unsafe_step"};
    case Band::GrayZone:
      break;
  }
  if (!report.has_value()) {
    // Gray zone without a verification outcome: treat like instability.
    return attempt < cfg.max_rewrite_attempts
               ? InterventionAction{ActionKind::Rewrite, attempt + 1, "gray_zone_unverified"}
               : InterventionAction{ActionKind::Fallback, attempt, "rewrite_exhausted"};
  }
  switch (*report) {
    case VerifyDecision::StableAccept:
      return {ActionKind::Proceed, 0, "stable_accept"};
    case VerifyDecision::StableReject:
      return {ActionKind::Truncate, 0, "gray_zone_rejected"};
    case VerifyDecision::UnstableRewrite:
      return attempt < cfg.max_rewrite_attempts
                 ? InterventionAction{ActionKind::Rewrite, attempt + 1, "unstable_rewrite"}
                 : InterventionAction{ActionKind::Fallback, attempt, "rewrite_exhausted"};
  }
  return {ActionKind::Fallback, attempt, "unreachable"};
}

/// Deterministic rewrite templates applied in order until a candidate
/// rescores at or above tau_unsafe.
struct RewriteTemplates {
  std::string redaction_placeholder = "[filtered]";
  std::string hedging_prefix = "Considering only lawful and safe aspects: ";
  std::string safe_summary =
      "This step was replaced by a high-level restatement limited to the request's "
      "legitimate intent.";
};

enum class RewriterMode { Template, Remote };

struct RewriteResult {
  std::string original;
  std::string rewritten;
  RewriterMode mode = RewriterMode::Template;
  bool accepted = false;      // rewritten text rescored >= tau_unsafe
  double rescore = 0.0;       // fused score of the returned candidate
  int candidates_tried = 0;
  bool templates_exhausted = false;
};

/// Rewriter wiring. `redact_fn` replaces matched risk spans with neutral
/// placeholders; `rescore_fn` is the full fused scoring path for candidate
/// texts; `remote_fn` (remote mode) must throw Error(RewriterUnavailable)
/// on failure.
struct RewriterBinding {
  RewriterMode mode = RewriterMode::Template;
  RewriteTemplates templates;
  std::function<std::string(const std::string&)> redact_fn;
  std::function<double(const std::string&)> rescore_fn;
  std::function<std::string(const std::string&)> remote_fn;
};

/// Replace `spans` (merged, left to right) within `input` by `placeholder`.
inline std::string redact_spans(std::string_view input, std::vector<ByteRange> spans,
                                const std::string& placeholder) {
  if (spans.empty()) return std::string(input);
  std::sort(spans.begin(), spans.end(),
            [](const ByteRange& a, const ByteRange& b) { return a.begin < b.begin; });
  std::vector<ByteRange> merged;
  for (const auto& s : spans) {
    if (!merged.empty() && s.begin <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, s.end);
    } else {
      merged.push_back(s);
    }
  }
  std::string out;
  size_t pos = 0;
  for (const auto& m : merged) {
    out.append(input.substr(pos, m.begin - pos));
    out.append(placeholder);
    pos = m.end;
  }
  out.append(input.substr(pos));
  return out;
}

/// Rewrite an unstable step. Template mode tries redaction, a hedging
/// wrapper, then a safe-summary replacement and returns the first candidate
/// whose fused rescore clears tau_unsafe. Remote mode delegates to the
/// external rewriter and rescores its output.
inline RewriteResult rewrite_step(std::string_view step_text, const RewriterBinding& binding,
                                  double tau_unsafe) {
  RewriteResult result;
  result.original = std::string(step_text);
  result.mode = binding.mode;

  std::vector<std::string> candidates;
  if (binding.mode == RewriterMode::Remote) {
    if (!binding.remote_fn) raise(ErrorCode::RewriterUnavailable, "remote rewriter not wired");
    candidates.push_back(binding.remote_fn(result.original));
  } else {
    if (binding.redact_fn) {
      std::string redacted = binding.redact_fn(result.original);
      if (redacted != result.original) candidates.push_back(std::move(redacted));
    }
    candidates.push_back(binding.templates.hedging_prefix + result.original);
    candidates.push_back(binding.templates.safe_summary);
  }

  for (const auto& candidate : candidates) {
    ++result.candidates_tried;
    double score = binding.rescore_fn ? binding.rescore_fn(candidate) : 0.0;
    if (score >= tau_unsafe) {
      result.rewritten = candidate;
      result.rescore = score;
      result.accepted = true;
      return result;
    }
    result.rewritten = candidate;
    result.rescore = score;
  }
  result.accepted = false;
  result.templates_exhausted = (binding.mode == RewriterMode::Template);
  return result;
}

/// Drop all steps at or beyond `at_index`. The truncated chain keeps the
/// retained prefix only; a severed chain gets no trailing separator content.
inline ReasoningChain truncate(const ReasoningChain& chain, size_t at_index) {
  ReasoningChain out;
  out.source_region = chain.source_region;
  size_t keep = std::min(at_index, chain.steps.size());
  out.steps.assign(chain.steps.begin(), chain.steps.begin() + static_cast<long>(keep));
  out.separators.clear();
  for (size_t i = 0; i < keep && i < chain.separators.size(); ++i) {
    out.separators.push_back(chain.separators[i]);
  }
  out.separators.emplace_back();
  return out;
}

struct FallbackResponse {
  std::string message;
  std::string cause;
  bool partial_safe_prefix_released = false;
  bool used_generic_template = false;  // unknown cause code, audited by the caller
};

/// Configured safe responses, keyed by cause code, plus the generic default.
struct FallbackTemplates {
  std::map<std::string, std::string> by_cause{
      {"unsafe_step",
       "The request was declined because the reasoning touched unsafe content."},
      {"gray_zone_rejected",
       "The request was declined after a consistency check confirmed elevated risk."},
      {"rewrite_exhausted",
       "A safe version of the response could not be produced; the request was declined."},
  };
  std::string generic =
      "The response was withheld by the safety layer. Please rephrase the request.";
};

/// Template lookup; unknown cause codes fall back to the generic message.
/// Messages always come from configuration, never from model output.
inline FallbackResponse fallback_response(const std::string& cause,
                                          const FallbackTemplates& templates) {
  FallbackResponse resp;
  resp.cause = cause;
  auto it = templates.by_cause.find(cause);
  if (it != templates.by_cause.end()) {
    resp.message = it->second;
  } else {
    resp.message = templates.generic;
    resp.used_generic_template = true;
  }
  return resp;
}

}  // namespace cotguard
