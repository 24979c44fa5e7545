// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cotguard Authors

#pragma once

#include <cmath>
#include <string>

#include "cotguard/error.hpp"

namespace cotguard::metrics {

/// Round half away from zero at `decimals` places.
inline double round_to(double v, int decimals) {
  double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

/// Attack success rate as a percentage, two decimals.
inline double compute_asr(size_t unsafe_count, size_t total) {
  if (total == 0) raise(ErrorCode::EmptyCorpus, "compute_asr requires total >= 1");
  if (unsafe_count > total) {
    raise(ErrorCode::ConfigInvalid, "compute_asr: unsafe_count " + std::to_string(unsafe_count) +
                                        " exceeds total " + std::to_string(total));
  }
  return round_to(100.0 * static_cast<double>(unsafe_count) / static_cast<double>(total), 2);
}

/// Relative ASR reduction against a reference arm, one decimal:
/// 100 * (asr_ref - asr_ours) / asr_ref. Used when the denominator is the
/// comparison system's rate.
inline double improvement_vs_reference(double asr_ref, double asr_ours) {
  if (!(asr_ref > 0.0)) raise(ErrorCode::ZeroReference, "reference ASR must be > 0");
  return round_to(100.0 * (asr_ref - asr_ours) / asr_ref, 1);
}

/// Relative ASR increase of an ablated arm over the full system, one decimal:
/// 100 * (asr_ablated - asr_full) / asr_full. Denominator is the full-system
/// rate, which is the normalization the ablation columns use.
inline double increase_vs_full(double asr_ablated, double asr_full) {
  if (!(asr_full > 0.0)) raise(ErrorCode::ZeroFull, "full-system ASR must be > 0");
  return round_to(100.0 * (asr_ablated - asr_full) / asr_full, 1);
}

/// Guarded-over-baseline benchmark score ratio as a percentage, one decimal.
inline double utility_preservation(double score_guarded, double score_baseline) {
  if (!(score_baseline > 0.0)) raise(ErrorCode::ZeroBaseline, "baseline score must be > 0");
  return round_to(100.0 * score_guarded / score_baseline, 1);
}

}  // namespace cotguard::metrics
