// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cotguard Authors

#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "cotguard/error.hpp"

namespace cotguard {

/// Safety band for a fused step score. Unsafe triggers immediate truncation,
/// GrayZone routes through consistency verification, Safe proceeds.
enum class Band { Safe, GrayZone, Unsafe };

inline const char* to_string(Band b) {
  switch (b) {
    case Band::Safe: return "safe";
    case Band::GrayZone: return "gray_zone";
    case Band::Unsafe: return "unsafe";
  }
  return "?";
}

inline double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

/// Weights of the three component scorers. Must be unit-interval values
/// summing to 1 (checked at configuration load, not per call).
struct FusionWeights {
  double lexical = 0.3;
  double semantic = 0.5;
  double policy = 0.2;

  void validate(const std::string& field_path = "weights") const {
    auto check = [&](double v, const char* name) {
      if (!(v >= 0.0 && v <= 1.0)) {
        raise(ErrorCode::InvalidWeightVector,
              field_path + "." + name + ": weight must lie in [0,1], got " + std::to_string(v));
      }
    };
    check(lexical, "lexical");
    check(semantic, "semantic");
    check(policy, "policy");
    double sum = lexical + semantic + policy;
    if (std::abs(sum - 1.0) > 1e-9) {
      raise(ErrorCode::InvalidWeightVector,
            field_path + ": weights must sum to 1 within 1e-9, got " + std::to_string(sum));
    }
  }
};

/// Band boundaries: fused < tau_unsafe is Unsafe, fused >= tau_safe is Safe,
/// anything between is the gray zone. Equality at tau_unsafe lands in the
/// gray zone (the unsafe test is a strict inequality).
struct BandThresholds {
  double tau_unsafe = 0.4;
  double tau_safe = 0.7;

  void validate(const std::string& field_path = "thresholds") const {
    if (!(tau_unsafe >= 0.0 && tau_safe <= 1.0 && tau_unsafe < tau_safe)) {
      raise(ErrorCode::ConfigInvalid,
            field_path + ": requires 0 <= tau_unsafe < tau_safe <= 1, got tau_unsafe=" +
                std::to_string(tau_unsafe) + " tau_safe=" + std::to_string(tau_safe));
    }
  }

  /// Midpoint of the gray band, used as the degraded-mode stand-in score.
  double gray_midpoint() const { return (tau_unsafe + tau_safe) / 2.0; }
};

/// Weighted fusion of the three component scores, clamped to [0,1].
inline double fuse(double lexical, double semantic, double policy, const FusionWeights& w) {
  return clamp01(w.lexical * lexical + w.semantic * semantic + w.policy * policy);
}

inline Band classify_band(double fused, const BandThresholds& t) {
  if (fused < t.tau_unsafe) return Band::Unsafe;
  if (fused >= t.tau_safe) return Band::Safe;
  return Band::GrayZone;
}

/// Per-step score record: the three components, their fusion, and the band.
/// `degraded` marks records where a remote scorer was unavailable and the
/// fused value was pinned to the gray-zone midpoint; for those records the
/// fused value intentionally does not equal the weighted combination.
struct SafetyScore {
  double lexical = 1.0;
  double semantic = 1.0;
  double policy = 1.0;
  double fused = 1.0;
  Band band = Band::Safe;
  bool degraded = false;
};

inline SafetyScore make_safety_score(double lexical, double semantic, double policy,
                                     const FusionWeights& w, const BandThresholds& t) {
  SafetyScore s;
  s.lexical = lexical;
  s.semantic = semantic;
  s.policy = policy;
  s.fused = fuse(lexical, semantic, policy, w);
  s.band = classify_band(s.fused, t);
  return s;
}

}  // namespace cotguard
