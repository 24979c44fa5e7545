// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cotguard Authors

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace cotguard {

/// Half-open byte range [begin, end).
struct ByteRange {
  size_t begin = 0;
  size_t end = 0;

  size_t size() const { return end - begin; }
  bool operator==(const ByteRange&) const = default;
};

/// One reasoning step. `span` addresses the step text inside the thinking
/// region (byte offsets relative to the region start); `terminal` marks the
/// last step of a completed chain.
struct ReasoningStep {
  size_t index = 0;
  std::string text;
  ByteRange span;
  bool terminal = false;

  bool operator==(const ReasoningStep&) const = default;
};

/// Structured reasoning chain. `separators` holds the inter-step source text
/// (whitespace, list markers) with steps.size() + 1 entries, so
/// separators[0] + steps[0].text + separators[1] + ... reproduces the
/// thinking region byte for byte.
struct ReasoningChain {
  std::vector<ReasoningStep> steps;
  ByteRange source_region;          // thinking-region content within the raw text
  std::vector<std::string> separators{std::string()};

  std::string reconstruct_thinking() const {
    std::string out = separators.empty() ? std::string() : separators[0];
    for (size_t i = 0; i < steps.size(); ++i) {
      out += steps[i].text;
      if (i + 1 < separators.size()) out += separators[i + 1];
    }
    return out;
  }

  bool operator==(const ReasoningChain&) const = default;
};

/// Parse result: the chain plus the final answer. When no thinking block
/// exists the chain is empty and the final answer is the whole output.
struct ParsedOutput {
  ReasoningChain chain;
  std::string final_answer;
  bool had_thinking_block = false;

  bool operator==(const ParsedOutput&) const = default;
};

/// Complete (non-streamed) model output.
struct RawModelOutput {
  std::string text;
  bool is_stream_complete = true;
};

}  // namespace cotguard
