// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The cotguard Authors

#pragma once

#include <stdexcept>
#include <string>

namespace cotguard {

enum class ErrorCode {
  ConfigInvalid,
  InvalidWeightVector,
  UnterminatedThinkingBlock,
  InvalidUtf8Fragment,
  RemoteScorerUnavailable,
  RewriterUnavailable,
  UpstreamUnavailable,
  UpstreamTimeout,
  UnknownPromptKey,
  CorpusParseError,
  EmptyCorpus,
  EmptySample,
  ZeroReference,
  ZeroFull,
  ZeroBaseline,
  SinkUnwritable,
  BindFailure,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::InvalidWeightVector: return "InvalidWeightVector";
    case ErrorCode::UnterminatedThinkingBlock: return "UnterminatedThinkingBlock";
    case ErrorCode::InvalidUtf8Fragment: return "InvalidUtf8Fragment";
    case ErrorCode::RemoteScorerUnavailable: return "RemoteScorerUnavailable";
    case ErrorCode::RewriterUnavailable: return "RewriterUnavailable";
    case ErrorCode::UpstreamUnavailable: return "UpstreamUnavailable";
    case ErrorCode::UpstreamTimeout: return "UpstreamTimeout";
    case ErrorCode::UnknownPromptKey: return "UnknownPromptKey";
    case ErrorCode::CorpusParseError: return "CorpusParseError";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::ZeroReference: return "ZeroReference";
    case ErrorCode::ZeroFull: return "ZeroFull";
    case ErrorCode::ZeroBaseline: return "ZeroBaseline";
    case ErrorCode::SinkUnwritable: return "SinkUnwritable";
    case ErrorCode::BindFailure: return "BindFailure";
  }
  return "UnknownError";
}

/// Library-wide exception type. The code identifies the failure class;
/// the message carries context (field paths, line numbers, endpoints).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cotguard
