// Copyright 2026 The modelkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modelkit {

// Every failure raised by the library carries one of these codes so callers
// (and the CLI exit-code mapping) can branch without parsing messages.
enum class ErrorCode {
  // scidata
  UnsupportedCoercion,
  InvalidValue,
  IoError,
  RaggedRows,
  ParseError,
  IndexOutOfBounds,
  UnknownColumn,
  LengthMismatch,
  // distributions / measures
  NegativeProbability,
  NotNormalized,
  ClassNotInPool,
  EmptyPredictions,
  NotBinary,
  // models
  ScitypeMismatch,
  DegenerateData,
  UnsupportedOperation,
  UndefinedStatistic,
  UnknownPath,
  TypeMismatch,
  // machines / networks
  ArityMismatch,
  NotTrained,
  UnresolvableArgs,
  EmptySource,
  CycleDetected,
  InvalidBlueprint,
  // evaluation / tuning
  TooFewRows,
  MeasureModelMismatch,
  UnknownMeasure,
  InvalidArgument,
  EmptyGrid,
  // registry
  DuplicateName,
  MalformedFile,
  UnknownModel,
  // cli
  ConfigError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace modelkit
