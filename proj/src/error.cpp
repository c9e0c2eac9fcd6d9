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

#include "modelkit/error.hpp"

namespace modelkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedCoercion: return "UnsupportedCoercion";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IndexOutOfBounds: return "IndexOutOfBounds";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NegativeProbability: return "NegativeProbability";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::ClassNotInPool: return "ClassNotInPool";
    case ErrorCode::EmptyPredictions: return "EmptyPredictions";
    case ErrorCode::NotBinary: return "NotBinary";
    case ErrorCode::ScitypeMismatch: return "ScitypeMismatch";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::UnsupportedOperation: return "UnsupportedOperation";
    case ErrorCode::UndefinedStatistic: return "UndefinedStatistic";
    case ErrorCode::UnknownPath: return "UnknownPath";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NotTrained: return "NotTrained";
    case ErrorCode::UnresolvableArgs: return "UnresolvableArgs";
    case ErrorCode::EmptySource: return "EmptySource";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::InvalidBlueprint: return "InvalidBlueprint";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::MeasureModelMismatch: return "MeasureModelMismatch";
    case ErrorCode::UnknownMeasure: return "UnknownMeasure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace modelkit
