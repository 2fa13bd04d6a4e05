// Copyright 2026 The tradeoff-bo Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include "tradeoff/error.hpp"

namespace tradeoff {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::EmptyDomain: return "EmptyDomain";
    case ErrorCode::BadBounds: return "BadBounds";
    case ErrorCode::LogScaleNonPositive: return "LogScaleNonPositive";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::FactorizationFailed: return "FactorizationFailed";
    case ErrorCode::NegativeVariance: return "NegativeVariance";
    case ErrorCode::EmptySpace: return "EmptySpace";
    case ErrorCode::InvalidSettings: return "InvalidSettings";
    case ErrorCode::NonPositiveReference: return "NonPositiveReference";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::ObjectiveFailure: return "ObjectiveFailure";
    case ErrorCode::UnknownBenchmark: return "UnknownBenchmark";
    case ErrorCode::SpawnFailure: return "SpawnFailure";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::ProtocolError: return "ProtocolError";
    case ErrorCode::TrainerError: return "TrainerError";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::SpaceTooLarge: return "SpaceTooLarge";
    case ErrorCode::ContinuousDimension: return "ContinuousDimension";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::TraceParse: return "TraceParse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace tradeoff
