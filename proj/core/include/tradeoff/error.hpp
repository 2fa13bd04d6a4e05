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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tradeoff {

enum class ErrorCode {
  // space
  DuplicateName,
  EmptyDomain,
  BadBounds,
  LogScaleNonPositive,
  OutOfDomain,
  LengthMismatch,
  // surrogate
  FactorizationFailed,
  NegativeVariance,
  // acquisition / loop
  EmptySpace,
  InvalidSettings,
  NonPositiveReference,
  EmptyTrace,
  ObjectiveFailure,
  // objectives
  UnknownBenchmark,
  SpawnFailure,
  Timeout,
  ProtocolError,
  TrainerError,
  // oracle
  SingularMatrix,
  SpaceTooLarge,
  ContinuousDimension,
  // cli
  ConfigParse,
  TraceParse,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a code naming the contract
/// that was violated; the message adds context for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tradeoff
