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

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace tradeoff {

/// Unscrambled Sobol sequence generator (Gray-code order, 32-bit resolution).
///
/// The first call to next() returns the point after the all-zeros origin;
/// the origin itself is never emitted.
class SobolSequence {
 public:
  static constexpr std::size_t kMaxDimensions = 256;
  static constexpr int kBits = 32;

  explicit SobolSequence(std::size_t dimensions);

  std::size_t dimensions() const noexcept { return dims_; }

  /// Returns the next point, coordinates in [0, 1).
  std::vector<double> next();

  /// Index of the point the next call to next() will return (origin is 0).
  std::uint64_t index() const noexcept { return index_ + 1; }

 private:
  std::size_t dims_;
  std::uint64_t index_ = 0;
  std::vector<std::array<std::uint32_t, kBits>> directions_;
  std::vector<std::uint32_t> state_;
};

}  // namespace tradeoff
