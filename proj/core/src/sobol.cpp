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

#include "tradeoff/sobol.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "sobol_table.hpp"

namespace tradeoff {

SobolSequence::SobolSequence(std::size_t dimensions)
    : dims_(dimensions), directions_(dimensions), state_(dimensions, 0) {
  if (dimensions == 0 || dimensions > kMaxDimensions) {
    throw std::invalid_argument("SobolSequence: dimensions must be in [1, " +
                                std::to_string(kMaxDimensions) + "]");
  }
  for (std::size_t d = 0; d < dims_; ++d) {
    auto& v = directions_[d];
    const auto& dir = detail::kSobolDirections[d];
    const int degree = std::bit_width(dir.polynomial) - 1;
    if (degree == 0) {
      // First dimension: van der Corput in base 2.
      for (int i = 0; i < kBits; ++i) v[i] = 1u << (kBits - 1 - i);
      continue;
    }
    for (int i = 0; i < degree && i < kBits; ++i) {
      v[i] = dir.initial[i] << (kBits - 1 - i);
    }
    for (int i = degree; i < kBits; ++i) {
      std::uint32_t value = v[i - degree] ^ (v[i - degree] >> degree);
      for (int k = 1; k < degree; ++k) {
        if ((dir.polynomial >> (degree - k)) & 1u) value ^= v[i - k];
      }
      v[i] = value;
    }
  }
}

std::vector<double> SobolSequence::next() {
  // Gray-code update: flip the direction of the lowest zero bit of index_.
  const int c = std::countr_one(index_);
  if (c >= kBits) throw std::out_of_range("SobolSequence exhausted");
  ++index_;
  std::vector<double> point(dims_);
  constexpr double kScale = 1.0 / 4294967296.0;
  for (std::size_t d = 0; d < dims_; ++d) {
    state_[d] ^= directions_[d][c];
    point[d] = static_cast<double>(state_[d]) * kScale;
  }
  return point;
}

}  // namespace tradeoff
