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

namespace tradeoff::detail {

inline constexpr std::size_t kSobolMaxDims = 256;

struct SobolDirection {
  std::uint32_t polynomial;
  std::array<std::uint32_t, 18> initial;
};

extern const std::array<SobolDirection, kSobolMaxDims> kSobolDirections;

}  // namespace tradeoff::detail
