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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tradeoff/space.hpp"
#include "tradeoff/surrogate.hpp"

namespace tradeoff {

/// Running best accuracy L* (max observed) and best normalized time sigma*
/// (min observed).
struct IncumbentState {
  double best_accuracy = 0.0;
  double best_sigma = 0.0;
};

struct TradeoffSettings {
  double alpha = 0.0;
  std::size_t iterations = 20;  // S: total evaluations, initialization included
  std::size_t init_count = 3;   // k: Sobol initialization points
  std::size_t candidate_max = 4096;
  std::uint64_t seed = 0;
  /// Reference seconds for time normalization; nullopt means "auto"
  /// (max of the initialization times).
  std::optional<double> t_ref;
};

/// Throws Error(InvalidSettings) unless alpha >= 0, S > k >= 1 (S == k is
/// accepted: no surrogate-guided rounds), candidate_max >= 1 and t_ref > 0.
void validate_settings(const TradeoffSettings& settings);

/// Closed-form E[max(v - best, 0)] for v ~ N(mean, std^2).
double expected_improvement(const PosteriorPrediction& pred, double best);

/// a_T = EI(pred_accuracy, L*) - alpha * EI(pred_sigma, sigma*).
double tradeoff_acquisition(const PosteriorPrediction& pred_accuracy, const PosteriorPrediction& pred_sigma,
                            const IncumbentState& incumbent, double alpha);

/// Which acquisition drives proposals. AccuracyOnly ignores the time model
/// entirely and is the reference for the alpha = 0 reduction.
enum class AcquisitionMode { Tradeoff, AccuracyOnly };

/// Index of the highest score; ties go to the lexicographically smallest
/// encoded vector. `encoded` and `scores` are parallel.
std::size_t argmax_candidate(std::span<const UnitVector> encoded, std::span<const double> scores);

/// Pool seed for a given proposal round.
std::uint64_t round_seed(std::uint64_t seed, std::size_t round) noexcept;

/// Scores candidate_pool(space, candidate_max, round_seed(seed, round)) minus
/// already evaluated configurations (kept if nothing else remains) and
/// returns the best one. `vsigma` may be null only in AccuracyOnly mode.
Configuration propose_next(const GpSurrogate& vl, const GpSurrogate* vsigma, const IncumbentState& incumbent,
                           const SearchSpace& space, std::span<const Configuration> evaluated,
                           const TradeoffSettings& settings, std::size_t round,
                           AcquisitionMode mode = AcquisitionMode::Tradeoff);

}  // namespace tradeoff
