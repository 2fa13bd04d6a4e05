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

#include "tradeoff/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "tradeoff/error.hpp"

namespace tradeoff {

namespace {

double normal_pdf(double z) { return std::exp(-0.5 * z * z) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2); }
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

void validate_settings(const TradeoffSettings& s) {
  if (!(s.alpha >= 0.0) || !std::isfinite(s.alpha)) throw Error(ErrorCode::InvalidSettings, "alpha must be >= 0");
  if (s.init_count < 1) throw Error(ErrorCode::InvalidSettings, "init_count must be >= 1");
  if (s.iterations < s.init_count) throw Error(ErrorCode::InvalidSettings, "iterations must be >= init_count");
  if (s.candidate_max < 1) throw Error(ErrorCode::InvalidSettings, "candidate_max must be >= 1");
  if (s.t_ref && !(*s.t_ref > 0.0)) throw Error(ErrorCode::NonPositiveReference, "t_ref must be positive");
}

double expected_improvement(const PosteriorPrediction& pred, double best) {
  const double delta = pred.mean - best;
  if (!(pred.std > 0.0)) return std::max(delta, 0.0);
  const double z = delta / pred.std;
  return std::max(0.0, pred.std * (z * normal_cdf(z) + normal_pdf(z)));
}

double tradeoff_acquisition(const PosteriorPrediction& pred_accuracy, const PosteriorPrediction& pred_sigma,
                            const IncumbentState& incumbent, double alpha) {
  const double a_accuracy = expected_improvement(pred_accuracy, incumbent.best_accuracy);
  if (alpha == 0.0) return a_accuracy;
  return a_accuracy - alpha * expected_improvement(pred_sigma, incumbent.best_sigma);
}

std::size_t argmax_candidate(std::span<const UnitVector> encoded, std::span<const double> scores) {
  if (scores.empty()) throw Error(ErrorCode::EmptySpace, "no candidates to choose from");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best] || (scores[i] == scores[best] && encoded[i] < encoded[best])) best = i;
  }
  return best;
}

std::uint64_t round_seed(std::uint64_t seed, std::size_t round) noexcept {
  return seed ^ static_cast<std::uint64_t>(round);
}

Configuration propose_next(const GpSurrogate& vl, const GpSurrogate* vsigma, const IncumbentState& incumbent,
                           const SearchSpace& space, std::span<const Configuration> evaluated,
                           const TradeoffSettings& settings, std::size_t round, AcquisitionMode mode) {
  if (mode == AcquisitionMode::Tradeoff && vsigma == nullptr) {
    throw Error(ErrorCode::InvalidSettings, "tradeoff acquisition needs a time surrogate");
  }
  auto pool = candidate_pool(space, settings.candidate_max, round_seed(settings.seed, round));
  if (pool.empty()) throw Error(ErrorCode::EmptySpace, "candidate pool is empty");

  const std::set<Configuration> seen(evaluated.begin(), evaluated.end());
  std::vector<Configuration> fresh;
  fresh.reserve(pool.size());
  for (auto& c : pool) {
    if (!seen.contains(c)) fresh.push_back(std::move(c));
  }
  if (!fresh.empty()) {
    pool = std::move(fresh);
  } else {
    // Every candidate was already evaluated: allow re-evaluation.
    pool = candidate_pool(space, settings.candidate_max, round_seed(settings.seed, round));
  }

  std::vector<UnitVector> encoded;
  std::vector<double> scores;
  encoded.reserve(pool.size());
  scores.reserve(pool.size());
  for (const auto& c : pool) {
    encoded.push_back(encode(space, c));
    const auto pl = vl.predict(encoded.back());
    if (mode == AcquisitionMode::AccuracyOnly) {
      scores.push_back(expected_improvement(pl, incumbent.best_accuracy));
    } else {
      scores.push_back(tradeoff_acquisition(pl, vsigma->predict(encoded.back()), incumbent, settings.alpha));
    }
  }
  return pool[argmax_candidate(encoded, scores)];
}

}  // namespace tradeoff
