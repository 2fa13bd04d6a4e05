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

// Brute-force reference implementations. They share no numerical code with
// the surrogate, acquisition or loop modules and exist so that tests and the
// acceptance suite can check the fast paths against something independent.

#include <cstdint>
#include <functional>
#include <span>
#include <utility>

#include "tradeoff/objectives.hpp"
#include "tradeoff/space.hpp"
#include "tradeoff/surrogate.hpp"

namespace tradeoff::oracle {

struct OracleReport {
  double value = 0.0;
  std::size_t samples_or_nodes = 0;
  double estimated_error = 0.0;  // standard error of the mean for Monte Carlo
};

/// Monte Carlo mean of max(v - best, 0), v ~ N(mean, std^2). n >= 1e4.
OracleReport mc_expected_improvement(double mean, double std, double best, std::size_t n, std::uint64_t seed);

/// Textbook GP posterior via an explicit inverse of (K + noise I) computed by
/// Gauss-Jordan elimination with partial pivoting. n <= 64.
/// Throws Error(SingularMatrix).
PosteriorPrediction exact_gp_posterior(std::span<const UnitVector> inputs, std::span<const double> targets,
                                       const GpHyperparams& hp, std::span<const double> query);

/// Dense log marginal likelihood using the same elimination (determinant from
/// the pivots). Used to cross-check the factorized path.
double exact_log_marginal_likelihood(std::span<const UnitVector> inputs, std::span<const double> targets,
                                     const GpHyperparams& hp);

/// Evaluates every configuration of a discrete space and returns the global
/// argmax of L - alpha * clamp(t / t_ref, 0, 1), first in enumeration order
/// on ties. Throws Error(SpaceTooLarge | ContinuousDimension).
std::pair<Configuration, double> exhaustive_best(const SearchSpace& space,
                                                 const std::function<EvalOutcome(const Configuration&)>& objective,
                                                 double alpha, double t_ref);

}  // namespace tradeoff::oracle
