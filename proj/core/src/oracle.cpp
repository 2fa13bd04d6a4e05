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

#include "tradeoff/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "tradeoff/error.hpp"

namespace tradeoff::oracle {

namespace {

// Extended precision throughout: the oracle must be at least as accurate as
// the factorized path it checks.
using Real = long double;
using Dense = std::vector<std::vector<Real>>;

Real kernel(std::span<const double> a, std::span<const double> b, const GpHyperparams& hp) {
  Real r2 = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Real t = (static_cast<Real>(a[i]) - b[i]) / hp.length_scales[i];
    r2 += t * t;
  }
  const Real r = std::sqrt(5.0L * r2);
  return hp.signal_variance * (1.0L + r + r * r / 3.0L) * std::exp(-r);
}

Dense gram(std::span<const UnitVector> inputs, const GpHyperparams& hp) {
  const std::size_t n = inputs.size();
  Dense k(n, std::vector<Real>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) k[i][j] = kernel(inputs[i], inputs[j], hp);
    k[i][i] += hp.noise_variance;
  }
  return k;
}

// Gauss-Jordan with partial pivoting. Returns the inverse and log|det|.
std::pair<Dense, Real> invert(Dense a) {
  const std::size_t n = a.size();
  Dense inv(n, std::vector<Real>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0L;
  Real log_det = 0.0L;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (a[pivot][col] == 0.0L || !std::isfinite(a[pivot][col])) {
      throw Error(ErrorCode::SingularMatrix, "pivot vanished in column " + std::to_string(col));
    }
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Real p = a[col][col];
    log_det += std::log(std::abs(p));
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Real f = a[r][col];
      if (f == 0.0L) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return {std::move(inv), log_det};
}

void check(std::span<const UnitVector> inputs, std::span<const double> targets) {
  if (inputs.empty() || inputs.size() != targets.size()) {
    throw Error(ErrorCode::LengthMismatch, "oracle needs matching, non-empty inputs and targets");
  }
  if (inputs.size() > 64) throw Error(ErrorCode::SpaceTooLarge, "exact GP oracle is limited to 64 points");
}

Real average(std::span<const double> v) {
  Real s = 0.0L;
  for (double x : v) s += x;
  return s / static_cast<Real>(v.size());
}

}  // namespace

OracleReport mc_expected_improvement(double mean, double std, double best, std::size_t n, std::uint64_t seed) {
  if (!(std > 0.0)) return {std::max(mean - best, 0.0), 1, 0.0};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(mean, std);
  // Welford running moments.
  double m = 0.0;
  double s = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double x = std::max(normal(rng) - best, 0.0);
    const double d = x - m;
    m += d / static_cast<double>(i);
    s += d * (x - m);
  }
  const double var = n > 1 ? s / static_cast<double>(n - 1) : 0.0;
  return {m, n, std::sqrt(var / static_cast<double>(n))};
}

PosteriorPrediction exact_gp_posterior(std::span<const UnitVector> inputs, std::span<const double> targets,
                                       const GpHyperparams& hp, std::span<const double> query) {
  check(inputs, targets);
  const std::size_t n = inputs.size();
  const auto [inv, log_det] = invert(gram(inputs, hp));
  const Real prior = average(targets);
  std::vector<Real> kq(n);
  for (std::size_t i = 0; i < n; ++i) kq[i] = kernel(inputs[i], query, hp);
  Real mean = prior;
  Real reduction = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      mean += kq[i] * inv[i][j] * (targets[j] - prior);
      reduction += kq[i] * inv[i][j] * kq[j];
    }
  }
  const Real var = kernel(query, query, hp) - reduction;
  return {static_cast<double>(mean), static_cast<double>(std::sqrt(std::max(var, 0.0L)))};
}

double exact_log_marginal_likelihood(std::span<const UnitVector> inputs, std::span<const double> targets,
                                     const GpHyperparams& hp) {
  check(inputs, targets);
  const std::size_t n = inputs.size();
  const auto [inv, log_det] = invert(gram(inputs, hp));
  const Real prior = average(targets);
  Real quad = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) quad += (targets[i] - prior) * inv[i][j] * (targets[j] - prior);
  }
  return static_cast<double>(-0.5L * quad - 0.5L * log_det -
                             0.5L * static_cast<Real>(n) * std::log(2.0L * std::numbers::pi_v<Real>));
}

std::pair<Configuration, double> exhaustive_best(const SearchSpace& space,
                                                 const std::function<EvalOutcome(const Configuration&)>& objective,
                                                 double alpha, double t_ref) {
  validate_space(space);
  if (!space.is_discrete()) throw Error(ErrorCode::ContinuousDimension, "exhaustive search needs a discrete space");
  if (space.cardinality() > 10000) throw Error(ErrorCode::SpaceTooLarge, "more than 1e4 configurations");
  if (!(t_ref > 0.0)) throw Error(ErrorCode::NonPositiveReference, "t_ref must be positive");

  // Own odometer over the raw domains rather than candidate_pool, so the scan
  // does not depend on the code it is used to check.
  std::vector<std::size_t> radix;
  for (const auto& d : space.dims()) radix.push_back(d.cardinality());
  const auto value_at = [&](std::size_t dim, std::size_t k) -> ParamValue {
    const auto& kind = space.dims()[dim].kind;
    if (const auto* i = std::get_if<IntegerDomain>(&kind)) return i->lo + static_cast<std::int64_t>(k);
    if (const auto* c = std::get_if<CategoricalDomain>(&kind)) return c->labels[k];
    return std::get<FractionDomain>(kind).values[k];
  };

  std::vector<std::size_t> digits(radix.size(), 0);
  bool have = false;
  Configuration best;
  double best_value = 0.0;
  while (true) {
    Configuration c;
    for (std::size_t i = 0; i < digits.size(); ++i) c.values.push_back(value_at(i, digits[i]));
    const auto out = objective(c);
    const double sigma = std::min(1.0, std::max(0.0, out.seconds / t_ref));
    const double value = out.accuracy - alpha * sigma;
    if (!have || value > best_value) {
      have = true;
      best = c;
      best_value = value;
    }
    std::size_t i = digits.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++digits[i] < radix[i]) {
        done = false;
        break;
      }
      digits[i] = 0;
    }
    if (done) break;
  }
  return {best, best_value};
}

}  // namespace tradeoff::oracle
