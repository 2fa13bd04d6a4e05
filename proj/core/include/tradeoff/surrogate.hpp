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

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "tradeoff/space.hpp"

namespace tradeoff {

/// Matern 5/2 ARD kernel hyperparameters.
struct GpHyperparams {
  std::vector<double> length_scales;
  double signal_variance = 1.0;
  double noise_variance = 1e-6;

  static constexpr double kMinLengthScale = 1e-3;
  static constexpr double kMaxLengthScale = 1e3;
  static constexpr double kMinSignalVariance = 1e-6;
  static constexpr double kMaxSignalVariance = 1e2;
  static constexpr double kMinNoiseVariance = 1e-8;
  static constexpr double kMaxNoiseVariance = 1e-1;

  /// Unit length scales, unit signal variance, noise 1e-6.
  static GpHyperparams defaults(std::size_t dims);

  bool within_bounds() const noexcept;

  friend bool operator==(const GpHyperparams&, const GpHyperparams&) = default;
};

struct PosteriorPrediction {
  double mean = 0.0;
  double std = 0.0;
};

/// Options for the multi-start hyperparameter search. Defaults are the
/// published contract; tests and benchmarks may shrink them.
struct FitOptions {
  int restarts = 32;
  int max_iterations = 50;
  double tolerance = 1e-3;
  /// Half-width (log units) of the golden-section bracket around the current
  /// coordinate value.
  double bracket = 2.0;
};

/// Matern 5/2 covariance between two encoded points.
double matern52(std::span<const double> a, std::span<const double> b, const GpHyperparams& hp);

/// Fitted Gaussian-process regression model. Immutable once constructed, so a
/// single instance may be queried from many threads.
class GpSurrogate {
 public:
  /// Conditions a GP on the data at fixed hyperparameters.
  /// Throws Error(FactorizationFailed) when jitter escalation reaches 1e-4.
  static GpSurrogate condition(std::span<const UnitVector> inputs, std::span<const double> targets,
                               const GpHyperparams& hp);

  /// Prior-only model used when every target is identical.
  static GpSurrogate constant(std::span<const UnitVector> inputs, std::span<const double> targets, std::size_t dims);

  PosteriorPrediction predict(std::span<const double> x) const;

  const GpHyperparams& hyperparams() const noexcept { return hp_; }
  double prior_mean() const noexcept { return mean_; }
  double jitter() const noexcept { return jitter_; }
  double log_marginal_likelihood() const noexcept { return lml_; }
  /// True when the model fell back to the constant prior (DegenerateTargets).
  bool degenerate() const noexcept { return degenerate_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(inputs_.rows()); }
  std::size_t dims() const noexcept { return static_cast<std::size_t>(inputs_.cols()); }

  /// Lower-triangular factor of (K + (noise + jitter) I).
  const Eigen::MatrixXd& factor() const noexcept { return factor_; }
  /// The matrix that was factorized.
  Eigen::MatrixXd covariance() const;

 private:
  GpSurrogate() = default;

  Eigen::MatrixXd inputs_;
  Eigen::VectorXd targets_;
  GpHyperparams hp_;
  double mean_ = 0.0;
  double jitter_ = 0.0;
  double lml_ = 0.0;
  bool degenerate_ = false;
  Eigen::MatrixXd factor_;
  Eigen::VectorXd alpha_;
};

/// log p(targets | inputs, hp) with a constant prior mean equal to the target
/// average. Throws Error(FactorizationFailed) if the covariance cannot be
/// factorized even with jitter.
double log_marginal_likelihood(std::span<const UnitVector> inputs, std::span<const double> targets,
                               const GpHyperparams& hp);

/// Maximizes the marginal likelihood over hyperparameters by seeded multi-start
/// coordinate-wise golden-section search in log space, then conditions.
GpSurrogate fit(std::span<const UnitVector> inputs, std::span<const double> targets, std::uint64_t seed,
                const FitOptions& options = {});

inline PosteriorPrediction predict(const GpSurrogate& model, std::span<const double> x) { return model.predict(x); }

}  // namespace tradeoff
