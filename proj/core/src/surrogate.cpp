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

#include "tradeoff/surrogate.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>

#include "tradeoff/error.hpp"

namespace tradeoff {

namespace {

constexpr double kSqrt5 = 2.23606797749978969640;
constexpr double kJitterStart = 1e-10;
constexpr double kJitterCap = 1e-4;
constexpr double kNegativeVarianceTolerance = 1e-10;

double matern52_from_scaled_r2(double r2, double signal_variance) {
  const double r = std::sqrt(r2);
  return signal_variance * (1.0 + kSqrt5 * r + (5.0 / 3.0) * r2) * std::exp(-kSqrt5 * r);
}

struct Factorization {
  Eigen::MatrixXd lower;
  double jitter = 0.0;
};

// Right-looking Cholesky of the lower triangle of a column-major matrix, in
// place. Returns false on a non-positive pivot. The strict upper triangle is
// left untouched.
bool cholesky_lower_in_place(Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  double* a = m.data();
  for (Eigen::Index j = 0; j < n; ++j) {
    double* col_j = a + j * n;
    const double pivot = col_j[j];
    if (!(pivot > 0.0)) return false;
    const double l_jj = std::sqrt(pivot);
    col_j[j] = l_jj;
    const double inv = 1.0 / l_jj;
    for (Eigen::Index i = j + 1; i < n; ++i) col_j[i] *= inv;
    for (Eigen::Index k = j + 1; k < n; ++k) {
      double* col_k = a + k * n;
      const double l_kj = col_j[k];
      for (Eigen::Index i = k; i < n; ++i) col_k[i] -= col_j[i] * l_kj;
    }
  }
  return true;
}

// Deterministic jitter escalation: fill(work, jitter) writes the lower
// triangle of K + jitter*I, tried bare first and then at 1e-10 * trace/n
// growing tenfold, giving up past 1e-4. Returns the jitter used, or nullopt.
template <typename Fill>
std::optional<double> factor_escalating(Eigen::MatrixXd& work, double trace, Fill&& fill) {
  const double base = kJitterStart * trace / static_cast<double>(work.rows());
  double jitter = 0.0;
  while (true) {
    fill(work, jitter);
    if (cholesky_lower_in_place(work)) return jitter;
    jitter = jitter == 0.0 ? base : jitter * 10.0;
    if (!(jitter > 0.0) || jitter > kJitterCap) return std::nullopt;
  }
}

std::optional<double> factor_with_jitter(const Eigen::MatrixXd& cov, Eigen::MatrixXd& work) {
  return factor_escalating(work, cov.trace(), [&](Eigen::MatrixXd& w, double jitter) {
    w.triangularView<Eigen::Lower>() = cov;
    if (jitter > 0.0) w.diagonal().array() += jitter;
  });
}

std::optional<Factorization> factorize(const Eigen::MatrixXd& cov) {
  Eigen::MatrixXd work(cov.rows(), cov.cols());
  const auto jitter = factor_with_jitter(cov, work);
  if (!jitter) return std::nullopt;
  return Factorization{work.triangularView<Eigen::Lower>(), *jitter};
}

Eigen::MatrixXd to_matrix(std::span<const UnitVector> inputs) {
  const auto n = static_cast<Eigen::Index>(inputs.size());
  const auto d = static_cast<Eigen::Index>(inputs.empty() ? 0 : inputs.front().size());
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(inputs[i].size()) != d) {
      throw Error(ErrorCode::LengthMismatch, "training inputs have inconsistent widths");
    }
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = inputs[i][j];
  }
  return x;
}

void check_data(std::span<const UnitVector> inputs, std::span<const double> targets) {
  if (inputs.empty()) throw Error(ErrorCode::EmptyTrace, "GP needs at least one observation");
  if (inputs.size() != targets.size()) {
    throw Error(ErrorCode::LengthMismatch, "inputs and targets differ in length");
  }
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Pairwise squared differences per dimension, precomputed once per fit so each
// likelihood evaluation only rescales them.
class LikelihoodWorkspace {
 public:
  LikelihoodWorkspace(std::span<const UnitVector> inputs, std::span<const double> targets)
      : n_(static_cast<Eigen::Index>(inputs.size())),
        d_(inputs.front().size()),
        centered_(n_),
        sqdiff_(n_ * (n_ - 1) / 2, static_cast<Eigen::Index>(d_)),
        inv_ls2_(static_cast<Eigen::Index>(d_)),
        r2_(n_ * (n_ - 1) / 2),
        r_(n_ * (n_ - 1) / 2),
        work_(n_, n_),
        w_(n_) {
    const double m = mean_of(targets);
    for (Eigen::Index i = 0; i < n_; ++i) centered_(i) = targets[static_cast<std::size_t>(i)] - m;
    // Pairs are stored column by column to match the lower triangle layout.
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < n_; ++j) {
      for (Eigen::Index i = j + 1; i < n_; ++i, ++k) {
        for (std::size_t c = 0; c < d_; ++c) {
          const double diff = inputs[static_cast<std::size_t>(i)][c] - inputs[static_cast<std::size_t>(j)][c];
          sqdiff_(k, static_cast<Eigen::Index>(c)) = diff * diff;
        }
      }
    }
  }

  std::size_t dims() const noexcept { return d_; }

  /// Negative log marginal likelihood; +inf when factorization fails.
  double negative_lml(const GpHyperparams& hp) {
    for (std::size_t c = 0; c < d_; ++c) {
      inv_ls2_(static_cast<Eigen::Index>(c)) = 1.0 / (hp.length_scales[c] * hp.length_scales[c]);
    }
    // All pairs at once so exp/sqrt vectorize.
    r2_.matrix().noalias() = sqdiff_ * inv_ls2_;
    r_ = r2_.sqrt();
    r2_ = hp.signal_variance * (1.0 + kSqrt5 * r_ + (5.0 / 3.0) * r2_) * (-kSqrt5 * r_).exp();
    const double diag = hp.signal_variance + hp.noise_variance;
    const auto fill = [&](Eigen::MatrixXd& w, double jitter) {
      const double* src = r2_.data();
      for (Eigen::Index j = 0; j < n_; ++j) {
        double* col = w.data() + j * n_;
        col[j] = diag + jitter;
        std::copy(src, src + (n_ - 1 - j), col + j + 1);
        src += n_ - 1 - j;
      }
    };
    if (!factor_escalating(work_, diag * static_cast<double>(n_), fill)) {
      return std::numeric_limits<double>::infinity();
    }
    w_ = centered_;
    work_.triangularView<Eigen::Lower>().solveInPlace(w_);
    return 0.5 * w_.squaredNorm() + work_.diagonal().array().log().sum() +
           0.5 * static_cast<double>(n_) * std::log(2.0 * std::numbers::pi);
  }

  static double negative_lml_from(const Eigen::MatrixXd& lower, const Eigen::VectorXd& centered) {
    const auto n = centered.size();
    const Eigen::VectorXd w = lower.triangularView<Eigen::Lower>().solve(centered);
    const double log_det_half = lower.diagonal().array().log().sum();
    return 0.5 * w.squaredNorm() + log_det_half + 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  }

 private:
  Eigen::Index n_;
  std::size_t d_;
  Eigen::VectorXd centered_;
  Eigen::MatrixXd sqdiff_;
  Eigen::VectorXd inv_ls2_;
  Eigen::ArrayXd r2_;
  Eigen::ArrayXd r_;
  Eigen::MatrixXd work_;
  Eigen::VectorXd w_;
};

// Log-space parameter vector: [log ls_1..d, log signal, log noise].
struct LogBounds {
  std::vector<double> lo, hi;
};

LogBounds log_bounds(std::size_t d) {
  LogBounds b;
  for (std::size_t c = 0; c < d; ++c) {
    b.lo.push_back(std::log(GpHyperparams::kMinLengthScale));
    b.hi.push_back(std::log(GpHyperparams::kMaxLengthScale));
  }
  b.lo.push_back(std::log(GpHyperparams::kMinSignalVariance));
  b.hi.push_back(std::log(GpHyperparams::kMaxSignalVariance));
  b.lo.push_back(std::log(GpHyperparams::kMinNoiseVariance));
  b.hi.push_back(std::log(GpHyperparams::kMaxNoiseVariance));
  return b;
}

GpHyperparams from_log(const std::vector<double>& theta, std::size_t d) {
  GpHyperparams hp;
  hp.length_scales.resize(d);
  for (std::size_t c = 0; c < d; ++c) hp.length_scales[c] = std::exp(theta[c]);
  hp.signal_variance = std::exp(theta[d]);
  hp.noise_variance = std::exp(theta[d + 1]);
  return hp;
}

struct LocalResult {
  std::vector<double> theta;
  double value;
};

struct LineMin {
  double x;
  double f;
};

// Golden-section search for a minimum of f on [a, b].
template <typename F>
LineMin golden_section(F&& f, double a, double b, double tolerance) {
  constexpr double kInvPhi = 0.61803398874989484820;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tolerance) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? LineMin{x1, f1} : LineMin{x2, f2};
}

LocalResult coordinate_golden_descent(LikelihoodWorkspace& ws, std::vector<double> theta, const LogBounds& bounds,
                                      const FitOptions& opt) {
  const std::size_t d = ws.dims();
  const std::size_t p = theta.size();
  auto objective = [&](const std::vector<double>& t) { return ws.negative_lml(from_log(t, d)); };
  double current = objective(theta);

  // Per-coordinate half-widths: the full bracket first, then twice the last move.
  std::vector<double> half(p, opt.bracket);
  const double min_half = 0.1 * opt.bracket;
  std::vector<double> probe(p);
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    const auto sweep_start = theta;
    double max_step = 0.0;
    for (std::size_t c = 0; c < p; ++c) {
      probe = theta;
      const auto m = golden_section(
          [&](double x) {
            probe[c] = x;
            return objective(probe);
          },
          std::max(bounds.lo[c], theta[c] - half[c]), std::min(bounds.hi[c], theta[c] + half[c]), opt.tolerance);
      double step = 0.0;
      if (m.f < current) {
        step = std::abs(m.x - theta[c]);
        max_step = std::max(max_step, step);
        theta[c] = m.x;
        current = m.f;
      }
      half[c] = std::clamp(2.0 * step, min_half, opt.bracket);
    }
    if (max_step < opt.tolerance) break;

    // Pattern move along the sweep's net displacement.
    std::vector<double> dir(p);
    double t_max = 8.0;
    for (std::size_t c = 0; c < p; ++c) {
      dir[c] = theta[c] - sweep_start[c];
      if (dir[c] > 0.0) t_max = std::min(t_max, (bounds.hi[c] - theta[c]) / dir[c]);
      if (dir[c] < 0.0) t_max = std::min(t_max, (bounds.lo[c] - theta[c]) / dir[c]);
    }
    if (t_max <= 0.0) continue;
    const double norm = std::sqrt(std::inner_product(dir.begin(), dir.end(), dir.begin(), 0.0));
    const auto m = golden_section(
        [&](double t) {
          for (std::size_t c = 0; c < p; ++c) probe[c] = theta[c] + t * dir[c];
          return objective(probe);
        },
        0.0, t_max, opt.tolerance / norm);
    if (m.f < current) {
      for (std::size_t c = 0; c < p; ++c) theta[c] += m.x * dir[c];
      current = m.f;
    }
  }
  return {std::move(theta), current};
}

}  // namespace

GpHyperparams GpHyperparams::defaults(std::size_t dims) {
  GpHyperparams hp;
  hp.length_scales.assign(dims, 1.0);
  return hp;
}

bool GpHyperparams::within_bounds() const noexcept {
  for (double l : length_scales) {
    if (!(l >= kMinLengthScale && l <= kMaxLengthScale)) return false;
  }
  return signal_variance >= kMinSignalVariance && signal_variance <= kMaxSignalVariance &&
         noise_variance >= kMinNoiseVariance && noise_variance <= kMaxNoiseVariance;
}

double matern52(std::span<const double> a, std::span<const double> b, const GpHyperparams& hp) {
  double r2 = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double z = (a[c] - b[c]) / hp.length_scales[c];
    r2 += z * z;
  }
  return matern52_from_scaled_r2(r2, hp.signal_variance);
}

GpSurrogate GpSurrogate::condition(std::span<const UnitVector> inputs, std::span<const double> targets,
                                   const GpHyperparams& hp) {
  check_data(inputs, targets);
  GpSurrogate gp;
  gp.inputs_ = to_matrix(inputs);
  if (hp.length_scales.size() != static_cast<std::size_t>(gp.inputs_.cols())) {
    throw Error(ErrorCode::LengthMismatch, "one length scale per input dimension required");
  }
  gp.hp_ = hp;
  gp.targets_ = Eigen::Map<const Eigen::VectorXd>(targets.data(), static_cast<Eigen::Index>(targets.size()));
  gp.mean_ = mean_of(targets);

  const auto n = gp.inputs_.rows();
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = matern52(inputs[static_cast<std::size_t>(i)], inputs[static_cast<std::size_t>(j)], hp);
      cov(i, j) = v;
      cov(j, i) = v;
    }
    cov(i, i) += hp.noise_variance;
  }
  auto f = factorize(cov);
  if (!f) throw Error(ErrorCode::FactorizationFailed, "covariance not positive definite with jitter up to 1e-4");
  gp.factor_ = std::move(f->lower);
  gp.jitter_ = f->jitter;
  const Eigen::VectorXd centered = gp.targets_.array() - gp.mean_;
  gp.alpha_ = gp.factor_.triangularView<Eigen::Lower>().solve(centered);
  gp.factor_.triangularView<Eigen::Lower>().transpose().solveInPlace(gp.alpha_);
  gp.lml_ = -LikelihoodWorkspace::negative_lml_from(gp.factor_, centered);
  return gp;
}

GpSurrogate GpSurrogate::constant(std::span<const UnitVector> inputs, std::span<const double> targets,
                                  std::size_t dims) {
  check_data(inputs, targets);
  GpSurrogate gp;
  gp.inputs_ = to_matrix(inputs);
  gp.targets_ = Eigen::Map<const Eigen::VectorXd>(targets.data(), static_cast<Eigen::Index>(targets.size()));
  gp.hp_ = GpHyperparams::defaults(dims);
  gp.mean_ = targets.front();
  gp.degenerate_ = true;
  return gp;
}

Eigen::MatrixXd GpSurrogate::covariance() const {
  if (degenerate_) return {};
  return factor_ * factor_.transpose();
}

PosteriorPrediction GpSurrogate::predict(std::span<const double> x) const {
  if (x.size() != dims()) {
    throw Error(ErrorCode::LengthMismatch,
                "query has " + std::to_string(x.size()) + " coordinates, model expects " + std::to_string(dims()));
  }
  if (degenerate_) return {mean_, std::sqrt(hp_.signal_variance)};
  const auto n = inputs_.rows();
  Eigen::VectorXd kstar(n);
  std::vector<double> row(dims());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < dims(); ++c) row[c] = inputs_(i, static_cast<Eigen::Index>(c));
    kstar(i) = matern52(row, x, hp_);
  }
  const double mean = mean_ + kstar.dot(alpha_);
  const Eigen::VectorXd v = factor_.triangularView<Eigen::Lower>().solve(kstar);
  double var = hp_.signal_variance - v.squaredNorm();
  if (var < 0.0) {
    if (var < -kNegativeVarianceTolerance) {
      throw Error(ErrorCode::NegativeVariance, "posterior variance " + std::to_string(var));
    }
    var = 0.0;
  }
  return {mean, std::sqrt(var)};
}

double log_marginal_likelihood(std::span<const UnitVector> inputs, std::span<const double> targets,
                               const GpHyperparams& hp) {
  check_data(inputs, targets);
  LikelihoodWorkspace ws(inputs, targets);
  if (hp.length_scales.size() != ws.dims()) {
    throw Error(ErrorCode::LengthMismatch, "one length scale per input dimension required");
  }
  const double nlml = ws.negative_lml(hp);
  if (!std::isfinite(nlml)) {
    throw Error(ErrorCode::FactorizationFailed, "covariance not positive definite with jitter up to 1e-4");
  }
  return -nlml;
}

GpSurrogate fit(std::span<const UnitVector> inputs, std::span<const double> targets, std::uint64_t seed,
                const FitOptions& options) {
  check_data(inputs, targets);
  const std::size_t d = inputs.front().size();
  if (std::all_of(targets.begin(), targets.end(), [&](double t) { return t == targets.front(); })) {
    return GpSurrogate::constant(inputs, targets, d);
  }

  LikelihoodWorkspace ws(inputs, targets);
  const auto bounds = log_bounds(d);
  std::mt19937_64 rng(seed);
  std::optional<LocalResult> best;
  for (int start = 0; start < options.restarts; ++start) {
    std::vector<double> theta(bounds.lo.size());
    for (std::size_t c = 0; c < theta.size(); ++c) {
      theta[c] = std::uniform_real_distribution<double>(bounds.lo[c], bounds.hi[c])(rng);
    }
    auto local = coordinate_golden_descent(ws, std::move(theta), bounds, options);
    if (!best || local.value < best->value) best = std::move(local);
  }
  if (!best || !std::isfinite(best->value)) {
    throw Error(ErrorCode::FactorizationFailed, "no hyperparameter setting admits a factorization");
  }
  return GpSurrogate::condition(inputs, targets, from_log(best->theta, d));
}

}  // namespace tradeoff
