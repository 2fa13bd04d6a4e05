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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"
#include "tradeoff/acquisition.hpp"
#include "tradeoff/objectives.hpp"
#include "tradeoff/oracle.hpp"
#include "tradeoff/surrogate.hpp"

using namespace tradeoff;
using tradeoff::testing::code_of;

namespace {

// Surrogates fitted on a few grid observations, for propose_next checks.
struct GridFixture {
  SearchSpace space = synthetic_space("discrete-grid");
  std::vector<Configuration> evaluated;
  std::vector<UnitVector> x;
  std::vector<double> acc;
  std::vector<double> sig;
  std::optional<GpSurrogate> vl;
  std::optional<GpSurrogate> vs;
  IncumbentState inc;

  explicit GridFixture(std::size_t n) {
    const SynthSpec spec{"discrete-grid", 0.0, 0};
    const auto all = candidate_pool(space, 4096, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& c = all[(i * 7) % all.size()];
      const auto out = eval_synthetic(spec, c, i);
      evaluated.push_back(c);
      x.push_back(encode(space, c));
      acc.push_back(out.accuracy);
      sig.push_back(std::clamp(out.seconds / 10.0, 0.0, 1.0));
    }
    vl = fit(x, acc, 1);
    vs = fit(x, sig, 2);
    inc.best_accuracy = *std::max_element(acc.begin(), acc.end());
    inc.best_sigma = *std::min_element(sig.begin(), sig.end());
  }

  double score(const Configuration& c, double alpha) const {
    const auto u = encode(space, c);
    return tradeoff_acquisition(vl->predict(u), vs->predict(u), inc, alpha);
  }
};

}  // namespace

TEST_CASE("expected improvement closed-form examples") {
  CHECK(expected_improvement({0.5, 0.0}, 0.6) == 0.0);
  CHECK(expected_improvement({0.7, 0.0}, 0.6) == doctest::Approx(0.1).epsilon(1e-15));
  const double phi0 = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  CHECK(expected_improvement({0.3, 1.0}, 0.3) == doctest::Approx(phi0).epsilon(1e-14));
  CHECK(phi0 == doctest::Approx(0.39894).epsilon(1e-5));
}

TEST_CASE("expected improvement agrees with the Monte Carlo oracle") {
  const double closed = expected_improvement({0.5, 0.1}, 0.6);
  const auto mc = oracle::mc_expected_improvement(0.5, 0.1, 0.6, 1'000'000, 7);
  CHECK(std::abs(closed - mc.value) <= 1e-3);
  CHECK(mc.samples_or_nodes == 1'000'000);
}

TEST_CASE("expected improvement scaling identity and monotonicity") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mu_d(-2.0, 2.0);
  std::uniform_real_distribution<double> sd_d(1e-3, 2.0);
  for (int i = 0; i < 500; ++i) {
    const double mu = mu_d(rng);
    const double sd = sd_d(rng);
    const double best = mu_d(rng);
    const double lhs = expected_improvement({mu, sd}, best);
    const double rhs = sd * expected_improvement({(mu - best) / sd, 1.0}, 0.0);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
    CHECK(lhs >= 0.0);
    CHECK(expected_improvement({mu + 0.01, sd}, best) >= lhs);
  }
  CHECK(expected_improvement({-40.0, 0.5}, 0.0) >= 0.0);
}

TEST_CASE("tradeoff acquisition combines the two improvements") {
  const PosteriorPrediction pl{0.8, 0.05};
  const PosteriorPrediction ps{0.5, 0.2};
  const IncumbentState inc{0.75, 0.3};
  const double al = expected_improvement(pl, inc.best_accuracy);
  const double as = expected_improvement(ps, inc.best_sigma);
  CHECK(tradeoff_acquisition(pl, ps, inc, 0.0) == al);
  CHECK(tradeoff_acquisition(pl, ps, inc, 0.5) == doctest::Approx(al - 0.5 * as).epsilon(1e-15));
  CHECK(tradeoff_acquisition(pl, ps, inc, 0.9) < tradeoff_acquisition(pl, ps, inc, 0.1));

  // a_L = 0.2 and a_sigma = 0.1 as deterministic improvements.
  const double v = tradeoff_acquisition({0.95, 0.0}, {0.4, 0.0}, {0.75, 0.3}, 0.5);
  CHECK(v == doctest::Approx(0.15).epsilon(1e-12));
}

TEST_CASE("validate_settings rejects bad settings") {
  TradeoffSettings s;
  CHECK_NOTHROW(validate_settings(s));
  s.alpha = -0.1;
  CHECK(code_of([&] { validate_settings(s); }) == ErrorCode::InvalidSettings);
  s = {};
  s.init_count = 0;
  CHECK(code_of([&] { validate_settings(s); }) == ErrorCode::InvalidSettings);
  s = {};
  s.iterations = 2;
  CHECK(code_of([&] { validate_settings(s); }) == ErrorCode::InvalidSettings);
  s = {};
  s.t_ref = 0.0;
  CHECK(code_of([&] { validate_settings(s); }) == ErrorCode::NonPositiveReference);
}

TEST_CASE("argmax is invariant to a constant shift and breaks ties lexicographically") {
  const std::vector<UnitVector> enc = {{0.5, 0.1}, {0.2, 0.9}, {0.2, 0.3}, {0.9, 0.0}};
  std::vector<double> scores = {0.1, 0.4, 0.4, 0.2};
  CHECK(argmax_candidate(enc, scores) == 2);
  for (double c : {-3.0, 0.25, 10.0}) {
    std::vector<double> shifted = scores;
    for (auto& s : shifted) s += c;
    CHECK(argmax_candidate(enc, shifted) == 2);
  }
  scores = {0.5, 0.4, 0.4, 0.2};
  CHECK(argmax_candidate(enc, scores) == 0);
}

TEST_CASE("propose_next returns the only unevaluated candidate") {
  const SearchSpace space({ParamDomain::categorical("model", {"a", "b"})});
  const std::vector<Configuration> evaluated = {Configuration{{std::string("a")}}};
  const std::vector<UnitVector> x = {encode(space, evaluated[0])};
  const std::vector<double> y = {0.5};
  const auto vl = GpSurrogate::condition(x, y, GpHyperparams::defaults(2));
  const auto vs = GpSurrogate::condition(x, y, GpHyperparams::defaults(2));
  TradeoffSettings s;
  const auto next = propose_next(vl, &vs, {0.5, 0.5}, space, evaluated, s, 4);
  CHECK(next == Configuration{{std::string("b")}});
}

TEST_CASE("propose_next falls back to evaluated candidates when the pool empties") {
  const SearchSpace space({ParamDomain::categorical("model", {"a", "b", "c"})});
  std::vector<Configuration> evaluated;
  std::vector<UnitVector> x;
  const std::vector<double> acc = {0.4, 0.9, 0.6};
  const std::vector<double> sig = {0.2, 0.9, 0.5};
  for (const char* l : {"a", "b", "c"}) {
    evaluated.push_back(Configuration{{std::string(l)}});
    x.push_back(encode(space, evaluated.back()));
  }
  GpHyperparams hp = GpHyperparams::defaults(3);
  hp.length_scales.assign(3, 0.5);
  hp.noise_variance = 1e-2;
  const auto vl = GpSurrogate::condition(x, acc, hp);
  const auto vs = GpSurrogate::condition(x, sig, hp);
  const IncumbentState inc{0.9, 0.2};
  for (double alpha : {0.0, 1.0}) {
    TradeoffSettings s;
    s.alpha = alpha;
    const auto next = propose_next(vl, &vs, inc, space, evaluated, s, 5);
    double best = -1e300;
    Configuration expect;
    for (std::size_t i = 0; i < 3; ++i) {
      const double v = tradeoff_acquisition(vl.predict(x[i]), vs.predict(x[i]), inc, alpha);
      if (v > best) {
        best = v;
        expect = evaluated[i];
      }
    }
    CHECK(next == expect);
  }
}

TEST_CASE("propose_next on the 15-config grid attains the exhaustive maximum") {
  const GridFixture fx(5);
  const auto all = candidate_pool(fx.space, 4096, 0);
  REQUIRE(all.size() == 15);
  for (double alpha : {0.0, 0.5, 1.0}) {
    TradeoffSettings s;
    s.alpha = alpha;
    const auto next = propose_next(*fx.vl, &*fx.vs, fx.inc, fx.space, fx.evaluated, s, 6);
    CHECK(std::find(fx.evaluated.begin(), fx.evaluated.end(), next) == fx.evaluated.end());
    double best = -1e300;
    for (const auto& c : all) {
      if (std::find(fx.evaluated.begin(), fx.evaluated.end(), c) != fx.evaluated.end()) continue;
      best = std::max(best, fx.score(c, alpha));
    }
    CHECK(fx.score(next, alpha) == best);
  }
}

TEST_CASE("propose_next is deterministic and ignores the order of evaluated configs") {
  const GridFixture fx(6);
  TradeoffSettings s;
  s.alpha = 0.5;
  const auto a = propose_next(*fx.vl, &*fx.vs, fx.inc, fx.space, fx.evaluated, s, 7);
  const auto b = propose_next(*fx.vl, &*fx.vs, fx.inc, fx.space, fx.evaluated, s, 7);
  CHECK(a == b);
  auto reversed = fx.evaluated;
  std::reverse(reversed.begin(), reversed.end());
  CHECK(propose_next(*fx.vl, &*fx.vs, fx.inc, fx.space, reversed, s, 7) == a);

  // Continuous space: the sampled pool depends on (seed, round) only.
  const auto sat = synthetic_space("saturating");
  const std::vector<UnitVector> x = {{0.1, 0.2, 0.0}, {0.8, 0.3, 1.0}, {0.5, 0.9, 0.5}};
  const std::vector<double> y = {0.3, 0.7, 0.5};
  const auto vl = fit(x, y, 3);
  const auto vs = fit(x, y, 4);
  const auto p1 = propose_next(vl, &vs, {0.7, 0.3}, sat, {}, s, 9);
  const auto p2 = propose_next(vl, &vs, {0.7, 0.3}, sat, {}, s, 9);
  CHECK(p1 == p2);
}

TEST_CASE("propose_next accuracy-only mode matches tradeoff mode at alpha zero") {
  const GridFixture fx(4);
  TradeoffSettings s;
  s.alpha = 0.0;
  const auto t = propose_next(*fx.vl, &*fx.vs, fx.inc, fx.space, fx.evaluated, s, 3, AcquisitionMode::Tradeoff);
  const auto a = propose_next(*fx.vl, nullptr, fx.inc, fx.space, fx.evaluated, s, 3, AcquisitionMode::AccuracyOnly);
  CHECK(t == a);
}
