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
#include <random>
#include <stdexcept>

#include "test_util.hpp"
#include "tradeoff/loop.hpp"
#include "tradeoff/oracle.hpp"

using namespace tradeoff;
using tradeoff::testing::code_of;

namespace {

Observation obs(double acc, double sigma, std::size_t round) {
  Observation o;
  o.config.values = {static_cast<double>(round)};
  o.accuracy = acc;
  o.sigma = sigma;
  o.seconds = sigma * 10.0;
  o.round = round;
  return o;
}

Objective synthetic(const std::string& name, double noise, std::uint64_t seed) {
  const SynthSpec spec{name, noise, seed};
  return [spec](const Configuration& c, std::size_t i) { return eval_synthetic(spec, c, i); };
}

}  // namespace

TEST_CASE("normalize_time clamps into the unit interval") {
  CHECK(normalize_time(6.0, 12.0) == 0.5);
  CHECK(normalize_time(30.0, 12.0) == 1.0);
  CHECK(normalize_time(0.0, 12.0) == 0.0);
  CHECK(code_of([] { normalize_time(1.0, 0.0); }) == ErrorCode::NonPositiveReference);
  CHECK(code_of([] { normalize_time(1.0, -2.0); }) == ErrorCode::NonPositiveReference);
}

TEST_CASE("tradeoff_value arithmetic") {
  CHECK(tradeoff_value(0.73, 0.4, 0.0) == 0.73);
  CHECK(tradeoff_value(0.84, 0.5, 0.5) == doctest::Approx(0.59).epsilon(1e-15));
  CHECK(tradeoff_value(0.3, 0.3, 1.0) == 0.0);
}

TEST_CASE("select_final picks the maximal tradeoff") {
  const std::vector<Observation> one = {obs(0.4, 0.9, 1)};
  CHECK(select_final_index(one, 0.7) == 0);

  const std::vector<Observation> trace = {obs(0.6, 0.1, 1), obs(0.9, 0.9, 2), obs(0.7, 0.3, 3)};
  CHECK(select_final_index(trace, 0.0) == 1);
  CHECK(select_final_index(trace, 1.0) == 0);

  // Equal tradeoff: earliest round wins.
  const std::vector<Observation> tied = {obs(0.5, 0.0, 1), obs(0.75, 0.5, 2), obs(0.5, 0.0, 3)};
  CHECK(select_final_index(tied, 0.5) == 0);

  CHECK(code_of([] { select_final(std::vector<Observation>{}, 0.5); }) == ErrorCode::EmptyTrace);
}

TEST_CASE("select_final matches a linear scan on random traces") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Observation> trace;
    for (std::size_t i = 0; i < 10; ++i) trace.push_back(obs(u(rng), u(rng), i + 1));
    std::size_t best = 0;
    for (std::size_t i = 1; i < trace.size(); ++i) {
      if (trace[i].accuracy - 0.7 * trace[i].sigma > trace[best].accuracy - 0.7 * trace[best].sigma) best = i;
    }
    const auto [config, value] = select_final(trace, 0.7);
    CHECK(config == trace[best].config);
    CHECK(value == trace[best].accuracy - 0.7 * trace[best].sigma);
  }
}

TEST_CASE("run with S equal to k only evaluates the initialization points") {
  const auto space = synthetic_space("saturating");
  TradeoffSettings s;
  s.alpha = 0.5;
  s.iterations = 3;
  s.init_count = 3;
  const auto r = run(synthetic("saturating", 0.0, 1), space, s);
  REQUIRE(r.trace.size() == 3);
  const auto init = sobol_init(space, 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(r.trace[i].config == init[i]);
  const auto [config, value] = select_final(r.trace, 0.5);
  CHECK(r.selected == config);
  CHECK(r.selected_tradeoff == value);
}

TEST_CASE("run with default settings yields twenty observations") {
  const auto space = synthetic_space("saturating");
  TradeoffSettings s;
  s.alpha = 0.3;
  s.seed = 4;
  const auto r = run(synthetic("saturating", 0.01, 4), space, s);
  REQUIRE(r.trace.size() == 20);
  double max_init = 0.0;
  for (std::size_t i = 0; i < 3; ++i) max_init = std::max(max_init, r.trace[i].seconds);
  CHECK(r.t_ref == max_init);
  double best = -1e300;
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const auto& o = r.trace[i];
    CHECK(o.round == i + 1);
    CHECK(o.sigma == normalize_time(o.seconds, r.t_ref));
    CHECK(o.accuracy >= 0.0);
    CHECK(o.accuracy <= 1.0);
    best = std::max(best, tradeoff_value(o.accuracy, o.sigma, 0.3));
  }
  CHECK(r.selected_tradeoff == best);
}

TEST_CASE("run on the exhaustive grid selects the oracle optimum") {
  const auto space = synthetic_space("discrete-grid");
  const SynthSpec spec{"discrete-grid", 0.0, 0};
  for (double alpha : {0.0, 0.5, 1.0}) {
    TradeoffSettings s;
    s.alpha = alpha;
    s.iterations = 15;
    const auto r = run(synthetic("discrete-grid", 0.0, 0), space, s);
    std::vector<Configuration> seen;
    for (const auto& o : r.trace) seen.push_back(o.config);
    std::sort(seen.begin(), seen.end());
    CHECK(std::unique(seen.begin(), seen.end()) == seen.end());
    const auto [best, value] = oracle::exhaustive_best(
        space, [&](const Configuration& c) { return eval_synthetic(spec, c, 0); }, alpha, r.t_ref);
    CHECK(r.selected == best);
    CHECK(r.selected_tradeoff == doctest::Approx(value).epsilon(1e-15));
  }
}

TEST_CASE("run honours a fixed reference time") {
  const auto space = synthetic_space("discrete-grid");
  TradeoffSettings s;
  s.iterations = 6;
  s.t_ref = 5.0;
  std::vector<double> streamed;
  RunHooks hooks;
  hooks.on_observation = [&](const Observation& o, double t_ref) {
    CHECK(t_ref == 5.0);
    streamed.push_back(o.sigma);
  };
  const auto r = run(synthetic("discrete-grid", 0.0, 0), space, s, hooks);
  CHECK(r.t_ref == 5.0);
  REQUIRE(streamed.size() == r.trace.size());
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    CHECK(streamed[i] == r.trace[i].sigma);
    CHECK(r.trace[i].sigma == std::clamp(r.trace[i].seconds / 5.0, 0.0, 1.0));
  }
}

TEST_CASE("run freezes the automatic reference time after initialization") {
  const auto space = synthetic_space("discrete-grid");
  TradeoffSettings s;
  s.alpha = 0.0;
  s.iterations = 10;
  std::vector<std::pair<std::size_t, double>> streamed;
  RunHooks hooks;
  hooks.on_observation = [&](const Observation& o, double t_ref) { streamed.emplace_back(o.round, t_ref); };
  const auto r = run(synthetic("discrete-grid", 0.0, 0), space, s, hooks);
  REQUIRE(streamed.size() == 10);
  for (std::size_t i = 0; i < streamed.size(); ++i) {
    CHECK(streamed[i].first == i + 1);
    CHECK(streamed[i].second == r.t_ref);
  }
  // Later observations slower than t_ref clamp to 1.
  for (const auto& o : r.trace) {
    if (o.seconds > r.t_ref) CHECK(o.sigma == 1.0);
  }
}

TEST_CASE("run reports objective failures with the partial trace") {
  const auto space = synthetic_space("discrete-grid");
  const auto inner = synthetic("discrete-grid", 0.0, 0);
  for (std::size_t fail_at : {1, 5}) {
    TradeoffSettings s;
    s.iterations = 8;
    std::size_t streamed = 0;
    RunHooks hooks;
    hooks.on_observation = [&](const Observation&, double) { ++streamed; };
    const Objective failing = [&](const Configuration& c, std::size_t i) {
      if (i == fail_at) throw std::runtime_error("trainer crashed");
      return inner(c, i);
    };
    CHECK(code_of([&] { run(failing, space, s, hooks); }) == ErrorCode::ObjectiveFailure);
    CHECK(streamed == fail_at);
  }
}

TEST_CASE("run rejects invalid settings and spaces") {
  TradeoffSettings s;
  s.init_count = 5;
  s.iterations = 4;
  CHECK(code_of([&] { run(synthetic("discrete-grid", 0.0, 0), synthetic_space("discrete-grid"), s); }) ==
        ErrorCode::InvalidSettings);
  CHECK(code_of([&] { run(synthetic("discrete-grid", 0.0, 0), SearchSpace{}, TradeoffSettings{}); }) ==
        ErrorCode::EmptySpace);
}

TEST_CASE("alpha zero reproduces the accuracy-only proposal sequence") {
  const auto space = synthetic_space("saturating");
  TradeoffSettings s;
  s.alpha = 0.0;
  s.iterations = 8;
  s.seed = 9;
  std::size_t time_models = 0;
  RunHooks tradeoff_hooks;
  tradeoff_hooks.on_refit = [&](std::size_t, const GpSurrogate&, const GpSurrogate* vs) {
    if (vs != nullptr) ++time_models;
  };
  RunHooks accuracy_hooks;
  accuracy_hooks.mode = AcquisitionMode::AccuracyOnly;
  accuracy_hooks.on_refit = [&](std::size_t, const GpSurrogate&, const GpSurrogate* vs) { CHECK(vs == nullptr); };
  const auto a = run(synthetic("saturating", 0.01, 9), space, s, tradeoff_hooks);
  const auto b = run(synthetic("saturating", 0.01, 9), space, s, accuracy_hooks);
  CHECK(time_models == 5);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) CHECK(a.trace[i].config == b.trace[i].config);
}

TEST_CASE("run is deterministic for a fixed seed") {
  const auto space = synthetic_space("saturating");
  TradeoffSettings s;
  s.alpha = 0.5;
  s.iterations = 6;
  s.seed = 13;
  const auto a = run(synthetic("saturating", 0.01, 13), space, s);
  const auto b = run(synthetic("saturating", 0.01, 13), space, s);
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].config == b.trace[i].config);
    CHECK(a.trace[i].accuracy == b.trace[i].accuracy);
  }
  CHECK(a.selected == b.selected);
}
