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

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "tradeoff/acquisition.hpp"
#include "tradeoff/objectives.hpp"
#include "tradeoff/sobol.hpp"
#include "tradeoff/surrogate.hpp"

namespace {

using namespace tradeoff;

struct Data {
  std::vector<UnitVector> x;
  std::vector<double> y;
};

Data make_data(std::size_t n, std::size_t d) {
  std::mt19937_64 rng(n * 31 + d);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Data data;
  for (std::size_t i = 0; i < n; ++i) {
    UnitVector v(d);
    for (auto& c : v) c = u(rng);
    data.y.push_back(std::sin(3.0 * v[0]) * v.back() + 0.01 * u(rng));
    data.x.push_back(std::move(v));
  }
  return data;
}

void BM_ExpectedImprovement(benchmark::State& state) {
  double mu = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_improvement({mu, 0.3}, 0.2));
    mu += 1e-9;
  }
}
BENCHMARK(BM_ExpectedImprovement);

void BM_LogMarginalLikelihood(benchmark::State& state) {
  const auto data = make_data(static_cast<std::size_t>(state.range(0)), 3);
  auto hp = GpHyperparams::defaults(3);
  hp.noise_variance = 1e-4;
  for (auto _ : state) benchmark::DoNotOptimize(log_marginal_likelihood(data.x, data.y, hp));
}
BENCHMARK(BM_LogMarginalLikelihood)->Arg(5)->Arg(10)->Arg(20)->Arg(50);

void BM_Fit(benchmark::State& state) {
  const auto data = make_data(static_cast<std::size_t>(state.range(0)), 3);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(fit(data.x, data.y, seed++));
}
BENCHMARK(BM_Fit)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_Predict(benchmark::State& state) {
  const auto data = make_data(static_cast<std::size_t>(state.range(0)), 3);
  auto hp = GpHyperparams::defaults(3);
  hp.length_scales = {0.3, 0.3, 0.3};
  const auto gp = GpSurrogate::condition(data.x, data.y, hp);
  const UnitVector q = {0.4, 0.6, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(gp.predict(q));
}
BENCHMARK(BM_Predict)->Arg(10)->Arg(20)->Arg(50);

void BM_ProposeNext(benchmark::State& state) {
  const auto space = synthetic_space("saturating");
  const auto data = make_data(19, space.encoded_width());
  auto hp = GpHyperparams::defaults(space.encoded_width());
  hp.length_scales = {0.3, 0.3, 0.5};
  const auto vl = GpSurrogate::condition(data.x, data.y, hp);
  const auto vs = GpSurrogate::condition(data.x, data.y, hp);
  TradeoffSettings settings;
  settings.alpha = 0.5;
  settings.candidate_max = static_cast<std::size_t>(state.range(0));
  std::size_t round = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propose_next(vl, &vs, {0.8, 0.2}, space, {}, settings, round++));
  }
}
BENCHMARK(BM_ProposeNext)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_SobolNext(benchmark::State& state) {
  SobolSequence seq(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(seq.next());
}
BENCHMARK(BM_SobolNext)->Arg(3)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
