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

#include "tradeoff/loop.hpp"

#include <algorithm>
#include <cmath>

#include "tradeoff/error.hpp"

namespace tradeoff {

namespace {

std::uint64_t fit_seed(std::uint64_t seed, std::size_t round, std::uint64_t which) {
  return mix64(mix64(seed) ^ mix64((static_cast<std::uint64_t>(round) << 1) | which));
}

}  // namespace

double normalize_time(double seconds, double t_ref) {
  if (!(t_ref > 0.0)) throw Error(ErrorCode::NonPositiveReference, "t_ref must be positive");
  return std::clamp(seconds / t_ref, 0.0, 1.0);
}

std::size_t select_final_index(std::span<const Observation> trace, double alpha) {
  if (trace.empty()) throw Error(ErrorCode::EmptyTrace, "cannot select from an empty trace");
  std::size_t best = 0;
  double best_value = tradeoff_value(trace[0].accuracy, trace[0].sigma, alpha);
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const double v = tradeoff_value(trace[i].accuracy, trace[i].sigma, alpha);
    if (v > best_value || (v == best_value && trace[i].round < trace[best].round)) {
      best = i;
      best_value = v;
    }
  }
  return best;
}

std::pair<Configuration, double> select_final(std::span<const Observation> trace, double alpha) {
  const auto i = select_final_index(trace, alpha);
  return {trace[i].config, tradeoff_value(trace[i].accuracy, trace[i].sigma, alpha)};
}

RunResult run(const Objective& objective, const SearchSpace& space, const TradeoffSettings& settings,
              const RunHooks& hooks) {
  validate_space(space);
  validate_settings(settings);
  if (space.is_discrete() && space.cardinality() == 0) throw Error(ErrorCode::EmptySpace, "search space is empty");

  const auto now = [&] { return hooks.clock ? hooks.clock() : std::chrono::system_clock::now(); };
  RunResult result;
  result.settings = settings;
  auto& trace = result.trace;
  std::size_t emitted = 0;
  double t_ref = settings.t_ref.value_or(0.0);

  const auto emit_pending = [&] {
    for (; emitted < trace.size(); ++emitted) {
      if (hooks.on_observation) hooks.on_observation(trace[emitted], t_ref);
    }
  };
  const auto evaluate = [&](const Configuration& config) {
    Observation obs;
    obs.config = config;
    obs.round = trace.size() + 1;
    EvalOutcome out;
    try {
      out = objective(config, trace.size());
    } catch (const std::exception& e) {
      // Flush what we have so the persisted trace keeps every completed
      // evaluation. During "auto" initialization the reference is provisional.
      if (!settings.t_ref && !trace.empty()) {
        for (const auto& o : trace) t_ref = std::max(t_ref, o.seconds);
        for (auto& o : trace) o.sigma = normalize_time(o.seconds, t_ref);
      }
      if (t_ref > 0.0) emit_pending();
      throw Error(ErrorCode::ObjectiveFailure, "evaluation " + std::to_string(obs.round) + " failed: " + e.what());
    }
    obs.accuracy = std::clamp(out.accuracy, 0.0, 1.0);
    obs.seconds = out.seconds;
    obs.wall_clock = now();
    if (t_ref > 0.0) obs.sigma = normalize_time(obs.seconds, t_ref);
    trace.push_back(std::move(obs));
    if (t_ref > 0.0) emit_pending();
  };

  for (const auto& config : sobol_init(space, settings.init_count, settings.seed)) evaluate(config);

  if (!settings.t_ref) {
    for (const auto& o : trace) t_ref = std::max(t_ref, o.seconds);
    if (!(t_ref > 0.0)) throw Error(ErrorCode::NonPositiveReference, "initialization times are all zero");
    for (auto& o : trace) o.sigma = normalize_time(o.seconds, t_ref);
    emit_pending();
  }
  result.t_ref = t_ref;

  std::vector<UnitVector> inputs;
  std::vector<double> accuracies;
  std::vector<double> sigmas;
  std::vector<Configuration> evaluated;
  const auto absorb = [&](const Observation& o) {
    inputs.push_back(encode(space, o.config));
    accuracies.push_back(o.accuracy);
    sigmas.push_back(o.sigma);
    evaluated.push_back(o.config);
  };
  for (const auto& o : trace) absorb(o);

  while (trace.size() < settings.iterations) {
    const std::size_t round = trace.size() + 1;
    const auto vl = fit(inputs, accuracies, fit_seed(settings.seed, round, 0), hooks.fit_options);
    std::optional<GpSurrogate> vsigma;
    if (hooks.mode == AcquisitionMode::Tradeoff) {
      vsigma = fit(inputs, sigmas, fit_seed(settings.seed, round, 1), hooks.fit_options);
    }
    if (hooks.on_refit) hooks.on_refit(round, vl, vsigma ? &*vsigma : nullptr);

    const IncumbentState incumbent{*std::max_element(accuracies.begin(), accuracies.end()),
                                   *std::min_element(sigmas.begin(), sigmas.end())};
    const auto next =
        propose_next(vl, vsigma ? &*vsigma : nullptr, incumbent, space, evaluated, settings, round, hooks.mode);
    evaluate(next);
    absorb(trace.back());
  }

  const auto best = select_final_index(trace, settings.alpha);
  result.selected = trace[best].config;
  result.selected_tradeoff = tradeoff_value(trace[best].accuracy, trace[best].sigma, settings.alpha);
  return result;
}

}  // namespace tradeoff
