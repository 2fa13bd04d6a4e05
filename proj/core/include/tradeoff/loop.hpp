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

#include <chrono>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tradeoff/acquisition.hpp"
#include "tradeoff/objectives.hpp"
#include "tradeoff/space.hpp"

namespace tradeoff {

struct Observation {
  Configuration config;
  double accuracy = 0.0;  // L
  double seconds = 0.0;   // raw t
  double sigma = 0.0;     // normalized t
  std::size_t round = 0;  // 1-based evaluation number
  std::chrono::system_clock::time_point wall_clock{};
};

struct RunResult {
  std::vector<Observation> trace;
  Configuration selected;
  double selected_tradeoff = 0.0;
  double t_ref = 0.0;
  TradeoffSettings settings;
};

/// clamp(t / t_ref, 0, 1). Throws Error(NonPositiveReference) if t_ref <= 0.
double normalize_time(double seconds, double t_ref);

/// T_alpha = L - alpha * sigma.
inline double tradeoff_value(double accuracy, double sigma, double alpha) { return accuracy - alpha * sigma; }

/// Observation with maximal T_alpha, earliest round on ties.
/// Returns its index in `trace`. Throws Error(EmptyTrace).
std::size_t select_final_index(std::span<const Observation> trace, double alpha);

std::pair<Configuration, double> select_final(std::span<const Observation> trace, double alpha);

struct RunHooks {
  /// Called once per observation, in round order, as soon as its sigma is
  /// known (immediately with a fixed t_ref, after initialization with "auto").
  std::function<void(const Observation&, double t_ref)> on_observation;
  /// Timestamp source; defaults to the system clock.
  std::function<std::chrono::system_clock::time_point()> clock;
  /// Called after each surrogate refit with (round, accuracy model, time model).
  /// The time model is null in AccuracyOnly mode.
  std::function<void(std::size_t, const GpSurrogate&, const GpSurrogate*)> on_refit;
  AcquisitionMode mode = AcquisitionMode::Tradeoff;
  FitOptions fit_options;
};

/// Bayesian optimization of T_alpha: Sobol initialization, then one
/// surrogate-guided proposal per round until settings.iterations evaluations.
///
/// Objective exceptions abort the run with Error(ObjectiveFailure); every
/// observation completed before the failure has already been reported through
/// hooks.on_observation.
RunResult run(const Objective& objective, const SearchSpace& space, const TradeoffSettings& settings,
              const RunHooks& hooks = {});

}  // namespace tradeoff
