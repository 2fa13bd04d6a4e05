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
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tradeoff/space.hpp"

namespace tradeoff {

struct EvalOutcome {
  double accuracy = 0.0;  // clamped to [0, 1]
  double seconds = 0.0;   // > 0
};

/// Evaluation callback used by the optimization loop. `eval_index` counts
/// evaluations from 0 within a run.
using Objective = std::function<EvalOutcome(const Configuration&, std::size_t eval_index)>;

struct SynthSpec {
  std::string name;
  double noise_std = 0.0;
  std::uint64_t seed = 0;
};

/// Names of the built-in synthetic surfaces: "saturating", "discrete-grid".
std::vector<std::string> synthetic_benchmarks();

/// Search space each synthetic surface is defined over.
/// Throws Error(UnknownBenchmark).
SearchSpace synthetic_space(const std::string& name);

/// One row of the "discrete-grid" table.
struct GridEntry {
  double fraction;
  std::string model;
  double accuracy;
  double seconds;
};
const std::vector<GridEntry>& discrete_grid_table();

/// Evaluates a synthetic surface. Values are looked up by dimension name, so
/// `config` must be ordered like synthetic_space(spec.name). Noise is drawn
/// from a counter-based generator keyed by (spec.seed, eval_index).
EvalOutcome eval_synthetic(const SynthSpec& spec, const Configuration& config, std::size_t eval_index);

/// Request line sent to an external trainer.
std::string trainer_request(const SearchSpace& space, const Configuration& config, std::uint64_t seed);

/// Runs one external training job: spawns `command`, writes one JSON request
/// line to its stdin, reads one JSON response line from its stdout. The whole
/// process group is killed on timeout or once the response has been read and
/// the trainer does not exit within the remaining budget.
EvalOutcome eval_external(const std::vector<std::string>& command, const Configuration& config,
                          const SearchSpace& space, std::chrono::duration<double> timeout, std::uint64_t seed = 0);

/// First ceil(fraction * n) entries of a seeded permutation of 0..n-1.
/// Prefixes nest: a smaller fraction is always a prefix of a larger one.
std::vector<std::size_t> subsample_indices(std::size_t n, double fraction, std::uint64_t seed);

/// SplitMix64 finalizer; exposed for counter-based streams.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace tradeoff
