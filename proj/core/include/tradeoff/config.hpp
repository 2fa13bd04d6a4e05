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
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <variant>
#include <vector>

#include "tradeoff/acquisition.hpp"
#include "tradeoff/objectives.hpp"
#include "tradeoff/space.hpp"

namespace tradeoff {

struct ExternalTrainer {
  std::vector<std::string> command;
  std::chrono::duration<double> timeout{3600.0};
};

/// A run configuration file:
///
///   {
///     "space": [ {"name": "lr", "kind": "continuous", "lo": 1e-4, "hi": 1, "scale": "log"},
///                {"name": "layers", "kind": "integer", "lo": 1, "hi": 4},
///                {"name": "opt", "kind": "categorical", "labels": ["sgd", "adam"]},
///                {"name": "train_fraction", "kind": "fraction", "values": [0.2, 0.4, 0.6, 0.8, 1.0]} ],
///     "objective": {"synthetic": {"name": "saturating", "noise_std": 0.01, "seed": 7}}
///               or {"external": {"command": ["python3", "train.py"], "timeout": 600}},
///     "settings": {"alpha": 0.5, "iterations": 20, "init_count": 3,
///                  "candidate_max": 4096, "seed": 0, "t_ref": "auto"},
///     "output": "trace.jsonl"
///   }
///
/// "space" may be omitted for synthetic objectives (the benchmark's own space
/// is used); settings fields fall back to the defaults shown.
struct RunConfig {
  SearchSpace space;
  std::variant<SynthSpec, ExternalTrainer> objective;
  TradeoffSettings settings;
  std::filesystem::path output_path = "trace.jsonl";
};

/// Throws Error(ConfigParse) on malformed input and the space/settings error
/// codes when the declared values violate their invariants.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

SearchSpace parse_space(const nlohmann::json& j);
nlohmann::json space_to_json(const SearchSpace& space);

/// Objective callback for the configured backend.
Objective make_objective(const RunConfig& config);

}  // namespace tradeoff
