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
#include <cstdio>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "tradeoff/loop.hpp"
#include "tradeoff/space.hpp"

namespace tradeoff {

/// ISO-8601 UTC timestamp with millisecond precision.
std::string format_timestamp(std::chrono::system_clock::time_point t);

nlohmann::ordered_json configuration_to_json(const SearchSpace& space, const Configuration& config);

/// Observation record: {"round","config","accuracy","seconds","sigma","t_ref","timestamp"}.
/// `surrogates`, when non-null, is appended under the key "surrogates".
nlohmann::ordered_json observation_to_json(const SearchSpace& space, const Observation& obs, double t_ref,
                                           const nlohmann::ordered_json& surrogates = nullptr);

nlohmann::ordered_json hyperparams_to_json(const GpHyperparams& hp);

/// Append-only JSON-lines trace file. Every record is flushed and synced to
/// disk before the call returns, so a crash leaves a valid prefix.
class TraceWriter {
 public:
  explicit TraceWriter(const std::filesystem::path& path);
  TraceWriter(const TraceWriter&) = delete;
  TraceWriter& operator=(const TraceWriter&) = delete;
  ~TraceWriter();

  void write(const nlohmann::ordered_json& record);

 private:
  std::FILE* file_ = nullptr;
  std::filesystem::path path_;
};

/// One observation as read back from a trace file. The configuration keeps
/// its JSON form since a trace does not carry its search space.
struct TraceRecord {
  std::size_t round = 0;
  nlohmann::ordered_json config;
  double accuracy = 0.0;
  double seconds = 0.0;
  double sigma = 0.0;
  double t_ref = 0.0;
};

struct TraceSelection {
  nlohmann::ordered_json selected;
  double alpha = 0.0;
  double tradeoff = 0.0;
};

struct TraceFile {
  std::vector<TraceRecord> records;
  std::optional<TraceSelection> selection;
};

/// Throws Error(TraceParse) on unreadable files or malformed lines.
TraceFile read_trace(const std::filesystem::path& path);

/// Converts records to Observations (config values typed from their JSON form)
/// so select_final can be applied.
std::vector<Observation> to_observations(const std::vector<TraceRecord>& records);

}  // namespace tradeoff
