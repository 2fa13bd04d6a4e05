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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tradeoff {

/// Process exit codes shared by all subcommands.
enum ExitCode : int { kExitOk = 0, kExitRunFailure = 1, kExitUsage = 2 };

struct RunOptions {
  std::filesystem::path config_path;
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  /// Stamp every record with the Unix epoch instead of the wall clock.
  bool fixed_clock = false;
};

struct SweepOptions {
  std::filesystem::path config_path;
  std::vector<double> alphas = {0.1, 0.3, 0.5, 0.7, 0.9};
  std::optional<std::filesystem::path> out;
  bool parallel = false;
  bool fixed_clock = false;
};

enum class ReportFormat { Csv, Table };

struct ReportOptions {
  std::vector<std::filesystem::path> traces;
  double alpha = 0.0;
  ReportFormat format = ReportFormat::Csv;
};

/// Per-alpha trace path used by sweeps: "<stem>.alpha<index><ext>".
std::filesystem::path sweep_trace_path(const std::filesystem::path& base, std::size_t index);
/// Sweep summary CSV path: "<stem>.sweep.csv".
std::filesystem::path sweep_report_path(const std::filesystem::path& base);

inline constexpr const char* kReportHeader = "alpha,trace,accuracy,minutes,sigma,tradeoff";
inline constexpr const char* kSweepHeader = "alpha,config,accuracy,minutes,sigma,tradeoff,status";

/// Shortest decimal representation that round-trips.
std::string format_number(double v);

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);
int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream& err);

}  // namespace tradeoff
