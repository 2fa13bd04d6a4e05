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

// tradeoff-bo: accuracy/training-time tradeoff hyperparameter optimization.
//
//   tradeoff-bo run --config run.json [--out trace.jsonl] [--seed 7]
//   tradeoff-bo sweep --config run.json --alphas 0.1,0.3,0.5,0.7,0.9
//   tradeoff-bo report trace1.jsonl trace2.jsonl --alpha 0.5 [--format csv|table]

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "tradeoff/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Bayesian optimization of the accuracy / training-time tradeoff"};
  app.require_subcommand(1);

  tradeoff::RunOptions run;
  std::string run_out;
  std::uint64_t run_seed = 0;
  auto* run_cmd = app.add_subcommand("run", "Optimize once and write a JSON-lines trace");
  run_cmd->add_option("--config", run.config_path, "Run configuration (JSON)")->required();
  auto* run_out_opt = run_cmd->add_option("--out", run_out, "Trace path (overrides the config)");
  auto* run_seed_opt = run_cmd->add_option("--seed", run_seed, "Seed (overrides the config)");
  run_cmd->add_flag("--fixed-clock", run.fixed_clock, "Stamp records with the Unix epoch (reproducible traces)");

  tradeoff::SweepOptions sweep;
  std::string sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Optimize once per alpha and summarize");
  sweep_cmd->add_option("--config", sweep.config_path, "Run configuration (JSON)")->required();
  sweep_cmd->add_option("--alphas", sweep.alphas, "Comma-separated tradeoff weights")
      ->delimiter(',')
      ->capture_default_str();
  auto* sweep_out_opt = sweep_cmd->add_option("--out", sweep_out, "Base trace path (overrides the config)");
  sweep_cmd->add_flag("--parallel", sweep.parallel, "Run the alphas concurrently");
  sweep_cmd->add_flag("--fixed-clock", sweep.fixed_clock, "Stamp records with the Unix epoch");

  tradeoff::ReportOptions report;
  std::vector<std::string> report_traces;
  std::string report_format = "csv";
  auto* report_cmd = app.add_subcommand("report", "Re-select each trace at a given alpha");
  report_cmd->add_option("traces", report_traces, "Trace files")->required();
  report_cmd->add_option("--alpha", report.alpha, "Tradeoff weight")->required();
  report_cmd->add_option("--format", report_format, "Output format")
      ->check(CLI::IsMember({"csv", "table"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : tradeoff::kExitUsage;
  }

  if (*run_cmd) {
    if (*run_out_opt) run.out = run_out;
    if (*run_seed_opt) run.seed = run_seed;
    return tradeoff::cmd_run(run, std::cout, std::cerr);
  }
  if (*sweep_cmd) {
    if (*sweep_out_opt) sweep.out = sweep_out;
    return tradeoff::cmd_sweep(sweep, std::cout, std::cerr);
  }
  for (const auto& t : report_traces) report.traces.emplace_back(t);
  report.format = report_format == "table" ? tradeoff::ReportFormat::Table : tradeoff::ReportFormat::Csv;
  return tradeoff::cmd_report(report, std::cout, std::cerr);
}
