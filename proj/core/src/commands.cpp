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

#include "tradeoff/commands.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include "tradeoff/config.hpp"
#include "tradeoff/error.hpp"
#include "tradeoff/loop.hpp"
#include "tradeoff/trace.hpp"

namespace tradeoff {

namespace {

using nlohmann::ordered_json;

struct RunOutcome {
  std::optional<RunResult> result;
  std::string error;
};

// Runs one optimization, persisting every observation to `trace_path`.
RunOutcome execute(const RunConfig& config, const std::filesystem::path& trace_path, bool fixed_clock) {
  TraceWriter writer(trace_path);
  std::map<std::size_t, ordered_json> surrogates;
  RunHooks hooks;
  if (fixed_clock) hooks.clock = [] { return std::chrono::system_clock::time_point{}; };
  hooks.on_refit = [&](std::size_t round, const GpSurrogate& vl, const GpSurrogate* vsigma) {
    ordered_json s;
    s["accuracy"] = hyperparams_to_json(vl.hyperparams());
    if (vsigma) s["time"] = hyperparams_to_json(vsigma->hyperparams());
    surrogates[round] = std::move(s);
  };
  hooks.on_observation = [&](const Observation& obs, double t_ref) {
    const auto it = surrogates.find(obs.round);
    writer.write(observation_to_json(config.space, obs, t_ref, it == surrogates.end() ? ordered_json() : it->second));
  };

  RunOutcome outcome;
  try {
    auto result = run(make_objective(config), config.space, config.settings, hooks);
    ordered_json last;
    last["selected"] = configuration_to_json(config.space, result.selected);
    last["alpha"] = config.settings.alpha;
    last["tradeoff"] = result.selected_tradeoff;
    writer.write(last);
    outcome.result = std::move(result);
  } catch (const Error& e) {
    outcome.error = e.what();
  }
  return outcome;
}

const Observation& selected_observation(const RunResult& r) {
  return r.trace[select_final_index(r.trace, r.settings.alpha)];
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::filesystem::path sweep_trace_path(const std::filesystem::path& base, std::size_t index) {
  auto p = base;
  const auto ext = base.has_extension() ? base.extension().string() : std::string(".jsonl");
  p.replace_filename(base.stem().string() + ".alpha" + std::to_string(index) + ext);
  return p;
}

std::filesystem::path sweep_report_path(const std::filesystem::path& base) {
  auto p = base;
  p.replace_filename(base.stem().string() + ".sweep.csv");
  return p;
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = load_run_config(options.config_path);
    if (options.out) config.output_path = *options.out;
    if (options.seed) config.settings.seed = *options.seed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  RunOutcome outcome;
  try {
    outcome = execute(config, config.output_path, options.fixed_clock);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!outcome.result) {
    err << "error: " << outcome.error << "\n"
        << "partial trace kept in " << config.output_path.string() << "\n";
    return kExitRunFailure;
  }
  const auto& r = *outcome.result;
  const auto& best = selected_observation(r);
  out << "selected " << format_configuration(config.space, r.selected) << " accuracy=" << format_number(best.accuracy)
      << " seconds=" << format_number(best.seconds) << " sigma=" << format_number(best.sigma)
      << " tradeoff=" << format_number(r.selected_tradeoff) << " trace=" << config.output_path.string() << "\n";
  return kExitOk;
}

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
  if (options.alphas.empty()) {
    err << "error: at least one alpha is required\n";
    return kExitUsage;
  }
  RunConfig base;
  try {
    base = load_run_config(options.config_path);
    if (options.out) base.output_path = *options.out;
    for (double a : options.alphas) {
      if (!(a >= 0.0)) throw Error(ErrorCode::InvalidSettings, "alpha must be >= 0");
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::size_t count = options.alphas.size();
  std::vector<RunConfig> configs(count, base);
  for (std::size_t i = 0; i < count; ++i) {
    configs[i].settings.alpha = options.alphas[i];
    configs[i].settings.seed = base.settings.seed + i;
  }
  std::vector<RunOutcome> outcomes(count);
  const auto one = [&](std::size_t i) {
    try {
      return execute(configs[i], sweep_trace_path(base.output_path, i), options.fixed_clock);
    } catch (const Error& e) {
      return RunOutcome{std::nullopt, e.what()};
    }
  };
  if (options.parallel) {
    std::vector<std::future<RunOutcome>> pending;
    for (std::size_t i = 0; i < count; ++i) pending.push_back(std::async(std::launch::async, one, i));
    for (std::size_t i = 0; i < count; ++i) outcomes[i] = pending[i].get();
  } else {
    for (std::size_t i = 0; i < count; ++i) outcomes[i] = one(i);
  }

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return options.alphas[a] < options.alphas[b]; });

  std::ostringstream csv;
  csv << kSweepHeader << "\n";
  double sum_accuracy = 0.0;
  double sum_minutes = 0.0;
  std::size_t ok = 0;
  for (std::size_t i : order) {
    const auto& o = outcomes[i];
    csv << format_number(options.alphas[i]) << ",";
    if (!o.result) {
      err << "alpha " << format_number(options.alphas[i]) << " failed: " << o.error << "\n";
      csv << ",,,,,failed\n";
      continue;
    }
    const auto& best = selected_observation(*o.result);
    const double minutes = best.seconds / 60.0;
    csv << csv_field(format_configuration(configs[i].space, o.result->selected)) << ","
        << format_number(best.accuracy) << "," << format_number(minutes) << "," << format_number(best.sigma) << ","
        << format_number(o.result->selected_tradeoff) << ",ok\n";
    sum_accuracy += best.accuracy;
    sum_minutes += minutes;
    ++ok;
  }
  if (ok > 0) {
    csv << "mean,," << format_number(sum_accuracy / static_cast<double>(ok)) << ","
        << format_number(sum_minutes / static_cast<double>(ok)) << ",,,\n";
  }

  const auto report = sweep_report_path(base.output_path);
  std::ofstream file(report);
  file << csv.str();
  if (!file) {
    err << "error: cannot write " << report.string() << "\n";
    return kExitRunFailure;
  }
  out << csv.str();
  return ok == count ? kExitOk : kExitRunFailure;
}

int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream& err) {
  if (options.traces.empty()) {
    err << "error: at least one trace file is required\n";
    return kExitUsage;
  }
  struct Row {
    std::string trace;
    double accuracy, minutes, sigma, tradeoff;
  };
  std::vector<Row> rows;
  try {
    for (const auto& path : options.traces) {
      const auto file = read_trace(path);
      const auto observations = to_observations(file.records);
      const auto i = select_final_index(observations, options.alpha);
      const auto& o = observations[i];
      rows.push_back({path.string(), o.accuracy, o.seconds / 60.0, o.sigma,
                      tradeoff_value(o.accuracy, o.sigma, options.alpha)});
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Row mean{"mean", 0.0, 0.0, 0.0, 0.0};
  for (const auto& r : rows) {
    mean.accuracy += r.accuracy;
    mean.minutes += r.minutes;
    mean.sigma += r.sigma;
    mean.tradeoff += r.tradeoff;
  }
  const auto n = static_cast<double>(rows.size());
  mean.accuracy /= n;
  mean.minutes /= n;
  mean.sigma /= n;
  mean.tradeoff /= n;
  rows.push_back(mean);

  if (options.format == ReportFormat::Csv) {
    out << kReportHeader << "\n";
    for (const auto& r : rows) {
      out << format_number(options.alpha) << "," << csv_field(r.trace) << "," << format_number(r.accuracy) << ","
          << format_number(r.minutes) << "," << format_number(r.sigma) << "," << format_number(r.tradeoff) << "\n";
    }
    return kExitOk;
  }

  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.trace.size());
  const auto line = [&](const std::string& trace, const std::string& a, const std::string& m, const std::string& s,
                        const std::string& t) {
    out << std::left << std::setw(static_cast<int>(width)) << trace << "  " << std::right << std::setw(10) << a
        << std::setw(10) << m << std::setw(10) << s << std::setw(10) << t << "\n";
  };
  const auto fixed = [](double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << v;
    return os.str();
  };
  out << "alpha = " << format_number(options.alpha) << "\n";
  line("trace", "accuracy", "minutes", "sigma", "tradeoff");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i + 1 == rows.size()) out << std::string(width + 42, '-') << "\n";
    const auto& r = rows[i];
    line(r.trace, fixed(r.accuracy), fixed(r.minutes), fixed(r.sigma), fixed(r.tradeoff));
  }
  return kExitOk;
}

}  // namespace tradeoff
