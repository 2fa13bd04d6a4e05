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

#include "tradeoff/trace.hpp"

#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <ctime>
#include <fstream>

#include "tradeoff/error.hpp"

namespace tradeoff {

using nlohmann::ordered_json;

std::string format_timestamp(std::chrono::system_clock::time_point t) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
  std::time_t secs = static_cast<std::time_t>(ms / 1000);
  int millis = static_cast<int>(ms % 1000);
  if (millis < 0) {
    millis += 1000;
    --secs;
  }
  std::tm tm{};
  ::gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, millis);
  return buf;
}

ordered_json configuration_to_json(const SearchSpace& space, const Configuration& config) {
  ordered_json out = ordered_json::object();
  for (std::size_t i = 0; i < config.values.size() && i < space.size(); ++i) {
    std::visit([&](const auto& v) { out[space.dims()[i].name] = v; }, config.values[i]);
  }
  return out;
}

ordered_json hyperparams_to_json(const GpHyperparams& hp) {
  ordered_json out;
  out["length_scales"] = hp.length_scales;
  out["signal_variance"] = hp.signal_variance;
  out["noise_variance"] = hp.noise_variance;
  return out;
}

ordered_json observation_to_json(const SearchSpace& space, const Observation& obs, double t_ref,
                                 const ordered_json& surrogates) {
  ordered_json out;
  out["round"] = obs.round;
  out["config"] = configuration_to_json(space, obs.config);
  out["accuracy"] = obs.accuracy;
  out["seconds"] = obs.seconds;
  out["sigma"] = obs.sigma;
  out["t_ref"] = t_ref;
  out["timestamp"] = format_timestamp(obs.wall_clock);
  if (!surrogates.is_null()) out["surrogates"] = surrogates;
  return out;
}

TraceWriter::TraceWriter(const std::filesystem::path& path) : path_(path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  file_ = std::fopen(path.c_str(), "w");
  if (!file_) {
    throw Error(ErrorCode::ConfigParse, "cannot open trace file " + path.string() + ": " + std::strerror(errno));
  }
}

TraceWriter::~TraceWriter() {
  if (file_) std::fclose(file_);
}

void TraceWriter::write(const ordered_json& record) {
  const std::string line = record.dump() + "\n";
  if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() || std::fflush(file_) != 0) {
    throw Error(ErrorCode::TraceParse, "failed writing " + path_.string());
  }
  ::fsync(::fileno(file_));
}

namespace {

[[noreturn]] void bad(const std::filesystem::path& path, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::TraceParse, path.string() + ":" + std::to_string(line) + ": " + what);
}

double real_field(const ordered_json& j, const char* key, const std::filesystem::path& path, std::size_t line) {
  if (!j.contains(key) || !j[key].is_number()) bad(path, line, std::string("missing numeric \"") + key + "\"");
  return j[key].get<double>();
}

}  // namespace

TraceFile read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::TraceParse, "cannot read trace file " + path.string());
  TraceFile out;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
      bad(path, line_no, e.what());
    }
    if (!j.is_object()) bad(path, line_no, "record is not an object");
    if (j.contains("selected")) {
      out.selection = TraceSelection{j["selected"], real_field(j, "alpha", path, line_no),
                                     real_field(j, "tradeoff", path, line_no)};
      continue;
    }
    if (!j.contains("round") || !j["round"].is_number_unsigned()) bad(path, line_no, "missing \"round\"");
    if (!j.contains("config") || !j["config"].is_object()) bad(path, line_no, "missing \"config\" object");
    TraceRecord r;
    r.round = j["round"].get<std::size_t>();
    r.config = j["config"];
    r.accuracy = real_field(j, "accuracy", path, line_no);
    r.seconds = real_field(j, "seconds", path, line_no);
    r.sigma = real_field(j, "sigma", path, line_no);
    r.t_ref = real_field(j, "t_ref", path, line_no);
    out.records.push_back(std::move(r));
  }
  return out;
}

std::vector<Observation> to_observations(const std::vector<TraceRecord>& records) {
  std::vector<Observation> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    Observation o;
    for (const auto& [key, value] : r.config.items()) {
      if (value.is_string()) {
        o.config.values.emplace_back(value.get<std::string>());
      } else if (value.is_number_integer()) {
        o.config.values.emplace_back(value.get<std::int64_t>());
      } else {
        o.config.values.emplace_back(value.get<double>());
      }
    }
    o.accuracy = r.accuracy;
    o.seconds = r.seconds;
    o.sigma = r.sigma;
    o.round = r.round;
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace tradeoff
