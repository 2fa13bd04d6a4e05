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

#include "tradeoff/config.hpp"

#include <fstream>

#include "tradeoff/error.hpp"

namespace tradeoff {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ConfigParse, what); }

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) bad(where + ": missing \"" + key + "\"");
  return j.at(key);
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) bad(what + " must be a number");
  return j.get<double>();
}

std::int64_t integer(const json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + " must be an integer");
  return j.get<std::int64_t>();
}

std::size_t count(const json& j, const std::string& what) {
  const auto v = integer(j, what);
  if (v < 0) bad(what + " must be non-negative");
  return static_cast<std::size_t>(v);
}

std::uint64_t seed_of(const json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + " must be an integer");
  return j.is_number_unsigned() ? j.get<std::uint64_t>() : static_cast<std::uint64_t>(j.get<std::int64_t>());
}

ParamDomain parse_domain(const json& j, std::size_t index) {
  const std::string where = "space[" + std::to_string(index) + "]";
  if (!j.is_object()) bad(where + " must be an object");
  const auto& name = require(j, "name", where);
  const auto& kind = require(j, "kind", where);
  if (!name.is_string() || !kind.is_string()) bad(where + ": name and kind must be strings");
  const auto n = name.get<std::string>();
  const auto k = kind.get<std::string>();
  if (k == "continuous") {
    Scale scale = Scale::Linear;
    if (j.contains("scale")) {
      const auto s = j["scale"].is_string() ? j["scale"].get<std::string>() : "";
      if (s == "log") {
        scale = Scale::Log;
      } else if (s != "linear") {
        bad(where + ": scale must be \"linear\" or \"log\"");
      }
    }
    return ParamDomain::continuous(n, number(require(j, "lo", where), where + ".lo"),
                                   number(require(j, "hi", where), where + ".hi"), scale);
  }
  if (k == "integer") {
    return ParamDomain::integer(n, integer(require(j, "lo", where), where + ".lo"),
                                integer(require(j, "hi", where), where + ".hi"));
  }
  if (k == "categorical") {
    const auto& labels = require(j, "labels", where);
    if (!labels.is_array()) bad(where + ".labels must be an array");
    std::vector<std::string> out;
    for (const auto& l : labels) {
      if (!l.is_string()) bad(where + ".labels must hold strings");
      out.push_back(l.get<std::string>());
    }
    return ParamDomain::categorical(n, std::move(out));
  }
  if (k == "fraction") {
    const auto& values = require(j, "values", where);
    if (!values.is_array()) bad(where + ".values must be an array");
    std::vector<double> out;
    for (const auto& v : values) out.push_back(number(v, where + ".values[]"));
    return ParamDomain::fraction(n, std::move(out));
  }
  bad(where + ": unknown kind \"" + k + "\"");
}

TradeoffSettings parse_settings(const json& j) {
  TradeoffSettings s;
  if (j.is_null()) return s;
  if (!j.is_object()) bad("settings must be an object");
  if (j.contains("alpha")) s.alpha = number(j["alpha"], "settings.alpha");
  if (j.contains("iterations")) s.iterations = count(j["iterations"], "settings.iterations");
  if (j.contains("init_count")) s.init_count = count(j["init_count"], "settings.init_count");
  if (j.contains("candidate_max")) s.candidate_max = count(j["candidate_max"], "settings.candidate_max");
  if (j.contains("seed")) s.seed = seed_of(j["seed"], "settings.seed");
  if (j.contains("t_ref")) {
    const auto& t = j["t_ref"];
    if (t.is_string()) {
      if (t.get<std::string>() != "auto") bad("settings.t_ref must be \"auto\" or a positive number");
    } else {
      s.t_ref = number(t, "settings.t_ref");
    }
  }
  return s;
}

}  // namespace

SearchSpace parse_space(const json& j) {
  if (!j.is_array()) bad("space must be an array of domain objects");
  std::vector<ParamDomain> dims;
  for (std::size_t i = 0; i < j.size(); ++i) dims.push_back(parse_domain(j[i], i));
  SearchSpace space(std::move(dims));
  validate_space(space);
  return space;
}

json space_to_json(const SearchSpace& space) {
  json out = json::array();
  for (const auto& d : space.dims()) {
    json o;
    o["name"] = d.name;
    if (const auto* c = std::get_if<ContinuousDomain>(&d.kind)) {
      o["kind"] = "continuous";
      o["lo"] = c->lo;
      o["hi"] = c->hi;
      o["scale"] = c->scale == Scale::Log ? "log" : "linear";
    } else if (const auto* i = std::get_if<IntegerDomain>(&d.kind)) {
      o["kind"] = "integer";
      o["lo"] = i->lo;
      o["hi"] = i->hi;
    } else if (const auto* c = std::get_if<CategoricalDomain>(&d.kind)) {
      o["kind"] = "categorical";
      o["labels"] = c->labels;
    } else {
      o["kind"] = "fraction";
      o["values"] = std::get<FractionDomain>(d.kind).values;
    }
    out.push_back(std::move(o));
  }
  return out;
}

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) bad("config must be a JSON object");
  RunConfig config;

  const auto& objective = require(j, "objective", "config");
  if (!objective.is_object() || objective.size() != 1) {
    bad("objective must hold exactly one of \"synthetic\" or \"external\"");
  }
  if (objective.contains("synthetic")) {
    const auto& s = objective["synthetic"];
    SynthSpec spec;
    const auto& name = require(s, "name", "objective.synthetic");
    if (!name.is_string()) bad("objective.synthetic.name must be a string");
    spec.name = name.get<std::string>();
    if (s.contains("noise_std")) spec.noise_std = number(s["noise_std"], "objective.synthetic.noise_std");
    if (!(spec.noise_std >= 0.0)) bad("objective.synthetic.noise_std must be >= 0");
    if (s.contains("seed")) spec.seed = seed_of(s["seed"], "objective.synthetic.seed");
    config.space = synthetic_space(spec.name);
    if (j.contains("space")) {
      auto declared = parse_space(j["space"]);
      if (space_to_json(declared) != space_to_json(config.space)) {
        bad("space does not match the \"" + spec.name + "\" benchmark's space");
      }
    }
    config.objective = std::move(spec);
  } else if (objective.contains("external")) {
    const auto& e = objective["external"];
    ExternalTrainer trainer;
    const auto& cmd = require(e, "command", "objective.external");
    if (!cmd.is_array() || cmd.empty()) bad("objective.external.command must be a non-empty array");
    for (const auto& a : cmd) {
      if (!a.is_string()) bad("objective.external.command must hold strings");
      trainer.command.push_back(a.get<std::string>());
    }
    if (e.contains("timeout")) {
      const double t = number(e["timeout"], "objective.external.timeout");
      if (!(t > 0.0)) bad("objective.external.timeout must be positive");
      trainer.timeout = std::chrono::duration<double>(t);
    }
    config.space = parse_space(require(j, "space", "config"));
    config.objective = std::move(trainer);
  } else {
    bad("objective must hold exactly one of \"synthetic\" or \"external\"");
  }

  config.settings = parse_settings(j.contains("settings") ? j["settings"] : json());
  validate_settings(config.settings);
  if (j.contains("output")) {
    if (!j["output"].is_string()) bad("output must be a path string");
    config.output_path = j["output"].get<std::string>();
  }
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read config file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
  return parse_run_config(j);
}

Objective make_objective(const RunConfig& config) {
  if (const auto* spec = std::get_if<SynthSpec>(&config.objective)) {
    return [spec = *spec](const Configuration& c, std::size_t index) { return eval_synthetic(spec, c, index); };
  }
  const auto& trainer = std::get<ExternalTrainer>(config.objective);
  return [trainer, space = config.space, seed = config.settings.seed](const Configuration& c, std::size_t) {
    return eval_external(trainer.command, c, space, trainer.timeout, seed);
  };
}

}  // namespace tradeoff
