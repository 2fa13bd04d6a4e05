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

#include "tradeoff/space.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "tradeoff/error.hpp"
#include "tradeoff/sobol.hpp"

namespace tradeoff {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void fail(ErrorCode code, const ParamDomain& dim, const std::string& what) {
  throw Error(code, "dimension '" + dim.name + "': " + what);
}

double to_unit(double v, double lo, double hi) { return (v - lo) / (hi - lo); }

std::size_t nearest_rank(double u, std::size_t count) {
  if (count <= 1) return 0;
  const double r = std::round(std::clamp(u, 0.0, 1.0) * static_cast<double>(count - 1));
  return std::min(static_cast<std::size_t>(r), count - 1);
}

}  // namespace

ParamDomain ParamDomain::continuous(std::string name, double lo, double hi, Scale scale) {
  return {std::move(name), ContinuousDomain{lo, hi, scale}};
}
ParamDomain ParamDomain::integer(std::string name, std::int64_t lo, std::int64_t hi) {
  return {std::move(name), IntegerDomain{lo, hi}};
}
ParamDomain ParamDomain::categorical(std::string name, std::vector<std::string> labels) {
  return {std::move(name), CategoricalDomain{std::move(labels)}};
}
ParamDomain ParamDomain::fraction(std::string name, std::vector<double> values) {
  return {std::move(name), FractionDomain{std::move(values)}};
}

std::size_t ParamDomain::encoded_width() const noexcept {
  if (const auto* c = std::get_if<CategoricalDomain>(&kind)) return c->labels.size();
  return 1;
}

std::size_t ParamDomain::cardinality() const noexcept {
  return std::visit(overloaded{
                        [](const ContinuousDomain&) -> std::size_t { return 0; },
                        [](const IntegerDomain& d) -> std::size_t {
                          return d.hi < d.lo ? 0 : static_cast<std::size_t>(d.hi - d.lo) + 1;
                        },
                        [](const CategoricalDomain& d) { return d.labels.size(); },
                        [](const FractionDomain& d) { return d.values.size(); },
                    },
                    kind);
}

SearchSpace::SearchSpace(std::vector<ParamDomain> dims) : dims_(std::move(dims)) {
  for (const auto& d : dims_) encoded_width_ += d.encoded_width();
}

std::size_t SearchSpace::index_of(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i].name == name) return i;
  }
  return dims_.size();
}

bool SearchSpace::is_discrete() const noexcept {
  return std::none_of(dims_.begin(), dims_.end(), [](const auto& d) { return d.is_continuous(); });
}

std::size_t SearchSpace::cardinality() const noexcept {
  if (!is_discrete() || dims_.empty()) return 0;
  std::size_t total = 1;
  for (const auto& d : dims_) {
    const std::size_t c = d.cardinality();
    if (c != 0 && total > std::numeric_limits<std::size_t>::max() / c) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= c;
  }
  return total;
}

void validate_space(const SearchSpace& space) {
  if (space.size() == 0) throw Error(ErrorCode::EmptySpace, "search space has no dimensions");
  std::set<std::string> names;
  for (const auto& dim : space.dims()) {
    if (dim.name.empty()) fail(ErrorCode::BadBounds, dim, "empty name");
    if (!names.insert(dim.name).second) fail(ErrorCode::DuplicateName, dim, "name used twice");
    std::visit(overloaded{
                   [&](const ContinuousDomain& d) {
                     if (!std::isfinite(d.lo) || !std::isfinite(d.hi) || !(d.lo < d.hi)) {
                       fail(ErrorCode::BadBounds, dim, "requires finite lo < hi");
                     }
                     if (d.scale == Scale::Log && d.lo <= 0.0) {
                       fail(ErrorCode::LogScaleNonPositive, dim, "log scale requires lo > 0");
                     }
                   },
                   [&](const IntegerDomain& d) {
                     if (!(d.lo < d.hi)) fail(ErrorCode::BadBounds, dim, "requires lo < hi");
                   },
                   [&](const CategoricalDomain& d) {
                     if (d.labels.empty()) fail(ErrorCode::EmptyDomain, dim, "no labels");
                     std::set<std::string> seen(d.labels.begin(), d.labels.end());
                     if (seen.size() != d.labels.size()) fail(ErrorCode::BadBounds, dim, "duplicate labels");
                     if (d.labels.size() < 2) fail(ErrorCode::BadBounds, dim, "needs at least two labels");
                   },
                   [&](const FractionDomain& d) {
                     if (d.values.empty()) fail(ErrorCode::EmptyDomain, dim, "no fraction values");
                     for (std::size_t i = 0; i < d.values.size(); ++i) {
                       const double v = d.values[i];
                       if (!(v > 0.0) || !(v <= 1.0)) fail(ErrorCode::BadBounds, dim, "fractions must lie in (0, 1]");
                       if (i > 0 && !(d.values[i - 1] < v)) {
                         fail(ErrorCode::BadBounds, dim, "fractions must be strictly increasing");
                       }
                     }
                   },
               },
               dim.kind);
  }
}

void validate_configuration(const SearchSpace& space, const Configuration& config) {
  if (config.values.size() != space.size()) {
    throw Error(ErrorCode::OutOfDomain, "configuration has " + std::to_string(config.values.size()) +
                                            " values, space has " + std::to_string(space.size()) + " dimensions");
  }
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto& dim = space.dims()[i];
    const auto& value = config.values[i];
    const bool ok = std::visit(
        overloaded{
            [&](const ContinuousDomain& d) {
              const auto* v = std::get_if<double>(&value);
              return v && *v >= d.lo && *v <= d.hi;
            },
            [&](const IntegerDomain& d) {
              const auto* v = std::get_if<std::int64_t>(&value);
              return v && *v >= d.lo && *v <= d.hi;
            },
            [&](const CategoricalDomain& d) {
              const auto* v = std::get_if<std::string>(&value);
              return v && std::find(d.labels.begin(), d.labels.end(), *v) != d.labels.end();
            },
            [&](const FractionDomain& d) {
              const auto* v = std::get_if<double>(&value);
              return v && std::find(d.values.begin(), d.values.end(), *v) != d.values.end();
            },
        },
        dim.kind);
    if (!ok) fail(ErrorCode::OutOfDomain, dim, "value " + format_value(value) + " outside domain");
  }
}

UnitVector encode(const SearchSpace& space, const Configuration& config) {
  validate_configuration(space, config);
  UnitVector u;
  u.reserve(space.encoded_width());
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto& value = config.values[i];
    std::visit(overloaded{
                   [&](const ContinuousDomain& d) {
                     const double v = std::get<double>(value);
                     const double x = d.scale == Scale::Log ? to_unit(std::log(v), std::log(d.lo), std::log(d.hi))
                                                            : to_unit(v, d.lo, d.hi);
                     u.push_back(std::clamp(x, 0.0, 1.0));
                   },
                   [&](const IntegerDomain& d) {
                     const auto v = std::get<std::int64_t>(value);
                     u.push_back(static_cast<double>(v - d.lo) / static_cast<double>(d.hi - d.lo));
                   },
                   [&](const CategoricalDomain& d) {
                     const auto& v = std::get<std::string>(value);
                     for (const auto& label : d.labels) u.push_back(label == v ? 1.0 : 0.0);
                   },
                   [&](const FractionDomain& d) {
                     const double v = std::get<double>(value);
                     if (d.values.size() == 1) {
                       u.push_back(0.5);
                       return;
                     }
                     const auto rank = std::find(d.values.begin(), d.values.end(), v) - d.values.begin();
                     u.push_back(static_cast<double>(rank) / static_cast<double>(d.values.size() - 1));
                   },
               },
               space.dims()[i].kind);
  }
  return u;
}

Configuration decode(const SearchSpace& space, std::span<const double> u) {
  if (u.size() != space.encoded_width()) {
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(space.encoded_width()) +
                                               " coordinates, got " + std::to_string(u.size()));
  }
  Configuration config;
  config.values.reserve(space.size());
  std::size_t pos = 0;
  for (const auto& dim : space.dims()) {
    std::visit(overloaded{
                   [&](const ContinuousDomain& d) {
                     const double x = std::clamp(u[pos++], 0.0, 1.0);
                     double v = d.scale == Scale::Log
                                    ? std::exp(std::log(d.lo) + x * (std::log(d.hi) - std::log(d.lo)))
                                    : d.lo + x * (d.hi - d.lo);
                     config.values.emplace_back(std::clamp(v, d.lo, d.hi));
                   },
                   [&](const IntegerDomain& d) {
                     const double x = std::clamp(u[pos++], 0.0, 1.0);
                     const auto offset = static_cast<std::int64_t>(std::llround(x * static_cast<double>(d.hi - d.lo)));
                     config.values.emplace_back(std::clamp(d.lo + offset, d.lo, d.hi));
                   },
                   [&](const CategoricalDomain& d) {
                     std::size_t best = 0;
                     for (std::size_t j = 1; j < d.labels.size(); ++j) {
                       if (u[pos + j] > u[pos + best]) best = j;
                     }
                     pos += d.labels.size();
                     config.values.emplace_back(d.labels[best]);
                   },
                   [&](const FractionDomain& d) {
                     config.values.emplace_back(d.values[nearest_rank(u[pos++], d.values.size())]);
                   },
               },
               dim.kind);
  }
  return config;
}

std::vector<Configuration> sobol_init(const SearchSpace& space, std::size_t k, std::uint64_t /*seed*/) {
  validate_space(space);
  if (k == 0) throw Error(ErrorCode::InvalidSettings, "sobol_init requires k >= 1");
  SobolSequence sobol(space.encoded_width());
  std::vector<Configuration> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(decode(space, sobol.next()));
  return out;
}

namespace {

std::vector<Configuration> enumerate(const SearchSpace& space) {
  std::vector<std::vector<ParamValue>> choices;
  for (const auto& dim : space.dims()) {
    std::vector<ParamValue> values;
    std::visit(overloaded{
                   [](const ContinuousDomain&) {},
                   [&](const IntegerDomain& d) {
                     for (auto v = d.lo; v <= d.hi; ++v) values.emplace_back(v);
                   },
                   [&](const CategoricalDomain& d) {
                     for (const auto& l : d.labels) values.emplace_back(l);
                   },
                   [&](const FractionDomain& d) {
                     for (double v : d.values) values.emplace_back(v);
                   },
               },
               dim.kind);
    choices.push_back(std::move(values));
  }
  std::vector<Configuration> out;
  std::vector<std::size_t> idx(choices.size(), 0);
  while (true) {
    Configuration c;
    for (std::size_t i = 0; i < choices.size(); ++i) c.values.push_back(choices[i][idx[i]]);
    out.push_back(std::move(c));
    // Odometer with the last dimension varying fastest.
    std::size_t i = choices.size();
    while (i > 0) {
      --i;
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
  }
}

}  // namespace

std::vector<Configuration> candidate_pool(const SearchSpace& space, std::size_t n_max, std::uint64_t seed) {
  validate_space(space);
  if (n_max == 0) throw Error(ErrorCode::InvalidSettings, "candidate_pool requires n_max >= 1");
  if (space.is_discrete() && space.cardinality() <= n_max) return enumerate(space);

  const std::size_t width = space.encoded_width();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> shift(width);
  for (auto& s : shift) s = unif(rng);

  SobolSequence sobol(width);
  std::set<Configuration> seen;
  std::vector<Configuration> out;
  out.reserve(n_max);
  // Discrete spaces larger than n_max may decode several points to the same
  // configuration; keep drawing, bounded so pathological spaces terminate.
  const std::uint64_t max_draws = 64 * static_cast<std::uint64_t>(n_max) + 1024;
  for (std::uint64_t draw = 0; draw < max_draws && out.size() < n_max; ++draw) {
    auto point = sobol.next();
    for (std::size_t d = 0; d < width; ++d) {
      double x = point[d] + shift[d];
      point[d] = x >= 1.0 ? x - 1.0 : x;
    }
    auto config = decode(space, point);
    if (seen.insert(config).second) out.push_back(std::move(config));
  }
  return out;
}

std::string format_value(const ParamValue& value) {
  return std::visit(overloaded{
                        [](double v) {
                          std::ostringstream os;
                          os << std::setprecision(6) << v;
                          return os.str();
                        },
                        [](std::int64_t v) { return std::to_string(v); },
                        [](const std::string& v) { return v; },
                    },
                    value);
}

std::string format_configuration(const SearchSpace& space, const Configuration& config) {
  std::string out;
  for (std::size_t i = 0; i < config.values.size(); ++i) {
    if (i) out += ' ';
    out += (i < space.size() ? space.dims()[i].name : "?") + "=" + format_value(config.values[i]);
  }
  return out;
}

}  // namespace tradeoff
