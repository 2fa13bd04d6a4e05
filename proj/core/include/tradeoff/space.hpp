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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace tradeoff {

enum class Scale { Linear, Log };

struct ContinuousDomain {
  double lo = 0.0;
  double hi = 1.0;
  Scale scale = Scale::Linear;
};

struct IntegerDomain {
  std::int64_t lo = 0;
  std::int64_t hi = 1;
};

struct CategoricalDomain {
  std::vector<std::string> labels;
};

/// Ordered list of training-set fractions, e.g. {0.2, 0.4, 0.6, 0.8, 1.0}.
struct FractionDomain {
  std::vector<double> values;
};

using DomainKind = std::variant<ContinuousDomain, IntegerDomain, CategoricalDomain, FractionDomain>;

struct ParamDomain {
  std::string name;
  DomainKind kind;

  static ParamDomain continuous(std::string name, double lo, double hi, Scale scale = Scale::Linear);
  static ParamDomain integer(std::string name, std::int64_t lo, std::int64_t hi);
  static ParamDomain categorical(std::string name, std::vector<std::string> labels);
  static ParamDomain fraction(std::string name, std::vector<double> values);

  bool is_continuous() const noexcept { return std::holds_alternative<ContinuousDomain>(kind); }
  bool is_fraction() const noexcept { return std::holds_alternative<FractionDomain>(kind); }

  /// Number of unit-hypercube coordinates this dimension occupies.
  std::size_t encoded_width() const noexcept;

  /// Number of distinct values; 0 for continuous dimensions.
  std::size_t cardinality() const noexcept;
};

/// A single hyperparameter value. Continuous and fraction values are doubles,
/// integers are int64, categorical values are their label.
using ParamValue = std::variant<double, std::int64_t, std::string>;

struct Configuration {
  std::vector<ParamValue> values;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

using UnitVector = std::vector<double>;

class SearchSpace {
 public:
  SearchSpace() = default;
  explicit SearchSpace(std::vector<ParamDomain> dims);

  std::span<const ParamDomain> dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return dims_.size(); }
  std::size_t encoded_width() const noexcept { return encoded_width_; }

  /// Index of the dimension called `name`, or size() if absent.
  std::size_t index_of(std::string_view name) const noexcept;

  /// True when no dimension is continuous.
  bool is_discrete() const noexcept;

  /// Product of the per-dimension cardinalities, saturating at SIZE_MAX;
  /// 0 if any dimension is continuous.
  std::size_t cardinality() const noexcept;

 private:
  std::vector<ParamDomain> dims_;
  std::size_t encoded_width_ = 0;
};

/// Throws Error(DuplicateName | EmptyDomain | BadBounds | LogScaleNonPositive)
/// naming the first offending dimension.
void validate_space(const SearchSpace& space);

/// Throws Error(OutOfDomain) when a value is not admissible in its dimension.
void validate_configuration(const SearchSpace& space, const Configuration& config);

UnitVector encode(const SearchSpace& space, const Configuration& config);

/// Inverse of encode. Coordinates are clamped to [0, 1]; discrete dimensions
/// round to the nearest value, categoricals take the argmax (lowest index on ties).
Configuration decode(const SearchSpace& space, std::span<const double> u);

/// First k points of the unscrambled Sobol sequence (origin skipped), decoded.
/// `seed` is accepted for interface stability; it does not affect the result.
std::vector<Configuration> sobol_init(const SearchSpace& space, std::size_t k, std::uint64_t seed = 0);

/// Full lexicographic enumeration when the space is discrete with at most
/// n_max configurations; otherwise n_max distinct configurations decoded from
/// a randomly shifted Sobol sample keyed by `seed`.
std::vector<Configuration> candidate_pool(const SearchSpace& space, std::size_t n_max, std::uint64_t seed);

std::string format_value(const ParamValue& value);
std::string format_configuration(const SearchSpace& space, const Configuration& config);

}  // namespace tradeoff
