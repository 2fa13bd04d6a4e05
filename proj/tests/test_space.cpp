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
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "tradeoff/error.hpp"
#include "tradeoff/space.hpp"

using namespace tradeoff;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected tradeoff::Error");
  return ErrorCode::ConfigParse;
}

const std::vector<double> kFractions = {0.2, 0.4, 0.6, 0.8, 1.0};

SearchSpace mixed_space() {
  return SearchSpace({
      ParamDomain::continuous("lr", 1e-4, 1.0, Scale::Log),
      ParamDomain::continuous("dropout", 0.0, 0.5),
      ParamDomain::integer("layers", 1, 6),
      ParamDomain::categorical("opt", {"sgd", "adam", "rmsprop"}),
      ParamDomain::fraction("train_fraction", kFractions),
  });
}

Configuration random_config(const SearchSpace& space, std::mt19937_64& rng) {
  Configuration c;
  for (const auto& dim : space.dims()) {
    if (const auto* d = std::get_if<ContinuousDomain>(&dim.kind)) {
      if (d->scale == Scale::Log) {
        c.values.emplace_back(
            std::exp(std::uniform_real_distribution<double>(std::log(d->lo), std::log(d->hi))(rng)));
      } else {
        c.values.emplace_back(std::uniform_real_distribution<double>(d->lo, d->hi)(rng));
      }
    } else if (const auto* d = std::get_if<IntegerDomain>(&dim.kind)) {
      c.values.emplace_back(std::uniform_int_distribution<std::int64_t>(d->lo, d->hi)(rng));
    } else if (const auto* d = std::get_if<CategoricalDomain>(&dim.kind)) {
      c.values.emplace_back(d->labels[std::uniform_int_distribution<std::size_t>(0, d->labels.size() - 1)(rng)]);
    } else {
      const auto& f = std::get<FractionDomain>(dim.kind);
      c.values.emplace_back(f.values[std::uniform_int_distribution<std::size_t>(0, f.values.size() - 1)(rng)]);
    }
  }
  return c;
}

}  // namespace

TEST_CASE("validate_space") {
  SUBCASE("continuous plus the standard fraction grid is valid") {
    CHECK_NOTHROW(validate_space(SearchSpace({ParamDomain::continuous("c", 0, 1), ParamDomain::fraction("f", kFractions)})));
  }
  SUBCASE("degenerate interval") {
    CHECK(code_of([] { validate_space(SearchSpace({ParamDomain::continuous("c", 1, 1)})); }) == ErrorCode::BadBounds);
  }
  SUBCASE("duplicate names") {
    CHECK(code_of([] {
            validate_space(SearchSpace({ParamDomain::continuous("c", 0, 1), ParamDomain::integer("c", 0, 3)}));
          }) == ErrorCode::DuplicateName);
  }
  SUBCASE("log scale needs a positive lower bound") {
    CHECK(code_of([] { validate_space(SearchSpace({ParamDomain::continuous("lr", 0, 1, Scale::Log)})); }) ==
          ErrorCode::LogScaleNonPositive);
  }
  SUBCASE("empty domains") {
    CHECK(code_of([] { validate_space(SearchSpace({ParamDomain::categorical("m", {})})); }) == ErrorCode::EmptyDomain);
    CHECK(code_of([] { validate_space(SearchSpace({ParamDomain::fraction("f", {})})); }) == ErrorCode::EmptyDomain);
    CHECK(code_of([] { validate_space(SearchSpace{}); }) == ErrorCode::EmptySpace);
  }
  SUBCASE("categorical needs two distinct labels") {
    CHECK(code_of([] { validate_space(SearchSpace({ParamDomain::categorical("m", {"a"})})); }) == ErrorCode::BadBounds);
    CHECK(code_of([] { validate_space(SearchSpace({ParamDomain::categorical("m", {"a", "a"})})); }) ==
          ErrorCode::BadBounds);
  }
  SUBCASE("fractions strictly increasing within (0, 1]") {
    CHECK(code_of([] { validate_space(SearchSpace({ParamDomain::fraction("f", {0.4, 0.2})})); }) == ErrorCode::BadBounds);
    CHECK(code_of([] { validate_space(SearchSpace({ParamDomain::fraction("f", {0.5, 1.5})})); }) == ErrorCode::BadBounds);
    CHECK(code_of([] { validate_space(SearchSpace({ParamDomain::fraction("f", {0.0, 0.5})})); }) == ErrorCode::BadBounds);
  }
  SUBCASE("error names the first offending dimension") {
    try {
      validate_space(SearchSpace({ParamDomain::continuous("ok", 0, 1), ParamDomain::integer("broken", 3, 3),
                                  ParamDomain::integer("also_broken", 5, 1)}));
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("'broken'") != std::string::npos);
    }
  }
}

TEST_CASE("encoded width counts one-hot columns") {
  CHECK(mixed_space().encoded_width() == 1 + 1 + 1 + 3 + 1);
}

TEST_CASE("encode examples") {
  CHECK(encode(SearchSpace({ParamDomain::continuous("c", 0, 10)}), {{5.0}}) == UnitVector{0.5});
  CHECK(encode(SearchSpace({ParamDomain::fraction("f", kFractions)}), {{0.6}}) == UnitVector{0.5});
  CHECK(encode(SearchSpace({ParamDomain::categorical("m", {"a", "b", "c"})}), {{std::string("b")}}) ==
        UnitVector{0.0, 1.0, 0.0});
  CHECK(encode(SearchSpace({ParamDomain::fraction("f", {0.5})}), {{0.5}}) == UnitVector{0.5});
  const auto u = encode(SearchSpace({ParamDomain::continuous("lr", 1e-4, 1.0, Scale::Log)}), {{1e-2}});
  CHECK(u[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("encode rejects out-of-domain values") {
  const SearchSpace space({ParamDomain::integer("n", 0, 10)});
  CHECK(code_of([&] { encode(space, {{std::int64_t{11}}}); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([&] { encode(space, {{2.5}}); }) == ErrorCode::OutOfDomain);
  CHECK(code_of([&] { encode(SearchSpace({ParamDomain::fraction("f", kFractions)}), {{0.5}}); }) ==
        ErrorCode::OutOfDomain);
}

TEST_CASE("decode examples") {
  CHECK(decode(SearchSpace({ParamDomain::integer("n", 0, 10)}), std::vector<double>{0.5}).values[0] ==
        ParamValue{std::int64_t{5}});
  CHECK(decode(SearchSpace({ParamDomain::categorical("m", {"a", "b", "c"})}), std::vector<double>{0.49, 0.51, 0.0})
            .values[0] == ParamValue{std::string("b")});
  // Ties go to the lowest label index.
  CHECK(decode(SearchSpace({ParamDomain::categorical("m", {"a", "b", "c"})}), std::vector<double>{0.2, 0.7, 0.7})
            .values[0] == ParamValue{std::string("b")});
  CHECK(decode(SearchSpace({ParamDomain::fraction("f", kFractions)}), std::vector<double>{0.3}).values[0] ==
        ParamValue{0.4});
  CHECK(code_of([] { decode(SearchSpace({ParamDomain::integer("n", 0, 10)}), std::vector<double>{0.5, 0.5}); }) ==
        ErrorCode::LengthMismatch);
}

TEST_CASE("property: decode(encode(c)) == c for random valid configurations") {
  const auto space = mixed_space();
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = random_config(space, rng);
    const auto u = encode(space, c);
    REQUIRE(u.size() == space.encoded_width());
    for (double x : u) {
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
    }
    const auto back = decode(space, u);
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (space.dims()[i].is_continuous()) {
        // Continuous dims agree up to 1e-12 in unit space.
        const auto ub = encode(space, back);
        CHECK(std::abs(ub[i] - u[i]) <= 1e-12);
      } else {
        CHECK(back.values[i] == c.values[i]);
      }
    }
  }
}

TEST_CASE("sobol_init") {
  const SearchSpace line({ParamDomain::continuous("x", 0, 1)});
  SUBCASE("k = 3 in one dimension") {
    const auto pts = sobol_init(line, 3, 0);
    REQUIRE(pts.size() == 3);
    CHECK(std::get<double>(pts[0].values[0]) == 0.5);
    CHECK(std::get<double>(pts[1].values[0]) == 0.75);
    CHECK(std::get<double>(pts[2].values[0]) == 0.25);
  }
  SUBCASE("k = 1 sits at the cube centre") {
    const auto pts = sobol_init(mixed_space(), 1, 0);
    REQUIRE(pts.size() == 1);
    const auto& v = pts[0].values;
    CHECK(std::get<double>(v[0]) == doctest::Approx(1e-2).epsilon(1e-12));
    CHECK(std::get<double>(v[1]) == 0.25);
    CHECK(std::get<std::int64_t>(v[2]) == 4);  // 1 + round(0.5 * 5), halves away from zero
    CHECK(std::get<std::string>(v[3]) == "sgd");  // all one-hot coordinates tie at 0.5
    CHECK(std::get<double>(v[4]) == 0.6);
  }
  SUBCASE("seed does not change the unscrambled design") {
    CHECK(sobol_init(mixed_space(), 5, 1) == sobol_init(mixed_space(), 5, 99));
  }
  SUBCASE("k = 0 is rejected") { CHECK(code_of([&] { sobol_init(line, 0, 0); }) == ErrorCode::InvalidSettings); }
  SUBCASE("continuous points are distinct for k up to 1024") {
    const SearchSpace cube({ParamDomain::continuous("a", 0, 1), ParamDomain::continuous("b", 0, 1),
                            ParamDomain::continuous("c", 0, 1)});
    const auto pts = sobol_init(cube, 1024, 0);
    CHECK(std::set<Configuration>(pts.begin(), pts.end()).size() == 1024);
  }
}

TEST_CASE("candidate_pool") {
  SUBCASE("small discrete space is enumerated lexicographically") {
    const SearchSpace space({ParamDomain::fraction("f", kFractions), ParamDomain::categorical("m", {"a", "b", "c"})});
    const auto pool = candidate_pool(space, 4096, 0);
    REQUIRE(pool.size() == 15);
    CHECK(std::set<Configuration>(pool.begin(), pool.end()).size() == 15);
    CHECK(pool.front().values == std::vector<ParamValue>{0.2, std::string("a")});
    CHECK(pool[1].values == std::vector<ParamValue>{0.2, std::string("b")});
    CHECK(pool.back().values == std::vector<ParamValue>{1.0, std::string("c")});
    CHECK(pool == candidate_pool(space, 15, 123));
  }
  SUBCASE("continuous space is sampled deterministically per seed") {
    const SearchSpace space({ParamDomain::continuous("a", 0, 1), ParamDomain::continuous("b", 0, 1)});
    const auto p1 = candidate_pool(space, 8, 5);
    CHECK(p1.size() == 8);
    CHECK(std::set<Configuration>(p1.begin(), p1.end()).size() == 8);
    CHECK(p1 == candidate_pool(space, 8, 5));
    CHECK(p1 != candidate_pool(space, 8, 6));
  }
  SUBCASE("single candidate") {
    CHECK(candidate_pool(mixed_space(), 1, 0).size() == 1);
  }
  SUBCASE("discrete space larger than n_max is sampled without duplicates") {
    const SearchSpace space({ParamDomain::integer("a", 0, 9), ParamDomain::integer("b", 0, 9)});
    const auto pool = candidate_pool(space, 50, 3);
    CHECK(pool.size() == 50);
    CHECK(std::set<Configuration>(pool.begin(), pool.end()).size() == 50);
  }
  SUBCASE("exhaustive trigger returns the full Cartesian product") {
    const SearchSpace space({ParamDomain::integer("a", 0, 3), ParamDomain::categorical("m", {"x", "y"}),
                             ParamDomain::fraction("f", {0.5, 1.0})});
    const auto pool = candidate_pool(space, 16, 0);
    CHECK(pool.size() == 16);
    CHECK(std::set<Configuration>(pool.begin(), pool.end()).size() == 16);
    for (const auto& c : pool) CHECK_NOTHROW(validate_configuration(space, c));
  }
}
