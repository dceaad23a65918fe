// Copyright 2026 The ndpseq Authors.
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

#include <doctest.h>

#include <cmath>
#include <string>

#include "ndpseq/datasets.hpp"
#include "ndpseq/error.hpp"
#include "ndpseq/gamer.hpp"
#include "ndpseq/io.hpp"

using namespace ndpseq;

TEST_CASE("pennies") {
  const auto s = load_scenario("pennies");
  REQUIRE(s.data.num_rows() == 7);
  for (std::size_t m = 0; m < 7; ++m) CHECK(s.data.row_length(m) == 5);
  CHECK(s.data.counts(4)[0] == 4);
  CHECK(s.data.counts(4)[1] == 1);
  CHECK(s.config.kappa() == 1.0);
  CHECK(s.config.eps() == 1.0);
  CHECK(s.num_simulations == 10000);
}

TEST_CASE("thumbtacks") {
  const auto s = load_scenario("tacks_k1");
  REQUIRE(s.data.num_rows() == 320);
  CHECK(s.data.counts(0)[0] == 2);
  CHECK(s.data.counts(0)[1] == 7);
  for (std::size_t m = 0; m < 320; ++m) REQUIRE(s.data.row_length(m) == 9);
  CHECK(s.config.eps() == 2.0);
  CHECK(load_scenario("tacks_k10").config.kappa() == 10.0);
}

TEST_CASE("reviews") {
  const auto s = load_scenario("reviews");
  REQUIRE(s.data.num_rows() == 50);
  CHECK(s.data.num_states() == 5);
  const std::int64_t first[] = {9, 25, 15, 41, 0};
  for (std::size_t l = 0; l < 5; ++l) CHECK(s.data.counts(0)[l] == first[l]);
  double stars = 0.0;
  for (std::size_t m = 0; m < 50; ++m) {
    for (std::size_t l = 0; l < 5; ++l) {
      stars += static_cast<double>((l + 1) * static_cast<std::size_t>(s.data.counts(m)[l]));
    }
  }
  const double total = static_cast<double>(s.data.total_observations());
  CHECK(total / 50.0 == doctest::Approx(23.02).epsilon(1e-3));
  CHECK(stars / total == doctest::Approx(2.43).epsilon(0.01));
  CHECK(s.notes.empty());
  for (const auto& t : s.targets) CHECK(t.offset == 1.0);
}

TEST_CASE("games scenarios share the discretized gamer base") {
  const auto one = load_scenario("games1");
  const auto two = load_scenario("games2");
  const auto three = load_scenario("games3");
  const auto base = gamer::discretize({7.0 / 3.0, 28.0, 3.0}, 500);
  for (std::size_t l = 0; l < 500; ++l) REQUIRE(one.config.base()[l] == base[l]);
  CHECK(one.data.num_rows() == 10);
  CHECK(three.data.num_rows() == 10);
  CHECK(three.trim == 26);
  CHECK(two.trim == 2);
  CHECK(one.row_names[9] == "The Pianist Spider");
  CHECK(three.row_names[0] == "Vertigo Gal");
}

TEST_CASE("games2 differs from games1 only in two scores") {
  const auto one = load_scenario("games1");
  const auto two = load_scenario("games2");
  const auto& a = one.data.raw_rows();
  const auto& b = two.data.raw_rows();
  REQUIRE(a.size() == b.size());
  int changed = 0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    REQUIRE(a[m].size() == b[m].size());
    for (std::size_t n = 0; n < a[m].size(); ++n) {
      if (a[m][n] == b[m][n]) continue;
      ++changed;
      if (m == 7) {  // The Matrix
        CHECK(a[m][n] == 15);
        CHECK(b[m][n] == 14);
      } else {
        CHECK(m == 8);  // Goat Radish
        CHECK(a[m][n] == 38);
        CHECK(b[m][n] == 39);
      }
    }
  }
  CHECK(changed == 2);
}

TEST_CASE("games3 caps the out-of-range score") {
  const auto s = load_scenario("games3");
  CHECK(s.data.counts(0)[499] == 1);
  bool noted = false;
  for (const auto& note : s.notes) noted |= note.find("capped at 499") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("every scenario loads and exposes its resource") {
  for (const auto& name : scenario_names()) {
    INFO(name);
    const auto s = load_scenario(name);
    CHECK(s.name == name);
    CHECK(s.data.num_states() == s.config.num_states());
    CHECK_FALSE(scenario_resource(name).empty());
    for (const auto& t : s.targets) CHECK_NOTHROW(parse_query(t.query));
  }
  CHECK_THROWS_AS(load_scenario("unknown"), LookupError);
  CHECK_THROWS_AS(scenario_resource("unknown"), LookupError);
}
