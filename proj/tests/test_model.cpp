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

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ndpseq/error.hpp"
#include "ndpseq/model.hpp"

using namespace ndpseq;

TEST_CASE("validate_and_count on coin rows") {
  // H H H H T with heads = 1.
  auto data = validate_and_count({{1, 1, 1, 1, 0}, {0, 0, 0}}, 2);
  CHECK(data.num_rows() == 2);
  CHECK(data.counts(0)[0] == 1);
  CHECK(data.counts(0)[1] == 4);
  CHECK(data.counts(1)[0] == 3);
  CHECK(data.counts(1)[1] == 0);
  CHECK(data.row_length(0) == 5);
  CHECK(data.total_observations() == 8);
  REQUIRE(data.nonzero(1).size() == 1);
  CHECK(data.nonzero(1)[0].first == 0);
  CHECK(data.nonzero(1)[0].second == 3);
}

TEST_CASE("validate_and_count rejects bad input") {
  try {
    validate_and_count({{0, 1}, {2, 5}}, 5);
    FAIL("expected an error");
  } catch (const ValidationError& e) {
    const std::string message = e.what();
    CHECK(message.find("row 2") != std::string::npos);
    CHECK(message.find("position 2") != std::string::npos);
  }
  CHECK_THROWS_AS(validate_and_count({}, 2), ValidationError);
  CHECK_THROWS_AS(validate_and_count({{-1}}, 2), ValidationError);
  CHECK_THROWS_AS(validate_and_count({{0}}, 1), ValidationError);
}

TEST_CASE("counts are invariant to permutations within a row") {
  std::vector<std::int64_t> row{0, 3, 3, 1, 2, 3, 0, 1, 3};
  auto reference = validate_and_count({row}, 4);
  std::mt19937 gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(row.begin(), row.end(), gen);
    auto shuffled = validate_and_count({row}, 4);
    for (std::size_t l = 0; l < 4; ++l) CHECK(shuffled.counts(0)[l] == reference.counts(0)[l]);
  }
}

TEST_CASE("bin_continuous") {
  std::vector<double> edge{0.5};
  auto simple = bin_continuous({{0.2, 0.9}, {}}, edge);
  CHECK(simple.counts(0)[0] == 1);
  CHECK(simple.counts(0)[1] == 1);
  CHECK(simple.row_length(1) == 0);

  // Ties go to the right-hand cell.
  auto tie = bin_continuous({{0.5}}, edge);
  CHECK(tie.counts(0)[1] == 1);

  std::vector<double> bad{1.0, 1.0};
  CHECK_THROWS_AS(bin_continuous({{0.0}}, bad), ValidationError);
  CHECK_THROWS_AS(bin_continuous({{std::nan("")}}, edge), ValidationError);
}

TEST_CASE("integer scores bin onto themselves, capped at 499") {
  std::vector<double> edges;
  for (int l = 1; l <= 499; ++l) edges.push_back(l - 0.5);
  auto data = bin_continuous({{0, 1, 17, 498, 499, 524, 1000}}, edges);
  CHECK(data.num_states() == 500);
  for (int l : {0, 1, 17, 498}) CHECK(data.counts(0)[static_cast<std::size_t>(l)] == 1);
  CHECK(data.counts(0)[499] == 3);
}

TEST_CASE("ModelConfig validation") {
  CHECK_THROWS_AS(ModelConfig(0.0, 1.0, SimplexVector::uniform(2)), ValidationError);
  CHECK_THROWS_AS(ModelConfig(1.0, -1.0, SimplexVector::uniform(2)), ValidationError);
  CHECK_THROWS_AS(ModelConfig(1.0, 1.0, SimplexVector({1.0, 0.0})), ValidationError);
  ModelConfig ok(2.0, 3.0, SimplexVector::uniform(3));
  CHECK(ok.num_states() == 3);
}

TEST_CASE("from_counts accepts the empty array") {
  auto empty = ObservationArray::from_counts({}, 3);
  CHECK(empty.num_rows() == 0);
  CHECK(empty.num_states() == 3);
  CHECK_THROWS_AS(ObservationArray::from_counts({{1, 2}}, 3), ShapeError);
}
