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
#include <vector>

#include "ndpseq/datasets.hpp"
#include "ndpseq/engine.hpp"
#include "ndpseq/error.hpp"
#include "ndpseq/oracle.hpp"
#include "ndpseq/special.hpp"

using namespace ndpseq;

TEST_CASE("Bell numbers") {
  const std::vector<std::uint64_t> expected{1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975,
                                            678570, 4213597};
  for (std::size_t n = 0; n < expected.size(); ++n) CHECK(bell_number(n) == expected[n]);
}

TEST_CASE("single row: one partition and the Dirichlet posterior mean") {
  auto data = validate_and_count({{0, 1, 1}}, 3);
  ModelConfig config(1.5, 2.0, SimplexVector({0.2, 0.3, 0.5}));
  const auto post = enumerate_posterior(data, config);
  REQUIRE(post.size() == 1);
  CHECK(post.log_post_weights[0] == doctest::Approx(0.0).epsilon(1e-15));
  for (std::size_t l = 0; l < 3; ++l) {
    const double expected = (2.0 * config.base()[l] + static_cast<double>(data.counts(0)[l])) / 5.0;
    CHECK(exact_expectation(post, Functional::component(1, l), data, config) ==
          doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("two rows: partition weights by hand") {
  auto data = validate_and_count({{1}, {1}}, 2);
  ModelConfig config(1.0, 1.0, SimplexVector::uniform(2));
  const auto post = enumerate_posterior(data, config);
  REQUIRE(post.size() == 2);
  // {12}: prior kappa * 1! / (kappa (kappa + 1)) = 1/2, likelihood of two heads = 3/8 under Beta(1/2,1/2).
  // {1|2}: prior kappa^2 / (kappa (kappa + 1)) = 1/2, likelihood (1/2)(1/2).
  const double together = 0.5 * 0.375;
  const double apart = 0.5 * 0.25;
  CHECK(format_partition(post.partition(0)) == "{1,2}");
  CHECK(std::exp(post.log_post_weights[0]) ==
        doctest::Approx(together / (together + apart)).epsilon(1e-14));
  CHECK(std::exp(post.log_post_weights[1]) ==
        doctest::Approx(apart / (together + apart)).epsilon(1e-14));
  CHECK(exact_expectation(post, Functional::cocluster(1, 2), data, config) ==
        doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("penny data has 877 partitions") {
  const auto s = load_scenario("pennies");
  const auto post = enumerate_posterior(s.data, s.config);
  CHECK(post.size() == 877);
  double total = 0.0;
  for (double lw : post.log_post_weights) total += std::exp(lw);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  const double e81 = exact_expectation(post, Functional::new_agent_component(1), s.data, s.config);
  const double e51 = exact_expectation(post, Functional::component(5, 1), s.data, s.config);
  CHECK(e81 == doctest::Approx(0.6319).epsilon(1e-3));
  CHECK(e51 == doctest::Approx(0.4574).epsilon(1e-3));
  const auto top = top_partitions(post, 3);
  REQUIRE(top.size() == 3);
  CHECK(post.log_post_weights[top[0]] >= post.log_post_weights[top[1]]);
}

TEST_CASE("oracle refuses more than the row cap") {
  std::vector<std::vector<std::int64_t>> rows(kMaxOracleRows + 1, std::vector<std::int64_t>{0});
  auto data = validate_and_count(rows, 2);
  ModelConfig config(1.0, 1.0, SimplexVector::uniform(2));
  try {
    enumerate_posterior(data, config);
    FAIL("expected a refusal");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("Bell") != std::string::npos);
  }
}

TEST_CASE("empty rows: co-clustering probability is 1 / (kappa + 1)") {
  for (double kappa : {0.5, 1.0, 2.0, 7.25}) {
    auto data = ObservationArray::from_counts({{0, 0}, {0, 0}, {0, 0}}, 2);
    ModelConfig config(kappa, 1.0, SimplexVector::uniform(2));
    const auto post = enumerate_posterior(data, config);
    for (auto [i, j] : {std::pair{1, 2}, {1, 3}, {2, 3}}) {
      CHECK(exact_expectation(post, Functional::cocluster(i, j), data, config) ==
            doctest::Approx(1.0 / (kappa + 1.0)).epsilon(1e-14));
    }
  }
}

TEST_CASE("relabeling rows permutes the answers") {
  auto data = validate_and_count({{0, 0, 1}, {2}, {1, 2, 2, 2}}, 3);
  auto swapped = validate_and_count({{1, 2, 2, 2}, {2}, {0, 0, 1}}, 3);
  ModelConfig config(0.5, 2.0, SimplexVector({0.2, 0.3, 0.5}));
  const auto a = enumerate_posterior(data, config);
  const auto b = enumerate_posterior(swapped, config);
  CHECK(exact_expectation(a, Functional::mean_score(1), data, config) ==
        doctest::Approx(exact_expectation(b, Functional::mean_score(3), swapped, config)).epsilon(1e-13));
  CHECK(exact_expectation(a, Functional::contest(1, 2), data, config) ==
        doctest::Approx(exact_expectation(b, Functional::contest(3, 2), swapped, config)).epsilon(1e-13));
  CHECK(exact_expectation(a, Functional::new_agent_mean(), data, config) ==
        doctest::Approx(exact_expectation(b, Functional::new_agent_mean(), swapped, config)).epsilon(1e-13));
}

TEST_CASE("contest between symmetric rows is (1 - tie) / 2") {
  // Both rows see one head and one tail, so theta_1 and theta_2 are exchangeable.
  auto data = validate_and_count({{0, 1}, {1, 0}}, 2);
  ModelConfig config(1.3, 0.8, SimplexVector::uniform(2));
  const auto post = enumerate_posterior(data, config);
  const double c12 = exact_expectation(post, Functional::contest(1, 2), data, config);
  const double c21 = exact_expectation(post, Functional::contest(2, 1), data, config);
  CHECK(c12 == doctest::Approx(c21).epsilon(1e-14));

  // E[sum_l theta_1l theta_2l] by direct moments over the two partitions.
  const double a = 0.4 + 1.0;  // eps p_l + one count
  const double a_pooled = 0.4 + 2.0;
  const double a0 = 2.8, a0_pooled = 4.8;
  const double tie_together = 2.0 * a_pooled * (a_pooled + 1.0) / (a0_pooled * (a0_pooled + 1.0));
  const double tie_apart = 2.0 * (a / a0) * (a / a0);
  double w_together = 0.0;
  for (std::size_t i = 0; i < post.size(); ++i) {
    if (format_partition(post.partition(i)) == "{1,2}") w_together = std::exp(post.log_post_weights[i]);
  }
  const double tie = w_together * tie_together + (1.0 - w_together) * tie_apart;
  CHECK(c12 == doctest::Approx((1.0 - tie) / 2.0).epsilon(1e-13));
}

TEST_CASE("indicator functionals have no closed form") {
  auto data = validate_and_count({{0}}, 2);
  ModelConfig config(1.0, 1.0, SimplexVector::uniform(2));
  const auto post = enumerate_posterior(data, config);
  CHECK_THROWS_AS(exact_expectation(post, Functional::indicator_less(Functional::component(1, 0), 0.5),
                                    data, config),
                  UnsupportedError);
}

TEST_CASE("engine converges to the oracle on a small instance") {
  auto data = validate_and_count({{0, 0, 1}, {2, 2}, {0, 1, 1, 0}}, 3);
  ModelConfig config(1.0, 2.0, SimplexVector({0.3, 0.3, 0.4}));
  const auto post = enumerate_posterior(data, config);
  const auto batch = run_batch(data, config, {40000, 77, 0.0, 1});
  for (const auto& f : {Functional::component(2, 2), Functional::contest(3, 1),
                        Functional::cocluster(1, 3), Functional::new_agent_mean()}) {
    const double exact = exact_expectation(post, f, data, config);
    const auto e = estimate(batch, f);
    INFO(f.to_string() << ": exact " << exact << ", estimate " << e.value << " +- " << e.standard_error);
    CHECK(std::fabs(e.value - exact) < 4.0 * e.standard_error + 1e-12);
  }
}
