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
#include <cstring>
#include <vector>

#include "ndpseq/datasets.hpp"
#include "ndpseq/engine.hpp"
#include "ndpseq/error.hpp"

using namespace ndpseq;

namespace {

SimulationBatch penny_batch(std::size_t k, std::uint64_t seed, std::size_t threads = 1,
                            double log_scale = 0.0) {
  const auto s = load_scenario("pennies");
  return run_batch(s.data, s.config, {k, seed, log_scale, threads});
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("single row: weight is the marginal likelihood") {
  auto data = validate_and_count({{0, 1, 1, 2}}, 3);
  ModelConfig config(2.5, 1.5, SimplexVector({0.2, 0.3, 0.5}));
  const double expected = log_marginal_likelihood(data.counts(0), 1.5, config.base());
  RandomStream rng(1, 0);
  const auto sim = simulate_one(data, config, rng);
  CHECK(sim.log_weight == doctest::Approx(expected).epsilon(1e-13));
  REQUIRE(sim.cluster_of.size() == 1);
  CHECK(sim.cluster_of[0] == 0);

  const auto batch = run_batch(data, config, {500, 3, 0.0, 1});
  CHECK(batch.ess.prime == 500.0);
  CHECK(batch.ess.double_prime == 500.0);
}

TEST_CASE("second row joins the first with probability theta / (theta + 1/2)") {
  auto data = validate_and_count({{1}, {1}}, 2);
  ModelConfig config(1.0, 1.0, SimplexVector::uniform(2));
  const auto batch = run_batch(data, config, {200000, 8, 0.0, 1});
  double diff = 0.0, diff2 = 0.0;
  for (const auto& sim : batch.sims) {
    const double theta = sim.thetas[1];
    const double join = sim.cluster_of[1] == 0 ? 1.0 : 0.0;
    const double d = join - theta / (theta + 0.5);
    diff += d;
    diff2 += d * d;
  }
  const double n = static_cast<double>(batch.size());
  const double mean = diff / n;
  const double se = std::sqrt((diff2 / n - mean * mean) / n);
  CHECK(std::fabs(mean) < 4.0 * se);
}

TEST_CASE("rows in one cluster share one vector") {
  const auto batch = penny_batch(2000, 4);
  for (const auto& sim : batch.sims) {
    for (std::size_t m = 0; m < sim.cluster_of.size(); ++m) {
      const auto root = sim.cluster_of[m];
      REQUIRE(root <= m);
      REQUIRE(sim.cluster_of[root] == root);
      REQUIRE(sim.slot_of[m] == sim.slot_of[root]);
    }
  }
}

TEST_CASE("stored log weights match a recomputation") {
  const auto s = load_scenario("pennies");
  const auto batch = run_batch(s.data, s.config, {300, 6, 0.0, 1});
  for (const auto& sim : batch.sims) {
    REQUIRE(sim.log_weight ==
            doctest::Approx(recompute_log_weight(sim, s.data, s.config)).epsilon(1e-9));
  }
}

TEST_CASE("normalized weights do not depend on the log scale factor") {
  const auto a = penny_batch(3000, 12, 1, 0.0);
  const auto b = penny_batch(3000, 12, 1, 42.0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    REQUIRE(std::fabs(a.normalized_weights[k] - b.normalized_weights[k]) < 1e-12);
  }
  CHECK(b.scaled_log_weight(0) - a.scaled_log_weight(0) == doctest::Approx(7 * 42.0));
}

TEST_CASE("batches are identical at any thread count") {
  const auto one = penny_batch(1500, 21, 1);
  for (std::size_t threads : {2u, 4u}) {
    const auto many = penny_batch(1500, 21, threads);
    REQUIRE(many.size() == one.size());
    for (std::size_t k = 0; k < one.size(); ++k) {
      REQUIRE(same_bits(one.sims[k].log_weight, many.sims[k].log_weight));
      REQUIRE(one.sims[k].cluster_of == many.sims[k].cluster_of);
      REQUIRE(one.sims[k].thetas.size() == many.sims[k].thetas.size());
      for (std::size_t i = 0; i < one.sims[k].thetas.size(); ++i) {
        REQUIRE(same_bits(one.sims[k].thetas[i], many.sims[k].thetas[i]));
      }
    }
  }
}

TEST_CASE("effective sample size formulas") {
  std::vector<double> uniform(50, 3.0);
  CHECK(ess(uniform).prime == doctest::Approx(50.0).epsilon(1e-14));
  std::vector<double> single(10, 0.0);
  single[0] = 1.0;
  CHECK(ess(single).prime == doctest::Approx(1.0));
  std::vector<double> ramp{1.0, 2.0, 3.0};
  const double prime = 36.0 / 14.0;
  CHECK(ess(ramp).prime == doctest::Approx(prime).epsilon(1e-14));
  CHECK(ess(ramp).double_prime == doctest::Approx(2.0 / (3.0 - prime / 3.0) * prime).epsilon(1e-14));
  std::vector<double> zeros(3, 0.0);
  CHECK_THROWS_AS(ess(zeros), DegenerateError);
  std::vector<double> logs{-800.0, -800.0 + std::log(2.0), -800.0 + std::log(3.0)};
  CHECK(ess_from_log(logs).prime == doctest::Approx(prime).epsilon(1e-12));
}

TEST_CASE("trimming removes the heaviest simulations") {
  const auto batch = penny_batch(1000, 2);
  const auto same = trim_heaviest(batch, 0);
  CHECK(same.size() == batch.size());
  CHECK(same.ess.prime == batch.ess.prime);

  const auto trimmed = trim_heaviest(batch, 3);
  CHECK(trimmed.size() == 997);
  CHECK(trimmed.generated == 1000);
  REQUIRE(trimmed.trimmed.size() == 3);
  double kept_max = -1e300;
  for (const auto& sim : trimmed.sims) kept_max = std::max(kept_max, sim.log_weight);
  for (auto index : trimmed.trimmed) CHECK(batch.sims[index].log_weight >= kept_max);
  for (std::size_t k = 0; k < trimmed.size(); ++k) {
    CHECK(trimmed.sims[k].log_weight == batch.sims[trimmed.source_index[k]].log_weight);
  }
  double total = 0.0;
  for (double w : trimmed.normalized_weights) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(trim_heaviest(batch, 1000), ValidationError);
}

TEST_CASE("run_batch argument errors") {
  const auto s = load_scenario("pennies");
  CHECK_THROWS_AS(run_batch(s.data, s.config, {0, 1, 0.0, 1}), ValidationError);
  ModelConfig three(1.0, 1.0, SimplexVector::uniform(3));
  CHECK_THROWS_AS(run_batch(s.data, three, {10, 1, 0.0, 1}), ShapeError);
}
