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
#include <vector>

#include "ndpseq/dirichlet.hpp"
#include "ndpseq/error.hpp"
#include "ndpseq/special.hpp"

using namespace ndpseq;

TEST_CASE("log_mv_beta closed forms") {
  std::vector<double> ones{1.0, 1.0};
  CHECK(log_mv_beta(ones) == doctest::Approx(0.0).epsilon(1e-15));
  std::vector<double> halves{0.5, 0.5};
  CHECK(log_mv_beta(halves) == doctest::Approx(std::log(M_PI)).epsilon(1e-14));
  std::vector<double> ints{2.0, 3.0, 4.0};
  CHECK(log_mv_beta(ints) == doctest::Approx(std::log(12.0 / 40320.0)).epsilon(1e-13));
  std::vector<double> bad{1.0, 0.0};
  CHECK_THROWS_AS(log_mv_beta(bad), DomainError);
}

TEST_CASE("marginal likelihood examples") {
  const auto half = SimplexVector::uniform(2);
  CountVector one_tail{0, 1};
  CHECK(marginal_likelihood(one_tail, 2.0, half) == doctest::Approx(0.5).epsilon(1e-14));
  CountVector two_tails{0, 2};
  CHECK(marginal_likelihood(two_tails, 2.0, half) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CountVector tack{2, 7};
  // B(3, 8) / B(1, 1) = 2! 7! / 10!
  CHECK(marginal_likelihood(tack, 2.0, half) ==
        doctest::Approx(2.0 * 5040.0 / 3628800.0).epsilon(1e-13));
  CountVector zeros{0, 0};
  CHECK(log_marginal_likelihood(zeros, 2.0, half) == 0.0);
}

TEST_CASE("marginal likelihood errors") {
  const auto half = SimplexVector::uniform(2);
  CountVector three{1, 1, 1};
  CHECK_THROWS_AS(log_marginal_likelihood(three, 1.0, half), ShapeError);
  CountVector two{1, 1};
  CHECK_THROWS_AS(log_marginal_likelihood(two, 0.0, half), DomainError);
  SimplexVector zero_entry({1.0, 0.0});
  CHECK_THROWS_AS(log_marginal_likelihood(two, 1.0, zero_entry), DomainError);
}

TEST_CASE("marginal likelihood chain rule") {
  // P(y_1..y_n) = prod_k P(y_k | y_<k), with predictive (eps p_l + n_l) / (eps + n).
  const SimplexVector base({0.2, 0.3, 0.5});
  const double eps = 1.7;
  const std::vector<int> sequence{2, 0, 2, 1, 1, 2, 0, 0, 2};
  CountVector counts{0, 0, 0};
  double log_chain = 0.0;
  for (std::size_t n = 0; n < sequence.size(); ++n) {
    const auto l = static_cast<std::size_t>(sequence[n]);
    log_chain += std::log((eps * base[l] + static_cast<double>(counts[l])) /
                          (eps + static_cast<double>(n)));
    ++counts[l];
  }
  CHECK(std::fabs(log_marginal_likelihood(counts, eps, base) - log_chain) < 1e-10);
}

TEST_CASE("marginal likelihood is symmetric under relabeling states") {
  const SimplexVector base({0.1, 0.6, 0.3});
  const SimplexVector permuted({0.3, 0.1, 0.6});
  CountVector y{4, 1, 2};
  CountVector y_permuted{2, 4, 1};
  CHECK(log_marginal_likelihood(y, 3.0, base) ==
        doctest::Approx(log_marginal_likelihood(y_permuted, 3.0, permuted)).epsilon(1e-14));
}

TEST_CASE("posterior parameters") {
  const auto uniform5 = SimplexVector::uniform(5);
  CountVector review{9, 25, 15, 41, 0};
  const auto alpha = dirichlet_posterior_params(5.0, uniform5, review);
  const std::vector<double> expected{10, 26, 16, 42, 1};
  for (std::size_t l = 0; l < 5; ++l) CHECK(alpha[l] == doctest::Approx(expected[l]).epsilon(1e-15));
  const auto tack = dirichlet_posterior_params(2.0, SimplexVector::uniform(2), CountVector{2, 7});
  CHECK(tack[0] == 3.0);
  CHECK(tack[1] == 8.0);
  const auto prior = dirichlet_posterior_params(5.0, uniform5, CountVector(5, 0));
  for (double a : prior) CHECK(a == doctest::Approx(1.0));
  CHECK_THROWS_AS(dirichlet_posterior_params(5.0, uniform5, CountVector{1, 2}), ShapeError);
}

TEST_CASE("Dirichlet sampling") {
  RandomStream rng(5, 0);
  std::vector<double> huge{1e6, 1e6};
  const auto draw = sample_dirichlet(huge, rng);
  CHECK(std::fabs(draw[0] - 0.5) < 0.01);

  std::vector<double> alpha{1.0, 2.0, 3.0};
  const int n = 100000;
  std::vector<double> mean(3, 0.0);
  for (int i = 0; i < n; ++i) {
    const auto v = sample_dirichlet(alpha, rng);
    for (int l = 0; l < 3; ++l) mean[l] += v[l] / n;
  }
  for (int l = 0; l < 3; ++l) {
    const double m = alpha[l] / 6.0;
    const double var = m * (1.0 - m) / 7.0;
    CHECK(std::fabs(mean[l] - m) < 3.0 * std::sqrt(var / n));
  }

  std::vector<double> single{1.0};
  CHECK_THROWS(sample_dirichlet(single, rng));
  std::vector<double> negative{1.0, -1.0};
  CHECK_THROWS_AS(sample_dirichlet(negative, rng), DomainError);
}

TEST_CASE("tiny parameters still give a valid simplex vector") {
  RandomStream rng(2, 0);
  std::vector<double> tiny{1e-4, 1e-4, 1e-4};
  for (int i = 0; i < 1000; ++i) {
    const auto v = sample_dirichlet(tiny, rng);
    double total = 0.0;
    for (double x : v.values()) {
      REQUIRE(std::isfinite(x));
      total += x;
    }
    REQUIRE(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("SimplexVector validation") {
  CHECK_THROWS_AS(SimplexVector({1.0}), ValidationError);
  CHECK_THROWS_AS(SimplexVector({0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(SimplexVector({1.5, -0.5}), ValidationError);
  CHECK_NOTHROW(SimplexVector({0.25, 0.75}));
  CHECK(SimplexVector::uniform(4)[3] == 0.25);
  CHECK_FALSE(SimplexVector({1.0, 0.0}).strictly_positive());
}
