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
#include <limits>
#include <vector>

#include "ndpseq/special.hpp"

#ifdef NDPSEQ_HAVE_BOOST_ORACLE
#include <boost/math/special_functions/gamma.hpp>
#endif

using namespace ndpseq;

namespace {

bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
  return std::fabs(a - b) <= std::max(rel * std::fabs(b), abs_floor);
}

}  // namespace

TEST_CASE("log_gamma at integers and half integers") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(close_rel(log_gamma(11.0), std::log(3628800.0), 1e-14));
  CHECK(close_rel(log_gamma(0.5), 0.5 * std::log(M_PI), 1e-14));
  CHECK(close_rel(log_gamma(1e-8), -std::log(1e-8), 1e-7));
}

TEST_CASE("regularized gamma closed forms") {
  // P(1, x) = 1 - exp(-x)
  for (double x : {1e-6, 0.1, 1.0, 5.0, 40.0}) {
    CHECK(close_rel(regularized_gamma_p(1.0, x), -std::expm1(-x), 1e-13));
    CHECK(close_rel(regularized_gamma_q(1.0, x), std::exp(-x), 1e-12));
  }
  // P(1/2, x) = erf(sqrt x)
  for (double x : {0.01, 0.7, 3.0, 20.0}) {
    CHECK(close_rel(regularized_gamma_p(0.5, x), std::erf(std::sqrt(x)), 1e-13));
  }
  CHECK(regularized_gamma_p(3.0, 0.0) == 0.0);
  CHECK(regularized_gamma_q(3.0, 0.0) == 1.0);
}

TEST_CASE("P + Q = 1") {
  for (double a : {0.05, 0.5, 2.0, 7.0 / 3.0 + 3.0, 50.0, 400.0}) {
    for (double x : {1e-3, 0.5, 1.0, 3.0, 10.0, 60.0, 500.0}) {
      CHECK(regularized_gamma_p(a, x) + regularized_gamma_q(a, x) ==
            doctest::Approx(1.0).epsilon(1e-13));
    }
  }
}

#ifdef NDPSEQ_HAVE_BOOST_ORACLE
TEST_CASE("special functions agree with Boost.Math") {
  for (double x : {1e-5, 0.3, 1.5, 4.25, 17.0, 123.456, 1e5}) {
    CHECK(close_rel(log_gamma(x), boost::math::lgamma(x), 1e-13, 1e-14));
  }
  for (double a : {0.1, 0.5, 1.0, 3.0, 16.0 / 3.0, 50.0, 250.0}) {
    for (double x : {1e-3, 0.5, 1.0, 3.0, 10.0, 60.0, 300.0}) {
      INFO("a = " << a << ", x = " << x);
      CHECK(close_rel(regularized_gamma_p(a, x), boost::math::gamma_p(a, x), 1e-12, 1e-300));
      CHECK(close_rel(regularized_gamma_q(a, x), boost::math::gamma_q(a, x), 1e-12, 1e-300));
    }
  }
}
#endif

TEST_CASE("log_sum_exp") {
  std::vector<double> empty;
  CHECK(log_sum_exp(empty) == -std::numeric_limits<double>::infinity());
  std::vector<double> big{1000.0, 1000.0};
  CHECK(log_sum_exp(big) == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-15));
  std::vector<double> mixed{-std::numeric_limits<double>::infinity(), std::log(3.0), std::log(5.0)};
  CHECK(log_sum_exp(mixed) == doctest::Approx(std::log(8.0)).epsilon(1e-15));
}
