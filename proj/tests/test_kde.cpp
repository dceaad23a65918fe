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
#include <cmath>
#include <numbers>
#include <vector>

#include "ndpseq/datasets.hpp"
#include "ndpseq/engine.hpp"
#include "ndpseq/error.hpp"
#include "ndpseq/kde.hpp"

using namespace ndpseq;

namespace {

WeightedSampleLaw make_law(std::vector<double> atoms, std::vector<double> weights) {
  WeightedSampleLaw law;
  law.atoms = std::move(atoms);
  law.weights = std::move(weights);
  law.prior_begin = law.atoms.size();
  return law;
}

std::size_t local_maxima(const KdeCurve& curve) {
  std::size_t count = 0;
  for (std::size_t i = 1; i + 1 < curve.values.size(); ++i) {
    if (curve.values[i] > curve.values[i - 1] && curve.values[i] >= curve.values[i + 1]) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("Scott bandwidth with uniform weights is the unweighted rule") {
  const std::vector<double> atoms{0.1, 0.4, 0.45, 0.8, 1.3, 2.0};
  const double n = static_cast<double>(atoms.size());
  double mean = 0.0;
  for (double a : atoms) mean += a / n;
  double var = 0.0;
  for (double a : atoms) var += (a - mean) * (a - mean) / n;
  const auto law = make_law(atoms, std::vector<double>(atoms.size(), 1.0 / n));
  CHECK(scott_bandwidth(law) == doctest::Approx(std::sqrt(var) * std::pow(n, -0.2)).epsilon(1e-14));
}

TEST_CASE("Scott bandwidth on two equal atoms") {
  const auto law = make_law({0.0, 1.0}, {0.5, 0.5});
  CHECK(scott_bandwidth(law) == doctest::Approx(0.5 * std::pow(2.0, -0.2)).epsilon(1e-14));
}

TEST_CASE("degenerate and empty laws") {
  CHECK_THROWS_AS(scott_bandwidth(make_law({0.3, 0.3}, {0.5, 0.5})), DegenerateError);
  CHECK_THROWS_AS(kde(make_law({}, {})), ValidationError);
  CHECK_THROWS_AS(kde(make_law({0.3}, {1.0}), -1.0), DomainError);
}

TEST_CASE("single atom gives a normal density") {
  const auto curve = kde(make_law({0.3}, {1.0}), 0.1);
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const double z = (curve.grid[i] - 0.3) / 0.1;
    const double expected = std::exp(-0.5 * z * z) / (0.1 * std::sqrt(2.0 * std::numbers::pi));
    REQUIRE(curve.values[i] == doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK(curve.grid.front() == doctest::Approx(0.0));
  CHECK(curve.grid.back() == doctest::Approx(0.6));
}

TEST_CASE("curve integrates to one over a wide grid") {
  const auto law = make_law({0.1, 0.35, 0.9}, {0.2, 0.5, 0.3});
  const double h = 0.05;
  GridSpec grid;
  grid.points = 4000;
  grid.lower = 0.1 - 6 * h;
  grid.upper = 0.9 + 6 * h;
  CHECK(integrate(kde(law, h, grid)) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("permuting atoms and scaling weights change nothing") {
  const auto law = make_law({0.1, 0.35, 0.9, 0.5}, {0.2, 0.4, 0.3, 0.1});
  const auto permuted = make_law({0.9, 0.5, 0.1, 0.35}, {0.3, 0.1, 0.2, 0.4});
  const auto doubled = make_law({0.1, 0.35, 0.9, 0.5}, {0.4, 0.8, 0.6, 0.2});
  const auto a = kde(law);
  const auto b = kde(permuted);
  const auto c = kde(doubled);
  CHECK(a.bandwidth == doctest::Approx(b.bandwidth).epsilon(1e-14));
  CHECK(a.bandwidth == doctest::Approx(c.bandwidth).epsilon(1e-14));
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    REQUIRE(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-12));
    REQUIRE(a.values[i] == doctest::Approx(c.values[i]).epsilon(1e-12));
  }
}

TEST_CASE("small bandwidth concentrates mass at the atoms") {
  const auto law = make_law({0.2, 0.7}, {0.3, 0.7});
  const double h = 1e-4;
  // A Gaussian kernel keeps erf(3 / sqrt 2) of its mass within 3h.
  const double inside = std::erf(3.0 / std::sqrt(2.0));
  for (std::size_t k = 0; k < 2; ++k) {
    GridSpec grid;
    grid.points = 2001;
    grid.lower = law.atoms[k] - 3 * h;
    grid.upper = law.atoms[k] + 3 * h;
    const double mass = integrate(kde(law, h, grid));
    CHECK(std::fabs(mass - law.weights[k] * inside) < 1e-3);
    grid.lower = law.atoms[k] - 8 * h;
    grid.upper = law.atoms[k] + 8 * h;
    CHECK(std::fabs(integrate(kde(law, h, grid)) - law.weights[k]) < 1e-3);
  }
}

TEST_CASE("clipping restricts the grid") {
  GridSpec grid;
  grid.clip = std::pair{0.0, 1.0};
  const auto curve = kde(make_law({0.02, 0.98}, {0.5, 0.5}), 0.1, grid);
  CHECK(curve.grid.front() == 0.0);
  CHECK(curve.grid.back() == 1.0);
  for (std::size_t i = 1; i < curve.grid.size(); ++i) REQUIRE(curve.grid[i] > curve.grid[i - 1]);
}

TEST_CASE("tiny bandwidth on the penny new-agent law is spiky") {
  const auto s = load_scenario("pennies");
  const auto batch = run_batch(s.data, s.config, {2000, 1, 0.0, 1});
  const auto law = new_agent_law(batch, Functional::new_agent_component(1), {2000, 1});
  GridSpec grid;
  grid.points = 4000;
  grid.clip = std::pair{0.0, 1.0};
  const auto smooth = kde(law, std::nullopt, grid);
  const auto spiky = kde(law, 0.001, grid);
  CHECK(local_maxima(spiky) > 10 * std::max<std::size_t>(local_maxima(smooth), 1));
  CHECK(smooth.bandwidth_from_scott);
  const auto csv = kde_csv(spiky);
  CHECK(csv.rfind("x,density\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4001);
  CHECK(kde_svg(spiky, "a < b").find("a &lt; b") != std::string::npos);
}
