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

#ifndef NDPSEQ_QUERIES_HPP
#define NDPSEQ_QUERIES_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ndpseq/model.hpp"

namespace ndpseq {

enum class FunctionalKind {
  kComponent,          // theta_{m,l}
  kMeanScore,          // A(theta_m) = sum_l l theta_{m,l}
  kNewAgentComponent,  // theta_{M+1,l}
  kNewAgentMean,       // A(theta_{M+1})
  kContest,            // C(theta_m1, theta_m2) = sum_{l > l'} theta_m1,l theta_m2,l'
  kMeanDiff,           // A(theta_m1) - A(theta_m2)
  kCocluster,          // 1 when rows i and j share a distribution
  kIndicatorLess,      // 1 when inner < threshold
};

/**
 * A scalar function of the row distributions.
 *
 * Row indices are 1-based (row m of the data is `m`); states are 0-based, so
 * `Functional::component(5, 1)` is theta_{5,1}, the heads probability of the
 * fifth coin.
 */
struct Functional {
  FunctionalKind kind = FunctionalKind::kComponent;
  std::size_t row = 0;
  std::size_t other_row = 0;
  std::size_t state = 0;
  double threshold = 0.0;
  std::shared_ptr<const Functional> inner;

  static Functional component(std::size_t row, std::size_t state);
  static Functional mean_score(std::size_t row);
  static Functional new_agent_component(std::size_t state);
  static Functional new_agent_mean();
  static Functional contest(std::size_t row, std::size_t other_row);
  static Functional mean_diff(std::size_t row, std::size_t other_row);
  static Functional cocluster(std::size_t row, std::size_t other_row);
  static Functional indicator_less(Functional inner, double threshold);

  /// Concerns the distribution of a new, unobserved row.
  bool is_new_agent() const;
  /// Linear in theta, so its prior mean is available in closed form.
  bool is_linear() const;
  /// Canonical text form, parseable by parse_functional.
  std::string to_string() const;

  /// Throws ValidationError unless indices fit M rows and L states.
  void validate(std::size_t num_rows, std::size_t num_states) const;
};

/// Parses the whitespace-separated query form, e.g. "component 5 1",
/// "new_agent_mean", "lt 0.5 component 5 1".
Functional parse_functional(std::string_view text);

/// A functional plus thresholds for P(f < t) reporting: "<functional> (below T)*".
struct Query {
  Functional functional;
  std::vector<double> below;
  std::string text;
};

Query parse_query(std::string_view text);

/// Weighted empirical law of a functional. Weights (including any prior
/// Monte Carlo atoms) sum to 1.
struct WeightedSampleLaw {
  std::vector<double> atoms;
  std::vector<double> weights;
  /// Atoms from `prior_begin` on are an auxiliary sample from the prior
  /// pushforward, carrying total mass `prior_mass`.
  std::size_t prior_begin = 0;
  double prior_mass = 0.0;
  /// Exact prior-component mean when the functional is linear.
  std::optional<double> prior_mean;
};

struct PriorSampleOptions {
  std::size_t size = 10000;
  /// Stream seed; unset means the batch seed.
  std::optional<std::uint64_t> seed;
};

/// Law of a row functional over the batch; new-agent functionals are
/// forwarded to new_agent_law.
WeightedSampleLaw law_of(const SimulationBatch& batch, const Functional& f,
                         const PriorSampleOptions& prior = {});

/// kappa/(kappa+M) prior pushforward mixed with 1/(kappa+M) of each row's law.
WeightedSampleLaw new_agent_law(const SimulationBatch& batch, const Functional& f,
                                const PriorSampleOptions& prior = {});

double expectation(const WeightedSampleLaw& law);

/// Mass of atoms strictly below the threshold.
double probability_below(const WeightedSampleLaw& law, double threshold);

/// Posterior mean with its weighted Monte Carlo standard error
/// sqrt(sum_k w_k^2 (g_k - mean)^2).
struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
};

Estimate estimate(const SimulationBatch& batch, const Functional& f,
                  const PriorSampleOptions& prior = {});

/// Weighted fraction of simulations in which rows i and j share a cluster.
/// Row-major M x M.
std::vector<double> cocluster_matrix(const SimulationBatch& batch);

/// Posterior predictive law of the next observation of row m (1-based);
/// m = M + 1 gives the new-agent predictive.
SimplexVector predictive_next(const SimulationBatch& batch, std::size_t row);

/// Evaluates a non-new-agent functional on one simulation.
double evaluate(const Functional& f, const WeightedSimulation& sim, std::size_t num_states);

/// Evaluates a new-agent functional on one distribution vector.
double evaluate_on_vector(const Functional& f, std::span<const double> theta);

}  // namespace ndpseq

#endif  // NDPSEQ_QUERIES_HPP
