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

#ifndef NDPSEQ_MODEL_HPP
#define NDPSEQ_MODEL_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ndpseq/dirichlet.hpp"

namespace ndpseq {

/// Hyperparameters of a nested Dirichlet process on {0, ..., L-1}.
class ModelConfig {
 public:
  /// kappa: column concentration; eps: row concentration; base: p, every
  /// entry strictly positive.
  ModelConfig(double kappa, double eps, SimplexVector base);

  double kappa() const { return kappa_; }
  double eps() const { return eps_; }
  const SimplexVector& base() const { return base_; }
  std::size_t num_states() const { return base_.size(); }

 private:
  double kappa_;
  double eps_;
  SimplexVector base_;
};

/// A jagged array of categorical observations, reduced to per-row counts.
class ObservationArray {
 public:
  /// Builds from count vectors. An empty list is allowed here (the no-data
  /// case); `validate_and_count` rejects it for raw input.
  static ObservationArray from_counts(std::vector<CountVector> counts, std::size_t num_states);

  std::size_t num_rows() const { return lengths_.size(); }
  std::size_t num_states() const { return num_states_; }

  /// Counts of row m (0-based).
  std::span<const std::int64_t> counts(std::size_t m) const {
    return {counts_.data() + m * num_states_, num_states_};
  }
  std::int64_t row_length(std::size_t m) const { return lengths_[m]; }

  /// (state, count) pairs with count > 0, ascending by state.
  std::span<const std::pair<std::uint32_t, std::int64_t>> nonzero(std::size_t m) const {
    return {nonzero_.data() + nonzero_offsets_[m], nonzero_offsets_[m + 1] - nonzero_offsets_[m]};
  }

  /// Raw label sequences when the array was built from labels, else empty.
  const std::vector<std::vector<std::int64_t>>& raw_rows() const { return raw_rows_; }

  std::int64_t total_observations() const;

 private:
  friend ObservationArray validate_and_count(const std::vector<std::vector<std::int64_t>>&,
                                             std::size_t);

  ObservationArray() = default;
  void index();

  std::size_t num_states_ = 0;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> lengths_;
  std::vector<std::pair<std::uint32_t, std::int64_t>> nonzero_;
  std::vector<std::size_t> nonzero_offsets_;
  std::vector<std::vector<std::int64_t>> raw_rows_;
};

/// Tallies labels per row. Labels must lie in [0, L); at least one row.
ObservationArray validate_and_count(const std::vector<std::vector<std::int64_t>>& rows,
                                    std::size_t num_states);

/// Maps real values to cells of the partition defined by strictly increasing
/// breakpoints: cell 0 is (-inf, e0), cell i is [e(i-1), e(i)), the last cell
/// is [e(n-1), inf). L = edges.size() + 1.
ObservationArray bin_continuous(const std::vector<std::vector<double>>& values,
                                std::span<const double> edges);

/// One weighted simulation of the row distributions theta*_1..theta*_M.
///
/// Rows that share a cluster share one stored vector, so the aliasing
/// theta*_m == theta*_{cluster_of[m]} holds bit for bit.
struct WeightedSimulation {
  /// Root row (0-based, <= m) of the cluster that row m joined.
  std::vector<std::uint32_t> cluster_of;
  /// Index into `thetas` (in units of L) of the vector used by row m.
  std::vector<std::uint32_t> slot_of;
  /// Distinct cluster vectors, row-major, num_clusters() x L.
  std::vector<double> thetas;
  /// Sum over rows of log(sum_i t_mi) - log(kappa + m - 1).
  double log_weight = 0.0;

  std::size_t num_clusters(std::size_t num_states) const { return thetas.size() / num_states; }

  std::span<const double> theta(std::size_t m, std::size_t num_states) const {
    return {thetas.data() + static_cast<std::size_t>(slot_of[m]) * num_states, num_states};
  }
};

struct EssStats {
  double prime = 0.0;         // (sum W)^2 / sum W^2
  double double_prime = 0.0;  // sample-variance variant
};

/// K weighted simulations together with their normalized weights.
struct SimulationBatch {
  ModelConfig config;
  std::size_t num_rows = 0;
  std::vector<WeightedSimulation> sims;
  std::vector<double> normalized_weights;
  EssStats ess;
  std::uint64_t seed = 0;
  double log_scale_factor = 0.0;
  /// Index of each simulation in the untrimmed batch (its stream id).
  std::vector<std::size_t> source_index;
  /// Untrimmed indices of simulations removed by trimming, in removal order.
  std::vector<std::size_t> trimmed;
  /// Simulation count before any trimming.
  std::size_t generated = 0;

  std::size_t size() const { return sims.size(); }
  std::size_t num_states() const { return config.num_states(); }

  /// log V_k with the c^M M! rescaling applied.
  double scaled_log_weight(std::size_t k) const;
};

}  // namespace ndpseq

#endif  // NDPSEQ_MODEL_HPP
