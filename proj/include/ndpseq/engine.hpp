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

#ifndef NDPSEQ_ENGINE_HPP
#define NDPSEQ_ENGINE_HPP

#include <cstdint>
#include <optional>
#include <span>

#include "ndpseq/model.hpp"
#include "ndpseq/random.hpp"

/**
 * \file
 * \brief Sequential imputation for the nested Dirichlet process on a finite
 * state space.
 *
 * Rows are visited in order. Row m either joins the distribution already
 * simulated for an earlier row i, with weight t_mi = prod_l theta*_il^y_ml, or
 * draws a fresh vector from Dir(eps p + y_m), with weight t_mm = kappa times
 * the row's marginal likelihood. The simulation's log weight accumulates
 * log(sum_i t_mi) - log(kappa + m - 1).
 */

namespace ndpseq {

struct EngineOptions {
  std::size_t num_simulations = 10000;
  std::uint64_t seed = 0;
  /// log c; only affects reported raw weights.
  double log_scale_factor = 0.0;
  /// Worker threads; unset means hardware concurrency.
  std::optional<std::size_t> threads;
};

/// Generates one weighted simulation. The caller owns the random stream.
WeightedSimulation simulate_one(const ObservationArray& data, const ModelConfig& config,
                                RandomStream& rng);

/// K simulations; simulation k draws from stream (seed, k), so the result does
/// not depend on the thread count.
SimulationBatch run_batch(const ObservationArray& data, const ModelConfig& config,
                          const EngineOptions& options);

/// Effective sample sizes from nonnegative weights (any scale).
EssStats ess(std::span<const double> weights);

/// Effective sample sizes from log weights via shifted exponentials.
EssStats ess_from_log(std::span<const double> log_weights);

/// Normalized weights from log weights (max shift then divide by the sum).
std::vector<double> normalize_log_weights(std::span<const double> log_weights);

/// Drops the n heaviest simulations, renormalizes and recomputes ESS with the
/// remaining count. Ties are broken by lower index first. Takes the batch by
/// value; move it in to avoid copying the stored vectors.
SimulationBatch trim_heaviest(SimulationBatch batch, std::size_t n);

/// Recomputes a simulation's log weight from its stored vectors and cluster
/// map. Used as a consistency check.
double recompute_log_weight(const WeightedSimulation& sim, const ObservationArray& data,
                            const ModelConfig& config);

}  // namespace ndpseq

#endif  // NDPSEQ_ENGINE_HPP
