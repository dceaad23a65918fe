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

#ifndef NDPSEQ_DIRICHLET_HPP
#define NDPSEQ_DIRICHLET_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ndpseq/random.hpp"

namespace ndpseq {

/// A probability vector over L >= 2 states.
class SimplexVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// Validates length >= 2, nonnegative entries, unit sum within kSumTolerance.
  explicit SimplexVector(std::vector<double> values);

  /// Uniform distribution over L states.
  static SimplexVector uniform(std::size_t size);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vector() const { return values_; }

  /// True when every entry is strictly positive.
  bool strictly_positive() const;

 private:
  std::vector<double> values_;
};

/// Observation tallies per state.
using CountVector = std::vector<std::int64_t>;

/// log B(x) = sum log Gamma(x_l) - log Gamma(sum x_l). Entries must be > 0.
double log_mv_beta(std::span<const double> x);

/// log of the Dirichlet-multinomial probability of one particular sequence
/// with the given counts: log B(eps p + counts) - log B(eps p).
double log_marginal_likelihood(std::span<const std::int64_t> counts, double eps,
                               const SimplexVector& base);

/// exp(log_marginal_likelihood(...)); may underflow for long rows.
double marginal_likelihood(std::span<const std::int64_t> counts, double eps,
                           const SimplexVector& base);

/// eps * p + counts, componentwise.
std::vector<double> dirichlet_posterior_params(double eps, const SimplexVector& base,
                                               std::span<const std::int64_t> counts);

/// One Dirichlet(alpha) draw via log-gamma variates, so tiny shapes do not
/// produce an all-zero vector.
SimplexVector sample_dirichlet(std::span<const double> alpha, RandomStream& rng);

/// Unchecked variant writing into `out`; `log_scratch` must have alpha.size()
/// entries. Used on the simulation hot path.
void sample_dirichlet_into(std::span<const double> alpha, RandomStream& rng,
                           std::span<double> log_scratch, std::span<double> out);

}  // namespace ndpseq

#endif  // NDPSEQ_DIRICHLET_HPP
