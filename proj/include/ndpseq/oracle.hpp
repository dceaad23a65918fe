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

#ifndef NDPSEQ_ORACLE_HPP
#define NDPSEQ_ORACLE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ndpseq/model.hpp"
#include "ndpseq/queries.hpp"

/**
 * \file
 * \brief Exact posterior over row partitions for small arrays.
 *
 * Rows with equal row distributions form the blocks of a partition pi. The
 * prior of pi is the Chinese restaurant process with concentration kappa,
 *
 *   P(pi) = kappa^|pi| prod_B (|B| - 1)! / prod_{m=0}^{M-1} (kappa + m),
 *
 * and given pi each block's pooled counts follow a Dirichlet-multinomial with
 * parameters eps p. Every posterior mean is then a finite sum over the Bell
 * number B_M of partitions of conditional Dirichlet moments.
 */

namespace ndpseq {

inline constexpr std::size_t kMaxOracleRows = 12;

/// Bell number B_n (n <= 25 fits in 64 bits).
std::uint64_t bell_number(std::size_t n);

struct PartitionPosterior {
  std::size_t num_rows = 0;
  /// Restricted growth strings, num_rows labels per partition, lexicographic.
  std::vector<std::uint8_t> labels;
  /// Normalized log posterior probability of each partition.
  std::vector<double> log_post_weights;

  std::size_t size() const { return log_post_weights.size(); }
  std::span<const std::uint8_t> partition(std::size_t i) const {
    return {labels.data() + i * num_rows, num_rows};
  }
};

/// Enumerates all set partitions of the M rows. Refuses M > kMaxOracleRows.
PartitionPosterior enumerate_posterior(const ObservationArray& data, const ModelConfig& config);

/// Exact posterior mean of component, mean_score, contest, mean_diff,
/// cocluster and the new-agent functionals. Indicator functionals have no
/// closed form and raise UnsupportedError.
double exact_expectation(const PartitionPosterior& posterior, const Functional& f,
                         const ObservationArray& data, const ModelConfig& config);

/// Partition in block notation with 1-based rows, e.g. "{1,2}{3}".
std::string format_partition(std::span<const std::uint8_t> labels);

/// Indices of the n most probable partitions, most probable first.
std::vector<std::size_t> top_partitions(const PartitionPosterior& posterior, std::size_t n);

}  // namespace ndpseq

#endif  // NDPSEQ_ORACLE_HPP
