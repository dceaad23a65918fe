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

#include "ndpseq/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "ndpseq/error.hpp"
#include "ndpseq/special.hpp"

namespace ndpseq {

std::uint64_t bell_number(std::size_t n) {
  if (n > 25) throw DomainError("Bell numbers above B_25 overflow 64 bits");
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

namespace {

using Mask = std::uint32_t;

// Pooled statistics of a set of rows, computed lazily per subset mask.
class BlockTable {
 public:
  BlockTable(const ObservationArray& data, const ModelConfig& config)
      : data_(data), config_(config), num_states_(config.num_states()) {
    const std::size_t masks = std::size_t{1} << data.num_rows();
    log_marginal_.assign(masks, std::numeric_limits<double>::quiet_NaN());
    alpha_.resize(masks);
  }

  double log_marginal(Mask mask) {
    double& slot = log_marginal_[mask];
    if (std::isnan(slot)) {
      slot = log_marginal_likelihood(pooled_counts(mask), config_.eps(), config_.base());
    }
    return slot;
  }

  /// eps p + pooled counts.
  const std::vector<double>& alpha(Mask mask) {
    auto& slot = alpha_[mask];
    if (slot.empty()) {
      slot = dirichlet_posterior_params(config_.eps(), config_.base(), pooled_counts(mask));
    }
    return slot;
  }

 private:
  CountVector pooled_counts(Mask mask) const {
    CountVector pooled(num_states_, 0);
    for (std::size_t m = 0; m < data_.num_rows(); ++m) {
      if (!(mask & (Mask{1} << m))) continue;
      for (const auto& [state, count] : data_.nonzero(m)) pooled[state] += count;
    }
    return pooled;
  }

  const ObservationArray& data_;
  const ModelConfig& config_;
  std::size_t num_states_;
  std::vector<double> log_marginal_;
  std::vector<std::vector<double>> alpha_;
};

// Calls visit(labels) for every restricted growth string of length n, in
// lexicographic order.
template <typename Visit>
void for_each_partition(std::size_t n, Visit&& visit) {
  std::vector<std::uint8_t> a(n, 0);
  std::vector<std::uint8_t> prefix_max(n, 0);  // max of a[0..i]
  for (;;) {
    visit(std::span<const std::uint8_t>(a));
    // Rightmost position that may still grow.
    std::size_t i = n;
    while (i > 1 && a[i - 1] > prefix_max[i - 2]) --i;
    if (i <= 1) return;
    --i;
    ++a[i];
    prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      a[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

std::array<Mask, kMaxOracleRows> block_masks(std::span<const std::uint8_t> labels,
                                             std::size_t& num_blocks) {
  std::array<Mask, kMaxOracleRows> masks{};
  num_blocks = 0;
  for (std::size_t m = 0; m < labels.size(); ++m) {
    masks[labels[m]] |= Mask{1} << m;
    num_blocks = std::max<std::size_t>(num_blocks, labels[m] + 1u);
  }
  return masks;
}

double mean_score(const std::vector<double>& alpha) {
  double total = 0.0;
  double acc = 0.0;
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    total += alpha[l];
    acc += static_cast<double>(l) * alpha[l];
  }
  return acc / total;
}

// E[sum_{l > l'} x_l y_l'] for x = y drawn once from Dir(alpha).
double contest_same_block(const std::vector<double>& alpha) {
  const double total = std::accumulate(alpha.begin(), alpha.end(), 0.0);
  double below = 0.0;
  double acc = 0.0;
  for (double a : alpha) {
    acc += a * below;
    below += a;
  }
  return acc / (total * (total + 1.0));
}

// Same with x ~ Dir(ax), y ~ Dir(ay) independent.
double contest_independent(const std::vector<double>& ax, const std::vector<double>& ay) {
  const double tx = std::accumulate(ax.begin(), ax.end(), 0.0);
  const double ty = std::accumulate(ay.begin(), ay.end(), 0.0);
  double below = 0.0;
  double acc = 0.0;
  for (std::size_t l = 0; l < ax.size(); ++l) {
    acc += ax[l] * below;
    below += ay[l];
  }
  return acc / (tx * ty);
}

}  // namespace

PartitionPosterior enumerate_posterior(const ObservationArray& data, const ModelConfig& config) {
  const std::size_t rows = data.num_rows();
  if (rows > kMaxOracleRows) {
    throw ValidationError("exact enumeration is capped at M = " + std::to_string(kMaxOracleRows) +
                          " rows (Bell number B_12 = 4213597 partitions); M = " + std::to_string(rows) +
                          " would need B_" + std::to_string(rows) + " = " +
                          std::to_string(bell_number(rows)) + " partitions");
  }
  if (rows == 0) throw ValidationError("exact enumeration needs at least one row");
  if (data.num_states() != config.num_states()) {
    throw ShapeError("data and model disagree on the number of states");
  }

  BlockTable table(data, config);
  const double log_kappa = std::log(config.kappa());
  double log_rising = 0.0;
  for (std::size_t m = 0; m < rows; ++m) log_rising += std::log(config.kappa() + static_cast<double>(m));

  PartitionPosterior out;
  out.num_rows = rows;
  const auto count = bell_number(rows);
  out.labels.reserve(count * rows);
  out.log_post_weights.reserve(count);

  for_each_partition(rows, [&](std::span<const std::uint8_t> labels) {
    std::size_t num_blocks = 0;
    const auto masks = block_masks(labels, num_blocks);
    double lw = static_cast<double>(num_blocks) * log_kappa - log_rising;
    for (std::size_t b = 0; b < num_blocks; ++b) {
      lw += log_gamma(static_cast<double>(std::popcount(masks[b])));
      lw += table.log_marginal(masks[b]);
    }
    out.labels.insert(out.labels.end(), labels.begin(), labels.end());
    out.log_post_weights.push_back(lw);
  });

  const double log_norm = log_sum_exp(out.log_post_weights);
  for (double& lw : out.log_post_weights) lw -= log_norm;
  return out;
}

double exact_expectation(const PartitionPosterior& posterior, const Functional& f,
                         const ObservationArray& data, const ModelConfig& config) {
  const std::size_t rows = data.num_rows();
  if (posterior.num_rows != rows) throw ShapeError("posterior was built for a different array");
  f.validate(rows, config.num_states());

  if (f.kind == FunctionalKind::kIndicatorLess) {
    throw UnsupportedError("'" + f.to_string() +
                           "' has no closed-form moment; use the simulation engine");
  }
  if (f.kind == FunctionalKind::kNewAgentComponent || f.kind == FunctionalKind::kNewAgentMean) {
    const double kappa = config.kappa();
    const double prior = evaluate_on_vector(f, config.base().values());
    double rows_total = 0.0;
    for (std::size_t m = 1; m <= rows; ++m) {
      const auto per_row = f.kind == FunctionalKind::kNewAgentMean
                               ? Functional::mean_score(m)
                               : Functional::component(m, f.state);
      rows_total += exact_expectation(posterior, per_row, data, config);
    }
    return (kappa * prior + rows_total) / (kappa + static_cast<double>(rows));
  }

  BlockTable table(data, config);
  std::unordered_map<std::uint64_t, double> pair_cache;
  double acc = 0.0;
  for (std::size_t i = 0; i < posterior.size(); ++i) {
    const auto labels = posterior.partition(i);
    std::size_t num_blocks = 0;
    const auto masks = block_masks(labels, num_blocks);
    const Mask own = f.row > 0 ? masks[labels[f.row - 1]] : 0;
    const Mask other = f.other_row > 0 ? masks[labels[f.other_row - 1]] : 0;
    double value = 0.0;
    switch (f.kind) {
      case FunctionalKind::kComponent: {
        const auto& alpha = table.alpha(own);
        value = alpha[f.state] / std::accumulate(alpha.begin(), alpha.end(), 0.0);
        break;
      }
      case FunctionalKind::kMeanScore:
        value = mean_score(table.alpha(own));
        break;
      case FunctionalKind::kMeanDiff:
        value = mean_score(table.alpha(own)) - mean_score(table.alpha(other));
        break;
      case FunctionalKind::kCocluster:
        value = own == other ? 1.0 : 0.0;
        break;
      case FunctionalKind::kContest: {
        const std::uint64_t key = (static_cast<std::uint64_t>(own) << 32) | other;
        auto it = pair_cache.find(key);
        if (it == pair_cache.end()) {
          const double v = own == other ? contest_same_block(table.alpha(own))
                                        : contest_independent(table.alpha(own), table.alpha(other));
          it = pair_cache.emplace(key, v).first;
        }
        value = it->second;
        break;
      }
      default:
        throw UnsupportedError("'" + f.to_string() + "' is not supported by the exact oracle");
    }
    acc += std::exp(posterior.log_post_weights[i]) * value;
  }
  return acc;
}

std::string format_partition(std::span<const std::uint8_t> labels) {
  std::size_t blocks = 0;
  for (auto l : labels) blocks = std::max<std::size_t>(blocks, l + 1u);
  std::string out;
  for (std::size_t b = 0; b < blocks; ++b) {
    out += '{';
    bool first = true;
    for (std::size_t m = 0; m < labels.size(); ++m) {
      if (labels[m] != b) continue;
      if (!first) out += ',';
      out += std::to_string(m + 1);
      first = false;
    }
    out += '}';
  }
  return out;
}

std::vector<std::size_t> top_partitions(const PartitionPosterior& posterior, std::size_t n) {
  std::vector<std::size_t> order(posterior.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  n = std::min(n, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (posterior.log_post_weights[a] != posterior.log_post_weights[b]) {
                        return posterior.log_post_weights[a] > posterior.log_post_weights[b];
                      }
                      return a < b;
                    });
  order.resize(n);
  return order;
}

}  // namespace ndpseq
