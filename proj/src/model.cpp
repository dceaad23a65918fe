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

#include "ndpseq/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ndpseq/error.hpp"
#include "ndpseq/special.hpp"

namespace ndpseq {

ModelConfig::ModelConfig(double kappa, double eps, SimplexVector base)
    : kappa_(kappa), eps_(eps), base_(std::move(base)) {
  if (!(kappa_ > 0.0) || !std::isfinite(kappa_)) {
    throw ValidationError("column concentration kappa must be positive and finite");
  }
  if (!(eps_ > 0.0) || !std::isfinite(eps_)) {
    throw ValidationError("row concentration eps must be positive and finite");
  }
  if (!base_.strictly_positive()) {
    throw ValidationError("base measure must have every entry strictly positive");
  }
}

ObservationArray ObservationArray::from_counts(std::vector<CountVector> counts,
                                               std::size_t num_states) {
  if (num_states < 2) throw ValidationError("number of states L must be at least 2");
  ObservationArray out;
  out.num_states_ = num_states;
  out.counts_.reserve(counts.size() * num_states);
  for (std::size_t m = 0; m < counts.size(); ++m) {
    if (counts[m].size() != num_states) {
      throw ShapeError("row " + std::to_string(m + 1) + " has " +
                       std::to_string(counts[m].size()) + " counts, expected " +
                       std::to_string(num_states));
    }
    std::int64_t total = 0;
    for (auto c : counts[m]) {
      if (c < 0) {
        throw ValidationError("row " + std::to_string(m + 1) + " has a negative count");
      }
      total += c;
    }
    out.counts_.insert(out.counts_.end(), counts[m].begin(), counts[m].end());
    out.lengths_.push_back(total);
  }
  out.index();
  return out;
}

void ObservationArray::index() {
  nonzero_.clear();
  nonzero_offsets_.assign(1, 0);
  for (std::size_t m = 0; m < lengths_.size(); ++m) {
    const auto row = counts(m);
    for (std::size_t l = 0; l < row.size(); ++l) {
      if (row[l] > 0) nonzero_.emplace_back(static_cast<std::uint32_t>(l), row[l]);
    }
    nonzero_offsets_.push_back(nonzero_.size());
  }
}

std::int64_t ObservationArray::total_observations() const {
  std::int64_t total = 0;
  for (auto n : lengths_) total += n;
  return total;
}

ObservationArray validate_and_count(const std::vector<std::vector<std::int64_t>>& rows,
                                    std::size_t num_states) {
  if (num_states < 2) throw ValidationError("number of states L must be at least 2");
  if (rows.empty()) throw ValidationError("observation array has no rows");
  std::vector<CountVector> counts(rows.size(), CountVector(num_states, 0));
  for (std::size_t m = 0; m < rows.size(); ++m) {
    for (std::size_t n = 0; n < rows[m].size(); ++n) {
      const auto label = rows[m][n];
      if (label < 0 || static_cast<std::size_t>(label) >= num_states) {
        throw ValidationError("label " + std::to_string(label) + " at row " +
                              std::to_string(m + 1) + ", position " + std::to_string(n + 1) +
                              " is outside [0, " + std::to_string(num_states) + ")");
      }
      ++counts[m][static_cast<std::size_t>(label)];
    }
  }
  auto out = ObservationArray::from_counts(std::move(counts), num_states);
  out.raw_rows_ = rows;
  return out;
}

ObservationArray bin_continuous(const std::vector<std::vector<double>>& values,
                                std::span<const double> edges) {
  if (edges.empty()) throw ValidationError("binning needs at least one breakpoint");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!std::isfinite(edges[i])) throw ValidationError("breakpoints must be finite");
    if (i > 0 && !(edges[i] > edges[i - 1])) {
      throw ValidationError("breakpoints must be strictly increasing (index " +
                            std::to_string(i) + ")");
    }
  }
  std::vector<std::vector<std::int64_t>> labels(values.size());
  for (std::size_t m = 0; m < values.size(); ++m) {
    labels[m].reserve(values[m].size());
    for (double v : values[m]) {
      if (std::isnan(v)) {
        throw ValidationError("NaN value in row " + std::to_string(m + 1));
      }
      // Ties go right: the cell index is the number of breakpoints <= v.
      const auto cell = std::upper_bound(edges.begin(), edges.end(), v) - edges.begin();
      labels[m].push_back(static_cast<std::int64_t>(cell));
    }
  }
  return validate_and_count(labels, edges.size() + 1);
}

double SimulationBatch::scaled_log_weight(std::size_t k) const {
  const double m = static_cast<double>(num_rows);
  return sims[k].log_weight + m * log_scale_factor + log_gamma(m + 1.0);
}

}  // namespace ndpseq
