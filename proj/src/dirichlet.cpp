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

#include "ndpseq/dirichlet.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ndpseq/error.hpp"
#include "ndpseq/special.hpp"

namespace ndpseq {

SimplexVector::SimplexVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw ValidationError("simplex vector needs at least 2 entries, got " +
                          std::to_string(values_.size()));
  }
  double total = 0.0;
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError("simplex vector entries must be finite and nonnegative");
    }
    total += v;
  }
  if (std::fabs(total - 1.0) > kSumTolerance) {
    throw ValidationError("simplex vector entries must sum to 1 (sum is " +
                          std::to_string(total) + ")");
  }
}

SimplexVector SimplexVector::uniform(std::size_t size) {
  if (size < 2) throw ValidationError("simplex vector needs at least 2 entries");
  // 1/L summed L times can miss 1 by a few ulps, well inside tolerance.
  return SimplexVector(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

bool SimplexVector::strictly_positive() const {
  for (double v : values_) {
    if (!(v > 0.0)) return false;
  }
  return true;
}

double log_mv_beta(std::span<const double> x) {
  if (x.empty()) throw DomainError("log_mv_beta of an empty vector");
  double sum_log = 0.0;
  double total = 0.0;
  for (double v : x) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("log_mv_beta requires strictly positive finite arguments");
    }
    sum_log += log_gamma(v);
    total += v;
  }
  return sum_log - log_gamma(total);
}

namespace {

void check_likelihood_args(std::span<const std::int64_t> counts, double eps,
                           const SimplexVector& base) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw DomainError("row concentration eps must be positive");
  }
  if (counts.size() != base.size()) {
    throw ShapeError("count vector has " + std::to_string(counts.size()) +
                     " entries but base measure has " + std::to_string(base.size()));
  }
  if (!base.strictly_positive()) {
    throw DomainError("base measure must have every entry strictly positive");
  }
  for (auto c : counts) {
    if (c < 0) throw DomainError("counts must be nonnegative");
  }
}

}  // namespace

double log_marginal_likelihood(std::span<const std::int64_t> counts, double eps,
                               const SimplexVector& base) {
  check_likelihood_args(counts, eps, base);
  // Only states with a nonzero count contribute; the rest cancel exactly.
  double result = 0.0;
  std::int64_t total = 0;
  for (std::size_t l = 0; l < counts.size(); ++l) {
    if (counts[l] == 0) continue;
    const double a = eps * base[l];
    result += log_gamma(a + static_cast<double>(counts[l])) - log_gamma(a);
    total += counts[l];
  }
  if (total == 0) return 0.0;
  result -= log_gamma(eps + static_cast<double>(total)) - log_gamma(eps);
  return result;
}

double marginal_likelihood(std::span<const std::int64_t> counts, double eps,
                           const SimplexVector& base) {
  return std::exp(log_marginal_likelihood(counts, eps, base));
}

std::vector<double> dirichlet_posterior_params(double eps, const SimplexVector& base,
                                               std::span<const std::int64_t> counts) {
  if (counts.size() != base.size()) {
    throw ShapeError("count vector has " + std::to_string(counts.size()) +
                     " entries but base measure has " + std::to_string(base.size()));
  }
  if (!(eps > 0.0)) throw DomainError("row concentration eps must be positive");
  std::vector<double> alpha(base.size());
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    if (counts[l] < 0) throw DomainError("counts must be nonnegative");
    alpha[l] = eps * base[l] + static_cast<double>(counts[l]);
  }
  return alpha;
}

void sample_dirichlet_into(std::span<const double> alpha, RandomStream& rng,
                           std::span<double> log_scratch, std::span<double> out) {
  for (std::size_t l = 0; l < alpha.size(); ++l) log_scratch[l] = rng.log_gamma(alpha[l]);
  const double log_total = log_sum_exp(log_scratch.first(alpha.size()));
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    out[l] = std::exp(log_scratch[l] - log_total);
  }
}

SimplexVector sample_dirichlet(std::span<const double> alpha, RandomStream& rng) {
  if (alpha.size() < 2) {
    throw DomainError("Dirichlet sampling needs at least 2 parameters");
  }
  for (double a : alpha) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw DomainError("Dirichlet parameters must be strictly positive");
    }
  }
  std::vector<double> scratch(alpha.size());
  std::vector<double> out(alpha.size());
  sample_dirichlet_into(alpha, rng, scratch, out);
  // exp(x - lse) sums to 1 up to rounding; renormalize so the validated sum
  // tolerance holds for any L.
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& v : out) v /= total;
  return SimplexVector(std::move(out));
}

}  // namespace ndpseq
