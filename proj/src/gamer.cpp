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

#include "ndpseq/gamer.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ndpseq/error.hpp"
#include "ndpseq/quadrature.hpp"
#include "ndpseq/special.hpp"

namespace ndpseq::gamer {

void GamerParams::validate() const {
  for (double v : {r, c, alpha}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError("gamer parameters r, c, alpha must be positive and finite");
    }
  }
}

double pdf(const GamerParams& params, double x) {
  params.validate();
  if (!(x > 0.0)) throw DomainError("gamer density is defined for x > 0");
  if (std::isinf(x)) return 0.0;
  const double shape = params.alpha + params.r;
  const double p = regularized_gamma_p(shape, params.alpha * x / params.c);
  if (p == 0.0) return 0.0;
  const double log_f = std::log(params.r) + params.r * std::log(params.c / params.alpha) +
                       log_gamma(shape) - log_gamma(params.alpha) -
                       (params.r + 1.0) * std::log(x) + std::log(p);
  return std::exp(log_f);
}

namespace {

// b^-r Gamma(alpha + r) / Gamma(alpha) P(alpha + r, b)
double tail_term(const GamerParams& params, double b) {
  const double shape = params.alpha + params.r;
  const double p = regularized_gamma_p(shape, b);
  if (p == 0.0) return 0.0;
  return std::exp(-params.r * std::log(b) + log_gamma(shape) - log_gamma(params.alpha)) * p;
}

}  // namespace

double cdf(const GamerParams& params, double x) {
  params.validate();
  if (std::isnan(x) || x < 0.0) throw DomainError("gamer cdf needs x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double b = params.alpha * x / params.c;
  const double value = regularized_gamma_p(params.alpha, b) - tail_term(params, b);
  return std::clamp(value, 0.0, 1.0);
}

double survival(const GamerParams& params, double x) {
  params.validate();
  if (std::isnan(x) || x < 0.0) throw DomainError("gamer survival needs x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double b = params.alpha * x / params.c;
  const double value = regularized_gamma_q(params.alpha, b) + tail_term(params, b);
  return std::clamp(value, 0.0, 1.0);
}

double cdf_by_quadrature(const GamerParams& params, double x) {
  params.validate();
  if (std::isnan(x) || x < 0.0) throw DomainError("gamer cdf needs x >= 0");
  if (x == 0.0) return 0.0;
  auto density = [&](double t) { return t > 0.0 ? pdf(params, t) : 0.0; };
  if (std::isinf(x)) return adaptive_simpson_to_infinity(density, 0.0, 1e-10);
  return adaptive_simpson(density, 0.0, x, 1e-10);
}

double sample(const GamerParams& params, RandomStream& rng) {
  params.validate();
  const double mean = params.c * std::pow(rng.uniform(), -1.0 / params.r);
  return rng.gamma(params.alpha) * mean / params.alpha;
}

SimplexVector discretize(const GamerParams& params, std::size_t num_states) {
  params.validate();
  if (num_states < 2) throw ValidationError("discretization needs L >= 2");
  const std::size_t cap = num_states - 1;
  // Mass of [lo, hi), using whichever of F or 1 - F is small to keep
  // relative accuracy in both tails.
  auto mass = [&](double lo, double hi) {
    const double f_lo = cdf(params, lo);
    if (f_lo < 0.5) return cdf(params, hi) - f_lo;
    return survival(params, lo) - survival(params, hi);
  };
  std::vector<double> p(num_states);
  p[0] = cdf(params, 0.5);
  for (std::size_t l = 1; l < cap; ++l) {
    p[l] = mass(static_cast<double>(l) - 0.5, static_cast<double>(l) + 0.5);
  }
  p[cap] = survival(params, static_cast<double>(cap) - 0.5);
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
  return SimplexVector(std::move(p));
}

}  // namespace ndpseq::gamer
