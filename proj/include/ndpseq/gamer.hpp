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

#ifndef NDPSEQ_GAMER_HPP
#define NDPSEQ_GAMER_HPP

#include "ndpseq/dirichlet.hpp"
#include "ndpseq/random.hpp"

/**
 * \file
 * \brief Pareto-mixed gamma ("gamer") score distribution.
 *
 * If M is Pareto with minimum c and tail index r, and X | M ~ Gamma(alpha,
 * rate alpha / M), then X has density
 *
 *   f(x) = r (c / alpha)^r Gamma(alpha + r) / Gamma(alpha) x^(-r-1) P(alpha + r, alpha x / c)
 *
 * with P the regularized lower incomplete gamma function.
 */

namespace ndpseq::gamer {

struct GamerParams {
  double r = 7.0 / 3.0;  // tail index
  double c = 28.0;       // mean score at the low-skill end
  double alpha = 3.0;    // gamma shape ("lives")

  /// Throws ValidationError unless every parameter is positive and finite.
  void validate() const;
};

double pdf(const GamerParams& params, double x);

/// Closed form F(x) = P(alpha, b) - b^-r Gamma(alpha + r) / Gamma(alpha) P(alpha + r, b),
/// b = alpha x / c, obtained by integrating the Pareto mixture.
double cdf(const GamerParams& params, double x);

/// 1 - F(x) evaluated without cancellation in the upper tail.
double survival(const GamerParams& params, double x);

/// F(x) by adaptive Simpson quadrature of the density (absolute tolerance
/// 1e-10). Slower; kept as an independent route for checking cdf().
double cdf_by_quadrature(const GamerParams& params, double x);

/// Draws M = c U^(-1/r), then X ~ Gamma(alpha, rate alpha / M).
double sample(const GamerParams& params, RandomStream& rng);

/// Cell probabilities of the score rounded to the nearest integer and capped
/// at L - 1: p_0 = F(0.5), p_l = F(l + 0.5) - F(l - 0.5), p_{L-1} = 1 - F(L - 1.5).
SimplexVector discretize(const GamerParams& params, std::size_t num_states);

}  // namespace ndpseq::gamer

#endif  // NDPSEQ_GAMER_HPP
