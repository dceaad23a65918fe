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

#ifndef NDPSEQ_SPECIAL_HPP
#define NDPSEQ_SPECIAL_HPP

#include <span>

namespace ndpseq {

/// log Gamma(x) for x > 0. Reentrant (does not touch the global signgam).
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
/// Series for x < a + 1, Lentz continued fraction for the complement otherwise.
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// log(sum(exp(v))) with max shift. Returns -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> values);

}  // namespace ndpseq

#endif  // NDPSEQ_SPECIAL_HPP
