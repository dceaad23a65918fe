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

#include "ndpseq/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ndpseq/error.hpp"

namespace ndpseq {

namespace {

constexpr int kMaxIterations = 100000;
constexpr double kRelTol = 1e-15;
constexpr double kTiny = 1e-300;

// Sum of x^n / ((a+1)...(a+n)), n >= 0; times the prefactor gives P(a, x).
double lower_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kRelTol) return sum;
  }
  throw DomainError("incomplete gamma series failed to converge");
}

// Continued fraction for Gamma(a, x) * e^x * x^-a (modified Lentz).
double upper_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kRelTol) return h;
  }
  throw DomainError("incomplete gamma continued fraction failed to converge");
}

void check_args(double a, double x) {
  if (!(a > 0.0) || std::isnan(x) || x < 0.0) {
    throw DomainError("incomplete gamma requires a > 0 and x >= 0");
  }
}

}  // namespace

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double regularized_gamma_p(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) {
    const double log_prefactor = a * std::log(x) - x - log_gamma(a);
    return std::exp(log_prefactor) * lower_series(a, x);
  }
  const double log_prefactor = a * std::log(x) - x - log_gamma(a);
  return 1.0 - std::exp(log_prefactor) * upper_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
  check_args(a, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  const double log_prefactor = a * std::log(x) - x - log_gamma(a);
  if (x < a + 1.0) return 1.0 - std::exp(log_prefactor) * lower_series(a, x);
  return std::exp(log_prefactor) * upper_fraction(a, x);
}

double log_sum_exp(std::span<const double> values) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double v : values) peak = std::max(peak, v);
  if (peak == -std::numeric_limits<double>::infinity()) return peak;
  if (std::isinf(peak)) return peak;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - peak);
  return peak + std::log(sum);
}

}  // namespace ndpseq
