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

#ifndef NDPSEQ_QUADRATURE_HPP
#define NDPSEQ_QUADRATURE_HPP

#include <cmath>
#include <functional>

namespace ndpseq {

/// Adaptive Simpson integration of f over [a, b] with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-10, int max_depth = 50);

/// Integral of f over [a, inf) via x = a + t / (1 - t). The integrand must
/// decay faster than 1/x.
double adaptive_simpson_to_infinity(const std::function<double(double)>& f, double a,
                                    double abs_tol = 1e-10, int max_depth = 50);

}  // namespace ndpseq

#endif  // NDPSEQ_QUADRATURE_HPP
