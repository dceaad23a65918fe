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

#include "ndpseq/quadrature.hpp"

#include "ndpseq/error.hpp"

namespace ndpseq {

namespace {

struct Panel {
  double a, b, fa, fm, fb, whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& p, double tol, int depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(p.a, m, p.fa, flm, p.fm);
  const double right = simpson(m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return refine(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1) +
         refine(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
  if (!(abs_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
  if (a == b) return 0.0;
  if (b < a) return -adaptive_simpson(f, b, a, abs_tol, max_depth);
  // Start from 16 panels so narrow features are not missed by the first
  // 3-point estimate.
  constexpr int kPanels = 16;
  const double width = (b - a) / kPanels;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + width * i;
    const double hi = i + 1 == kPanels ? b : a + width * (i + 1);
    const double fa = f(lo);
    const double fb = f(hi);
    const double fm = f(0.5 * (lo + hi));
    total += refine(f, {lo, hi, fa, fm, fb, simpson(lo, hi, fa, fm, fb)}, abs_tol / kPanels,
                    max_depth);
  }
  return total;
}

double adaptive_simpson_to_infinity(const std::function<double(double)>& f, double a,
                                    double abs_tol, int max_depth) {
  auto mapped = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double s = 1.0 - t;
    return f(a + t / s) / (s * s);
  };
  return adaptive_simpson(mapped, 0.0, 1.0, abs_tol, max_depth);
}

}  // namespace ndpseq
