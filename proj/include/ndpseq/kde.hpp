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

#ifndef NDPSEQ_KDE_HPP
#define NDPSEQ_KDE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ndpseq/queries.hpp"

namespace ndpseq {

/// Evaluation grid. Unset bounds default to [min atom - 3h, max atom + 3h].
struct GridSpec {
  std::size_t points = 512;
  std::optional<double> lower;
  std::optional<double> upper;
  /// Natural domain of the functional, e.g. [0, 1] for probabilities. When
  /// set the grid is clipped to it; the curve is not renormalized.
  std::optional<std::pair<double, double>> clip;
};

struct KdeCurve {
  std::vector<double> grid;
  std::vector<double> values;
  double bandwidth = 0.0;
  /// (sum w)^2 / sum w^2 of the input law.
  double effective_count = 0.0;
  bool bandwidth_from_scott = false;
};

/// Kish effective count (sum w)^2 / sum w^2.
double effective_count(const std::vector<double>& weights);

/// h = sigma_w n_eff^(-1/5), with sigma_w the weighted standard deviation
/// (weights normalized to one) and n_eff the Kish effective count. Throws
/// DegenerateError when fewer than two distinct atoms carry weight.
double scott_bandwidth(const WeightedSampleLaw& law);

/// Gaussian mixture sum_k w_k phi((x - x_k) / h) / h on the grid, with the
/// weights normalized to sum to one. An unset bandwidth selects Scott's rule.
KdeCurve kde(const WeightedSampleLaw& law, std::optional<double> bandwidth = std::nullopt,
             const GridSpec& grid = {});

/// Trapezoid integral of the curve over its grid.
double integrate(const KdeCurve& curve);

/// "x,density" CSV with a header line.
std::string kde_csv(const KdeCurve& curve);

/// Standalone SVG polyline plot of the curve.
std::string kde_svg(const KdeCurve& curve, const std::string& title);

}  // namespace ndpseq

#endif  // NDPSEQ_KDE_HPP
