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

#include "ndpseq/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ndpseq/error.hpp"
#include "ndpseq/format.hpp"

namespace ndpseq {

namespace {

void check_law(const WeightedSampleLaw& law) {
  if (law.atoms.empty()) throw ValidationError("density estimate of an empty law");
  if (law.atoms.size() != law.weights.size()) {
    throw ShapeError("law has " + std::to_string(law.atoms.size()) + " atoms but " +
                     std::to_string(law.weights.size()) + " weights");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < law.atoms.size(); ++k) {
    if (!std::isfinite(law.atoms[k])) throw DomainError("law atoms must be finite");
    if (!(law.weights[k] >= 0.0) || !std::isfinite(law.weights[k])) {
      throw DomainError("law weights must be finite and nonnegative");
    }
    total += law.weights[k];
  }
  if (!(total > 0.0)) throw DegenerateError("law has zero total weight");
}

}  // namespace

double effective_count(const std::vector<double>& weights) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double w : weights) {
    sum += w;
    sum_sq += w * w;
  }
  if (!(sum_sq > 0.0)) throw DegenerateError("effective count of an all-zero weight vector");
  return sum * sum / sum_sq;
}

double scott_bandwidth(const WeightedSampleLaw& law) {
  check_law(law);
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t k = 0; k < law.atoms.size(); ++k) {
    total += law.weights[k];
    mean += law.weights[k] * law.atoms[k];
  }
  mean /= total;
  double var = 0.0;
  for (std::size_t k = 0; k < law.atoms.size(); ++k) {
    const double d = law.atoms[k] - mean;
    var += law.weights[k] * d * d;
  }
  var /= total;
  if (!(var > 0.0)) {
    throw DegenerateError("Scott bandwidth needs at least two distinct weighted atoms");
  }
  return std::sqrt(var) * std::pow(effective_count(law.weights), -0.2);
}

KdeCurve kde(const WeightedSampleLaw& law, std::optional<double> bandwidth, const GridSpec& grid) {
  check_law(law);
  KdeCurve curve;
  curve.effective_count = effective_count(law.weights);
  if (bandwidth) {
    if (!(*bandwidth > 0.0) || !std::isfinite(*bandwidth)) {
      throw DomainError("bandwidth must be positive and finite");
    }
    curve.bandwidth = *bandwidth;
  } else {
    curve.bandwidth = scott_bandwidth(law);
    curve.bandwidth_from_scott = true;
  }
  if (grid.points < 2) throw ValidationError("grid needs at least two points");

  const double h = curve.bandwidth;
  const auto [lo_atom, hi_atom] = std::minmax_element(law.atoms.begin(), law.atoms.end());
  double lo = grid.lower.value_or(*lo_atom - 3.0 * h);
  double hi = grid.upper.value_or(*hi_atom + 3.0 * h);
  if (grid.clip) {
    if (!(grid.clip->first < grid.clip->second)) throw ValidationError("empty clip interval");
    lo = std::max(lo, grid.clip->first);
    hi = std::min(hi, grid.clip->second);
  }
  if (!(lo < hi)) throw ValidationError("grid lower bound must be below its upper bound");

  double total = 0.0;
  for (double w : law.weights) total += w;

  // Merge coincident atoms; aliased clusters repeat the same value many times.
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(law.atoms.size());
  for (std::size_t k = 0; k < law.atoms.size(); ++k) {
    if (law.weights[k] > 0.0) atoms.emplace_back(law.atoms[k], law.weights[k] / total);
  }
  std::sort(atoms.begin(), atoms.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().first == a.first) {
      merged.back().second += a.second;
    } else {
      merged.push_back(a);
    }
  }

  const double norm = 1.0 / (h * std::sqrt(2.0 * std::numbers::pi));
  const double cutoff = 40.0 * h;  // exp(-800) underflows
  curve.grid.resize(grid.points);
  curve.values.resize(grid.points);
  const double step = (hi - lo) / static_cast<double>(grid.points - 1);
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double x = i + 1 == grid.points ? hi : lo + step * static_cast<double>(i);
    curve.grid[i] = x;
    auto first = std::lower_bound(merged.begin(), merged.end(), std::make_pair(x - cutoff, -1.0));
    double acc = 0.0;
    for (auto it = first; it != merged.end() && it->first <= x + cutoff; ++it) {
      const double z = (x - it->first) / h;
      acc += it->second * std::exp(-0.5 * z * z);
    }
    curve.values[i] = acc * norm;
  }
  return curve;
}

double integrate(const KdeCurve& curve) {
  double acc = 0.0;
  for (std::size_t i = 1; i < curve.grid.size(); ++i) {
    acc += 0.5 * (curve.values[i] + curve.values[i - 1]) * (curve.grid[i] - curve.grid[i - 1]);
  }
  return acc;
}

std::string kde_csv(const KdeCurve& curve) {
  std::string out = "x,density\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out += format_double(curve.grid[i]);
    out += ',';
    out += format_double(curve.values[i]);
    out += '\n';
  }
  return out;
}

std::string kde_svg(const KdeCurve& curve, const std::string& title) {
  constexpr double kWidth = 640.0;
  constexpr double kHeight = 400.0;
  constexpr double kMargin = 40.0;
  const double x0 = curve.grid.front();
  const double x1 = curve.grid.back();
  const double ymax = std::max(*std::max_element(curve.values.begin(), curve.values.end()), 1e-300);
  auto px = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); };
  auto py = [&](double y) { return kHeight - kMargin - y / ymax * (kHeight - 2 * kMargin); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
      << kHeight - kMargin << "\" stroke=\"black\"/>\n";
  svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    if (i) svg << ' ';
    svg << format_fixed(px(curve.grid[i]), 2) << ',' << format_fixed(py(curve.values[i]), 2);
  }
  svg << "\"/>\n";
  svg << "<text x=\"" << kMargin << "\" y=\"" << kHeight - 10 << "\" font-size=\"12\">"
      << format_fixed(x0, 4) << "</text>\n";
  svg << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - 10
      << "\" font-size=\"12\" text-anchor=\"end\">" << format_fixed(x1, 4) << "</text>\n";
  std::string escaped;
  for (char ch : title) {
    if (ch == '<') escaped += "&lt;";
    else if (ch == '>') escaped += "&gt;";
    else if (ch == '&') escaped += "&amp;";
    else escaped += ch;
  }
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">"
      << escaped << " (h = " << format_fixed(curve.bandwidth, 4) << ")</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ndpseq
