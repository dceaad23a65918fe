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

#ifndef NDPSEQ_DATASETS_HPP
#define NDPSEQ_DATASETS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ndpseq/gamer.hpp"
#include "ndpseq/model.hpp"

namespace ndpseq {

/// A reference reference value for one query on a scenario.
struct TargetValue {
  /// Query text in the CLI grammar.
  std::string query;
  /// "mean" for E[f], or "below" for P(f < threshold).
  std::string statistic = "mean";
  double threshold = 0.0;
  double value = 0.0;
  /// Added to the functional before comparing (star ratings are 1-based).
  double offset = 0.0;
  std::string source;
};

struct Scenario {
  std::string name;
  std::string description;
  ObservationArray data;
  ModelConfig config;
  std::size_t num_simulations = 10000;
  double log_scale_factor = 0.0;
  /// Heaviest simulations to drop after the run.
  std::size_t trim = 0;
  std::vector<std::string> row_names;
  std::vector<TargetValue> targets;
  /// Published effective sample sizes before and after trimming, when known.
  std::optional<double> reference_ess;
  std::optional<double> reference_ess_trimmed;
  std::optional<gamer::GamerParams> gamer;
  /// Table inconsistencies found while loading. Counts are used as given.
  std::vector<std::string> notes;
};

/// pennies, tacks_k1, tacks_k10, reviews, games1, games2, games3.
const std::vector<std::string>& scenario_names();

/// Throws LookupError for an unknown name.
Scenario load_scenario(std::string_view name);

/// The embedded resource text the scenario is built from.
std::string scenario_resource(std::string_view name);

}  // namespace ndpseq

#endif  // NDPSEQ_DATASETS_HPP
