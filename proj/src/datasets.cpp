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

#include "ndpseq/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ndpseq/error.hpp"
#include "ndpseq/io.hpp"

namespace ndpseq {

namespace {

#include "datasets_data.inc"

constexpr std::size_t kScoreStates = 500;

std::vector<std::string> names_of(const char* const* names, std::size_t n) {
  return std::vector<std::string>(names, names + n);
}

TargetValue mean_target(std::string query, double value, std::string source, double offset = 0.0) {
  TargetValue t;
  t.query = std::move(query);
  t.value = value;
  t.offset = offset;
  t.source = std::move(source);
  return t;
}

TargetValue below_target(std::string query, double threshold, double value, std::string source) {
  TargetValue t;
  t.query = std::move(query);
  t.statistic = "below";
  t.threshold = threshold;
  t.value = value;
  t.source = std::move(source);
  return t;
}

Scenario pennies() {
  Scenario s{.name = "pennies",
             .description = "Seven mangled pennies flipped five times each (tails = 0, heads = 1)",
             .data = parse_counts_csv(kPenniesCounts, 2),
             .config = ModelConfig(1.0, 1.0, SimplexVector::uniform(2))};
  s.num_simulations = 10000;
  s.row_names = {"coin 1", "coin 2", "coin 3", "coin 4", "coin 5", "coin 6", "coin 7"};
  s.reference_ess = 6067;
  s.targets = {
      mean_target("new_agent_component 1", 0.633, "pennies: heads probability of a new coin"),
      mean_target("component 5 1", 0.461, "pennies: next flip of coin 5 lands heads"),
      below_target("component 5 1", 0.5, 0.481, "pennies: coin 5 biased toward tails"),
  };
  return s;
}

Scenario tacks(double kappa) {
  const bool one = kappa == 1.0;
  Scenario s{.name = one ? "tacks_k1" : "tacks_k10",
             .description = "320 thumbtacks flicked nine times each (point down = 0, point up = 1)",
             .data = parse_counts_csv(kTacksCounts, 2),
             .config = ModelConfig(kappa, 2.0, SimplexVector::uniform(2))};
  s.num_simulations = 10000;
  s.reference_ess = one ? 244 : 388;
  for (std::size_t m = 1; m <= s.data.num_rows(); ++m) s.row_names.push_back("tack " + std::to_string(m));
  return s;
}

Scenario reviews() {
  Scenario s{.name = "reviews",
             .description = "Star ratings of 50 products from one seller (state l is an (l+1)-star review)",
             .data = parse_counts_csv(kReviewsCounts, 5),
             .config = ModelConfig(10.0, 5.0, SimplexVector::uniform(5))};
  s.num_simulations = 100000;
  s.log_scale_factor = 28.8;
  s.reference_ess = 561;
  for (std::size_t m = 1; m <= 50; ++m) s.row_names.push_back("product " + std::to_string(m));

  // The source table also lists the review count and average per product.
  // Check both against the star counts; the counts win on disagreement.
  std::string_view table = kReviewsTable;
  table.remove_prefix(table.find('\n') + 1);  // header
  for (std::size_t m = 0; m < s.data.num_rows(); ++m) {
    const auto end = table.find('\n');
    const auto line = table.substr(0, end);
    table.remove_prefix(end + 1);
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    const auto listed_reviews = parse_integer(line.substr(a + 1, b - a - 1), "review count");
    const double listed_avg = parse_double(line.substr(b + 1), "average");
    if (listed_reviews != s.data.row_length(m)) {
      s.notes.push_back("product " + std::to_string(m + 1) + ": review column says " +
                        std::to_string(listed_reviews) + " but the star counts sum to " +
                        std::to_string(s.data.row_length(m)));
    }
    double stars = 0.0;
    const auto counts = s.data.counts(m);
    for (std::size_t l = 0; l < counts.size(); ++l) {
      stars += static_cast<double>(l + 1) * static_cast<double>(counts[l]);
    }
    const double avg = stars / static_cast<double>(s.data.row_length(m));
    // Listed averages are rounded to two decimals.
    if (std::fabs(avg - listed_avg) > 0.005 + 1e-9) {
      s.notes.push_back("product " + std::to_string(m + 1) + ": listed average " +
                        format_fixed(listed_avg, 2) + " but the counts give " + format_fixed(avg, 4));
    }
  }

  s.targets = {
      mean_target("new_agent_mean", 2.54, "reviews: expected long-term rating of a new product (stars)", 1.0),
      mean_target("mean_score 50", 2.83, "reviews: expected long-term rating of product 50 (stars)", 1.0),
      mean_target("mean_score 26", 3.8, "reviews: expected long-term rating of product 26 (stars)", 1.0),
  };
  return s;
}

Scenario games(int which) {
  const char* text = which == 1 ? kGames1Scores : which == 2 ? kGames2Scores : kGames3Scores;
  // Parse with room for the raw scores, then round-and-cap into 500 states.
  const auto raw = parse_label_csv(text, 1u << 20);
  std::vector<std::vector<std::int64_t>> rows = raw.raw_rows();
  std::vector<std::string> notes;
  for (std::size_t m = 0; m < rows.size(); ++m) {
    for (auto& score : rows[m]) {
      if (score >= static_cast<std::int64_t>(kScoreStates)) {
        notes.push_back("row " + std::to_string(m + 1) + ": score " + std::to_string(score) +
                        " capped at " + std::to_string(kScoreStates - 1));
        score = kScoreStates - 1;
      }
    }
  }
  const gamer::GamerParams params{7.0 / 3.0, 28.0, 3.0};
  Scenario s{.name = "games" + std::to_string(which),
             .description = "Video game scores of ten friends, scenario " + std::to_string(which),
             .data = validate_and_count(rows, kScoreStates),
             .config = ModelConfig(1.0, 1.0, gamer::discretize(params, kScoreStates))};
  s.num_simulations = 40000;
  s.log_scale_factor = 42.0;
  s.gamer = params;
  s.notes = std::move(notes);

  // Reference long-term averages, in table row order.
  std::vector<double> ndp_avg;
  if (which == 1) {
    s.row_names = names_of(kGames12Names, 10);
    s.reference_ess = 326;
    ndp_avg = {38, 39, 32, 80, 55, 52, 40, 43, 71, 37};
    s.notes.push_back(
        "row 10 (The Pianist Spider): the score table lists 3 while the leaderboard shows 32; "
        "the score table is used");
    s.targets.push_back(mean_target("mean_score 4", 79.65, "games1: Running Stardust long-term average"));
  } else if (which == 2) {
    s.row_names = names_of(kGames12Names, 10);
    s.trim = 2;
    s.reference_ess = 22.3;
    s.reference_ess_trimmed = 1099;
    ndp_avg = {38, 39, 31, 84, 62, 51, 39, 28, 43, 37};
    s.notes.push_back(
        "row 10 (The Pianist Spider): the score table lists 3 while the leaderboard shows 32; "
        "the score table is used");
  } else {
    s.row_names = names_of(kGames3Names, 10);
    s.trim = 26;
    s.reference_ess = 39;
    s.reference_ess_trimmed = 207;
    ndp_avg = {198, 31, 26, 37, 45, 34, 72, 52, 67, 56};
    s.notes.push_back(
        "row 1 (Vertigo Gal): the leaderboard shows a high score of 475 and average 207, the score "
        "list includes 524 (average 216.6); the score list is used");
    s.targets.push_back(below_target("mean_diff 9 2", 0.0, 0.049,
                                     "games3: Asparagus Soda's average below Potato Log's"));
    s.targets.push_back(mean_target("contest 9 2", 0.786, "games3: Asparagus Soda beats Potato Log"));
    s.targets.push_back(below_target("mean_diff 9 7", 0.0, 0.625,
                                     "games3: Asparagus Soda's average below Pumpkins'"));
    s.targets.push_back(mean_target("contest 9 7", 0.484, "games3: Asparagus Soda beats Pumpkins"));
  }
  for (std::size_t m = 0; m < ndp_avg.size(); ++m) {
    s.targets.push_back(mean_target("mean_score " + std::to_string(m + 1), ndp_avg[m],
                                    s.name + ": NDP average of " + s.row_names[m]));
  }
  return s;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"pennies", "tacks_k1", "tacks_k10", "reviews",
                                              "games1",  "games2",   "games3"};
  return names;
}

Scenario load_scenario(std::string_view name) {
  if (name == "pennies") return pennies();
  if (name == "tacks_k1") return tacks(1.0);
  if (name == "tacks_k10") return tacks(10.0);
  if (name == "reviews") return reviews();
  if (name == "games1") return games(1);
  if (name == "games2") return games(2);
  if (name == "games3") return games(3);
  std::string known;
  for (const auto& n : scenario_names()) known += (known.empty() ? "" : ", ") + n;
  throw LookupError("unknown scenario '" + std::string(name) + "' (known: " + known + ")");
}

std::string scenario_resource(std::string_view name) {
  if (name == "pennies") return kPenniesCounts;
  if (name == "tacks_k1" || name == "tacks_k10") return kTacksCounts;
  if (name == "reviews") return kReviewsCounts;
  if (name == "games1") return kGames1Scores;
  if (name == "games2") return kGames2Scores;
  if (name == "games3") return kGames3Scores;
  throw LookupError("unknown scenario '" + std::string(name) + "'");
}

}  // namespace ndpseq
