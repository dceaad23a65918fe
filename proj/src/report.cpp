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

#include "ndpseq/report.hpp"

#include <algorithm>
#include <cmath>

#include "ndpseq/error.hpp"
#include "ndpseq/io.hpp"

namespace ndpseq {

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
    h >>= 4;
  }
  return out;
}

namespace {

Json ess_json(const EssStats& e) { return Json{{"prime", e.prime}, {"double_prime", e.double_prime}}; }

Json data_json(const ObservationArray& data) {
  return Json{{"rows", data.num_rows()},
              {"states", data.num_states()},
              {"observations", data.total_observations()}};
}

}  // namespace

InferResult run_inference(const ObservationArray& data, const ModelConfig& config,
                          const InferSettings& settings) {
  auto batch = run_batch(data, config, settings.engine);
  const EssStats before = batch.ess;
  if (settings.trim > 0) batch = trim_heaviest(std::move(batch), settings.trim);

  double max_scaled = -INFINITY;
  for (std::size_t k = 0; k < batch.size(); ++k) max_scaled = std::max(max_scaled, batch.scaled_log_weight(k));

  Json report;
  report["command"] = "infer";
  report["scenario"] = settings.scenario ? Json(*settings.scenario) : Json(nullptr);
  report["data"] = data_json(data);
  report["config"] = config_to_json(config, settings.gamer);
  report["seed"] = settings.engine.seed;
  report["K"] = batch.generated;
  report["log_scale_factor"] = batch.log_scale_factor;
  report["ess"] = ess_json(before);
  report["trim"] = settings.trim;
  if (settings.trim > 0) {
    report["K_after_trim"] = batch.size();
    report["trimmed_simulations"] = batch.trimmed;
    report["ess_after_trim"] = ess_json(batch.ess);
  }
  report["max_scaled_log_weight"] = max_scaled;
  report["prior_sample"] = Json{{"size", settings.prior.size},
                                {"seed", settings.prior.seed.value_or(settings.engine.seed)}};

  InferResult result{Json(), {}, std::move(batch)};
  const auto& b = result.batch;

  Json queries = Json::array();
  for (std::size_t i = 0; i < settings.queries.size(); ++i) {
    const auto& q = settings.queries[i];
    const auto law = law_of(b, q.functional, settings.prior);
    const auto est = estimate(b, q.functional, settings.prior);
    Json entry;
    entry["query"] = q.text;
    entry["functional"] = q.functional.to_string();
    entry["expectation"] = expectation(law);
    entry["standard_error"] = est.standard_error;
    if (q.functional.is_new_agent()) {
      Json prior{{"mass", law.prior_mass}, {"atoms", law.atoms.size() - law.prior_begin}};
      if (law.prior_mean) prior["analytic_mean"] = *law.prior_mean;
      double sampled = 0.0;
      for (std::size_t k = law.prior_begin; k < law.atoms.size(); ++k) sampled += law.atoms[k];
      prior["sampled_mean"] = sampled / static_cast<double>(law.atoms.size() - law.prior_begin);
      entry["prior_component"] = std::move(prior);
    }
    Json below = Json::array();
    for (double t : q.below) below.push_back(Json{{"threshold", t}, {"probability", probability_below(law, t)}});
    entry["probability_below"] = std::move(below);
    const std::string file = "query_" + std::to_string(i + 1) + ".csv";
    entry["samples"] = file;
    result.samples.push_back({file, law_csv(law)});
    queries.push_back(std::move(entry));
  }
  report["queries"] = std::move(queries);

  if (!settings.targets.empty()) {
    Json targets = Json::array();
    for (const auto& t : settings.targets) {
      const auto q = parse_query(t.query);
      const auto law = law_of(b, q.functional, settings.prior);
      Json entry{{"query", t.query}, {"statistic", t.statistic}};
      double estimate_value = 0.0;
      if (t.statistic == "below") {
        entry["threshold"] = t.threshold;
        estimate_value = probability_below(law, t.threshold);
      } else {
        estimate_value = expectation(law) + t.offset;
        if (t.offset != 0.0) entry["offset"] = t.offset;
      }
      entry["reference"] = t.value;
      entry["estimate"] = estimate_value;
      entry["source"] = t.source;
      targets.push_back(std::move(entry));
    }
    report["targets"] = std::move(targets);
  }
  report["notes"] = settings.notes;
  result.report = std::move(report);
  return result;
}

Json oracle_report(const ObservationArray& data, const ModelConfig& config,
                   const std::vector<Query>& queries, std::size_t top) {
  const auto posterior = enumerate_posterior(data, config);
  Json report;
  report["command"] = "oracle";
  report["data"] = data_json(data);
  report["config"] = config_to_json(config, std::nullopt);
  report["partition_count"] = posterior.size();
  Json parts = Json::array();
  for (auto i : top_partitions(posterior, top)) {
    parts.push_back(Json{{"partition", format_partition(posterior.partition(i))},
                         {"probability", std::exp(posterior.log_post_weights[i])}});
  }
  report["top_partitions"] = std::move(parts);
  Json values = Json::array();
  for (const auto& q : queries) {
    Json entry{{"query", q.text}, {"functional", q.functional.to_string()}};
    try {
      entry["exact"] = exact_expectation(posterior, q.functional, data, config);
    } catch (const UnsupportedError& e) {
      entry["exact"] = nullptr;
      entry["unsupported"] = e.what();
    }
    if (!q.below.empty()) {
      entry["probability_below"] = nullptr;
      entry["unsupported_probability"] = "the exact oracle computes means only";
    }
    values.push_back(std::move(entry));
  }
  report["queries"] = std::move(values);
  return report;
}

}  // namespace ndpseq
