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

#ifndef NDPSEQ_REPORT_HPP
#define NDPSEQ_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include "ndpseq/datasets.hpp"
#include "ndpseq/engine.hpp"
#include "ndpseq/format.hpp"
#include "ndpseq/oracle.hpp"
#include "ndpseq/queries.hpp"

namespace ndpseq {

struct InferSettings {
  EngineOptions engine;
  std::size_t trim = 0;
  std::vector<Query> queries;
  PriorSampleOptions prior;
  std::optional<std::string> scenario;
  std::optional<gamer::GamerParams> gamer;
  std::vector<TargetValue> targets;
  std::vector<std::string> notes;
};

struct SampleFile {
  std::string name;  // relative file name, e.g. "query_1.csv"
  std::string csv;
};

struct InferResult {
  /// Thread count and wall-clock times are deliberately absent, so the report
  /// is byte-identical for a fixed seed.
  Json report;
  std::vector<SampleFile> samples;
  SimulationBatch batch;
};

/// Runs the engine, trims, and evaluates every query (and scenario target).
InferResult run_inference(const ObservationArray& data, const ModelConfig& config,
                          const InferSettings& settings);

/// Exact report: partition count, the `top` most probable partitions, and the
/// exact mean of every query. Queries with a probability part or without a
/// closed form are listed with an "unsupported" reason.
Json oracle_report(const ObservationArray& data, const ModelConfig& config,
                   const std::vector<Query>& queries, std::size_t top);

/// 64-bit FNV-1a of a string, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace ndpseq

#endif  // NDPSEQ_REPORT_HPP
