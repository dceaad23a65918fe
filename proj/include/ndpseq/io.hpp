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

#ifndef NDPSEQ_IO_HPP
#define NDPSEQ_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "ndpseq/format.hpp"
#include "ndpseq/gamer.hpp"
#include "ndpseq/model.hpp"
#include "ndpseq/queries.hpp"

/**
 * \file
 * \brief Text formats.
 *
 * All readers take UTF-8 text (a leading byte-order mark is skipped), accept
 * LF or CRLF line endings, ignore blank lines and lines starting with '#',
 * and parse numbers with std::from_chars, so the result never depends on the
 * locale. Fields are separated by commas; surrounding spaces are trimmed.
 *
 *  - label CSV:  header `row_id,label`, one observation per line. Rows are
 *    ordered by first appearance of their row_id.
 *  - rows JSON:  `{"rows": [[labels...], ...]}`; empty rows are allowed.
 *  - counts CSV: header `row_id,count_0,...,count_{L-1}`, one row per line,
 *    in file order. L is the number of count columns.
 *  - config JSON: `{"kappa": k, "eps": e, "base": [p...]}` or
 *    `{"kappa": k, "eps": e, "gamer": {"r": r, "c": c, "alpha": a, "L": L}}`.
 */

namespace ndpseq {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

ObservationArray parse_label_csv(std::string_view text, std::size_t num_states);
ObservationArray parse_rows_json(std::string_view text, std::size_t num_states);
/// When num_states is set the column count must agree with it.
ObservationArray parse_counts_csv(std::string_view text,
                                  std::optional<std::size_t> num_states = std::nullopt);

/// Picks the format from the extension (.json) or the CSV header.
ObservationArray load_observations(const std::filesystem::path& path, std::size_t num_states);

struct ConfigFile {
  ModelConfig config;
  std::optional<gamer::GamerParams> gamer;
};

ConfigFile parse_config_json(std::string_view text);
ConfigFile load_config(const std::filesystem::path& path);
Json config_to_json(const ModelConfig& config, const std::optional<gamer::GamerParams>& gamer);

std::string counts_csv(const ObservationArray& data);
/// Requires the raw label sequences.
std::string label_csv(const ObservationArray& data);

/// `atom,weight` lines; prior Monte Carlo atoms are included.
std::string law_csv(const WeightedSampleLaw& law);
WeightedSampleLaw parse_law_csv(std::string_view text);

inline constexpr int kBatchFormatVersion = 1;

/// Versioned JSON rendering of a batch: seed, config, log weights, 1-based
/// cluster maps and the distinct vectors of every simulation.
Json batch_to_json(const SimulationBatch& batch);
/// Rebuilds a batch, recomputing normalized weights and ESS.
SimulationBatch batch_from_json(const Json& json);

}  // namespace ndpseq

#endif  // NDPSEQ_IO_HPP
