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

#include "ndpseq/io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "ndpseq/engine.hpp"
#include "ndpseq/error.hpp"

namespace ndpseq {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "'");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> fields;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Content lines split on commas; blank and '#' lines dropped.
std::vector<Line> split_csv(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto end = text.find('\n');
    auto raw = trim(text.substr(0, end));
    text.remove_prefix(end == std::string_view::npos ? text.size() : end + 1);
    if (raw.empty() || raw.front() == '#') continue;
    Line line{number, {}};
    for (;;) {
      const auto comma = raw.find(',');
      line.fields.push_back(trim(raw.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      raw.remove_prefix(comma + 1);
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

std::string where(const Line& line) { return "line " + std::to_string(line.number); }

}  // namespace

ObservationArray parse_label_csv(std::string_view text, std::size_t num_states) {
  const auto lines = split_csv(text);
  if (lines.empty()) throw ValidationError("label CSV is empty");
  const auto& header = lines.front();
  if (header.fields.size() != 2 || header.fields[0] != "row_id" || header.fields[1] != "label") {
    throw ValidationError("label CSV header must be 'row_id,label'");
  }
  std::map<std::string, std::size_t, std::less<>> index;
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.fields.size() != 2) {
      throw ValidationError(where(line) + ": expected 2 fields, found " +
                            std::to_string(line.fields.size()));
    }
    if (line.fields[0].empty()) throw ValidationError(where(line) + ": empty row_id");
    auto it = index.find(line.fields[0]);
    if (it == index.end()) {
      it = index.emplace(std::string(line.fields[0]), rows.size()).first;
      rows.emplace_back();
    }
    rows[it->second].push_back(parse_integer(line.fields[1], where(line) + " label"));
  }
  return validate_and_count(rows, num_states);
}

ObservationArray parse_rows_json(std::string_view text, std::size_t num_states) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed rows JSON: ") + e.what());
  }
  if (!json.is_object() || !json.contains("rows") || !json["rows"].is_array()) {
    throw ValidationError("rows JSON must be an object with a 'rows' array");
  }
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t m = 0; m < json["rows"].size(); ++m) {
    const auto& row = json["rows"][m];
    if (!row.is_array()) throw ValidationError("row " + std::to_string(m + 1) + " is not an array");
    rows.emplace_back();
    for (std::size_t n = 0; n < row.size(); ++n) {
      if (!row[n].is_number_integer()) {
        throw ValidationError("label at row " + std::to_string(m + 1) + ", position " +
                              std::to_string(n + 1) + " is not an integer");
      }
      rows.back().push_back(row[n].get<std::int64_t>());
    }
  }
  return validate_and_count(rows, num_states);
}

ObservationArray parse_counts_csv(std::string_view text, std::optional<std::size_t> num_states) {
  const auto lines = split_csv(text);
  if (lines.empty()) throw ValidationError("counts CSV is empty");
  const auto& header = lines.front();
  if (header.fields.size() < 3 || header.fields[0] != "row_id") {
    throw ValidationError("counts CSV header must be 'row_id,count_0,...,count_{L-1}' with L >= 2");
  }
  const std::size_t states = header.fields.size() - 1;
  for (std::size_t l = 0; l < states; ++l) {
    if (header.fields[l + 1] != "count_" + std::to_string(l)) {
      throw ValidationError("counts CSV column " + std::to_string(l + 2) + " must be 'count_" +
                            std::to_string(l) + "'");
    }
  }
  if (num_states && *num_states != states) {
    throw ShapeError("counts CSV has " + std::to_string(states) + " states, expected " +
                     std::to_string(*num_states));
  }
  std::vector<CountVector> counts;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.fields.size() != states + 1) {
      throw ValidationError(where(line) + ": expected " + std::to_string(states + 1) +
                            " fields, found " + std::to_string(line.fields.size()));
    }
    CountVector row(states);
    for (std::size_t l = 0; l < states; ++l) {
      row[l] = parse_integer(line.fields[l + 1], where(line) + " count_" + std::to_string(l));
      if (row[l] < 0) throw ValidationError(where(line) + ": negative count");
    }
    counts.push_back(std::move(row));
  }
  if (counts.empty()) throw ValidationError("observation array has no rows");
  return ObservationArray::from_counts(std::move(counts), states);
}

ObservationArray load_observations(const std::filesystem::path& path, std::size_t num_states) {
  const auto text = read_text_file(path);
  if (path.extension() == ".json") return parse_rows_json(text, num_states);
  const auto lines = split_csv(text);
  if (!lines.empty() && lines.front().fields.size() > 1 && lines.front().fields[1] == "count_0") {
    return parse_counts_csv(text, num_states);
  }
  return parse_label_csv(text, num_states);
}

namespace {

double number_field(const Json& obj, const char* key, const std::string& context) {
  if (!obj.contains(key)) throw ValidationError(context + " is missing '" + key + "'");
  if (!obj[key].is_number()) throw ValidationError(context + " field '" + key + "' must be a number");
  return obj[key].get<double>();
}

}  // namespace

ConfigFile parse_config_json(std::string_view text) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed config JSON: ") + e.what());
  }
  if (!json.is_object()) throw ValidationError("config must be a JSON object");
  const double kappa = number_field(json, "kappa", "config");
  const double eps = number_field(json, "eps", "config");
  const bool has_base = json.contains("base");
  const bool has_gamer = json.contains("gamer");
  if (has_base == has_gamer) throw ValidationError("config needs exactly one of 'base' or 'gamer'");
  if (has_base) {
    if (!json["base"].is_array()) throw ValidationError("config 'base' must be an array");
    std::vector<double> base;
    for (const auto& v : json["base"]) {
      if (!v.is_number()) throw ValidationError("config 'base' entries must be numbers");
      base.push_back(v.get<double>());
    }
    return ConfigFile{ModelConfig(kappa, eps, SimplexVector(std::move(base))), std::nullopt};
  }
  const auto& g = json["gamer"];
  if (!g.is_object()) throw ValidationError("config 'gamer' must be an object");
  gamer::GamerParams params{number_field(g, "r", "gamer"), number_field(g, "c", "gamer"),
                            number_field(g, "alpha", "gamer")};
  if (!g.contains("L") || !g["L"].is_number_integer() || g["L"].get<long long>() < 2) {
    throw ValidationError("gamer 'L' must be an integer >= 2");
  }
  const auto states = static_cast<std::size_t>(g["L"].get<long long>());
  return ConfigFile{ModelConfig(kappa, eps, gamer::discretize(params, states)), params};
}

ConfigFile load_config(const std::filesystem::path& path) {
  return parse_config_json(read_text_file(path));
}

Json config_to_json(const ModelConfig& config, const std::optional<gamer::GamerParams>& gamer) {
  Json out;
  out["kappa"] = config.kappa();
  out["eps"] = config.eps();
  if (gamer) {
    out["gamer"] = {{"r", gamer->r},
                    {"c", gamer->c},
                    {"alpha", gamer->alpha},
                    {"L", config.num_states()}};
  } else {
    out["base"] = config.base().vector();
  }
  return out;
}

std::string counts_csv(const ObservationArray& data) {
  std::string out = "row_id";
  for (std::size_t l = 0; l < data.num_states(); ++l) out += ",count_" + std::to_string(l);
  out += '\n';
  for (std::size_t m = 0; m < data.num_rows(); ++m) {
    out += std::to_string(m + 1);
    for (auto c : data.counts(m)) out += ',' + std::to_string(c);
    out += '\n';
  }
  return out;
}

std::string label_csv(const ObservationArray& data) {
  if (data.raw_rows().size() != data.num_rows()) {
    throw UnsupportedError("label CSV needs the raw label sequences");
  }
  std::string out = "row_id,label\n";
  for (std::size_t m = 0; m < data.num_rows(); ++m) {
    for (auto label : data.raw_rows()[m]) {
      out += std::to_string(m + 1) + ',' + std::to_string(label) + '\n';
    }
  }
  return out;
}

std::string law_csv(const WeightedSampleLaw& law) {
  std::string out = "atom,weight\n";
  for (std::size_t k = 0; k < law.atoms.size(); ++k) {
    out += format_double(law.atoms[k]);
    out += ',';
    out += format_double(law.weights[k]);
    out += '\n';
  }
  return out;
}

WeightedSampleLaw parse_law_csv(std::string_view text) {
  const auto lines = split_csv(text);
  if (lines.empty() || lines.front().fields.size() != 2 || lines.front().fields[0] != "atom" ||
      lines.front().fields[1] != "weight") {
    throw ValidationError("weighted-sample CSV header must be 'atom,weight'");
  }
  WeightedSampleLaw law;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.fields.size() != 2) throw ValidationError(where(line) + ": expected 2 fields");
    law.atoms.push_back(parse_double(line.fields[0], where(line) + " atom"));
    const double w = parse_double(line.fields[1], where(line) + " weight");
    if (!(w >= 0.0)) throw ValidationError(where(line) + ": negative weight");
    law.weights.push_back(w);
  }
  if (law.atoms.empty()) throw ValidationError("weighted-sample CSV has no atoms");
  law.prior_begin = law.atoms.size();
  return law;
}

Json batch_to_json(const SimulationBatch& batch) {
  const std::size_t states = batch.num_states();
  Json out;
  out["format"] = "ndpseq-batch";
  out["version"] = kBatchFormatVersion;
  out["seed"] = batch.seed;
  out["log_scale_factor"] = batch.log_scale_factor;
  out["config"] = config_to_json(batch.config, std::nullopt);
  out["num_rows"] = batch.num_rows;
  out["generated"] = batch.generated;
  out["source_index"] = batch.source_index;
  out["trimmed"] = batch.trimmed;
  Json sims = Json::array();
  for (const auto& sim : batch.sims) {
    Json s;
    s["log_weight"] = sim.log_weight;
    std::vector<std::uint32_t> cluster(sim.cluster_of.size());
    for (std::size_t m = 0; m < cluster.size(); ++m) cluster[m] = sim.cluster_of[m] + 1;
    s["cluster_of"] = cluster;
    Json thetas = Json::array();
    for (std::size_t c = 0; c < sim.num_clusters(states); ++c) {
      thetas.push_back(std::vector<double>(sim.thetas.begin() + static_cast<std::ptrdiff_t>(c * states),
                                           sim.thetas.begin() + static_cast<std::ptrdiff_t>((c + 1) * states)));
    }
    s["thetas"] = std::move(thetas);
    sims.push_back(std::move(s));
  }
  out["simulations"] = std::move(sims);
  return out;
}

SimulationBatch batch_from_json(const Json& json) {
  try {
    if (json.value("format", "") != "ndpseq-batch") throw ValidationError("not a batch file");
    const int version = json.at("version").get<int>();
    if (version != kBatchFormatVersion) {
      throw ValidationError("unsupported batch format version " + std::to_string(version));
    }
    const auto cfg = parse_config_json(json.at("config").dump());
    SimulationBatch batch{cfg.config};
    const std::size_t states = batch.num_states();
    batch.seed = json.at("seed").get<std::uint64_t>();
    batch.log_scale_factor = json.at("log_scale_factor").get<double>();
    batch.num_rows = json.at("num_rows").get<std::size_t>();
    batch.generated = json.at("generated").get<std::size_t>();
    batch.source_index = json.at("source_index").get<std::vector<std::size_t>>();
    batch.trimmed = json.at("trimmed").get<std::vector<std::size_t>>();
    for (const auto& s : json.at("simulations")) {
      WeightedSimulation sim;
      sim.log_weight = s.at("log_weight").get<double>();
      const auto cluster = s.at("cluster_of").get<std::vector<std::uint32_t>>();
      if (cluster.size() != batch.num_rows) throw ShapeError("cluster map has the wrong length");
      const auto& thetas = s.at("thetas");
      std::vector<std::uint32_t> slot_of_root(batch.num_rows, 0);
      std::uint32_t next_slot = 0;
      for (std::size_t m = 0; m < cluster.size(); ++m) {
        if (cluster[m] < 1 || cluster[m] > m + 1) throw ValidationError("invalid cluster map");
        const std::uint32_t root = cluster[m] - 1;
        if (root == m) {
          slot_of_root[m] = next_slot++;
        } else if (sim.cluster_of.empty() || sim.cluster_of[root] != root) {
          throw ValidationError("cluster map refers to a row that is not a cluster root");
        }
        sim.cluster_of.push_back(root);
        sim.slot_of.push_back(slot_of_root[root]);
      }
      if (thetas.size() != next_slot) throw ShapeError("cluster vectors do not match the map");
      for (const auto& t : thetas) {
        const auto v = t.get<std::vector<double>>();
        if (v.size() != states) throw ShapeError("cluster vector has the wrong length");
        sim.thetas.insert(sim.thetas.end(), v.begin(), v.end());
      }
      batch.sims.push_back(std::move(sim));
    }
    if (batch.sims.empty()) throw ValidationError("batch has no simulations");
    if (batch.source_index.size() != batch.sims.size()) {
      throw ShapeError("source_index does not match the simulation count");
    }
    std::vector<double> log_weights;
    for (const auto& sim : batch.sims) log_weights.push_back(sim.log_weight);
    batch.normalized_weights = normalize_log_weights(log_weights);
    batch.ess = ess(batch.normalized_weights);
    return batch;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed batch JSON: ") + e.what());
  }
}

}  // namespace ndpseq
