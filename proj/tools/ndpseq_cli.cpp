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

// ndpseq command-line tool.
//
// Exit codes: 0 success, 1 domain or validation error, 2 I/O error.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ndpseq/datasets.hpp"
#include "ndpseq/error.hpp"
#include "ndpseq/gamer.hpp"
#include "ndpseq/io.hpp"
#include "ndpseq/kde.hpp"
#include "ndpseq/report.hpp"

namespace fs = std::filesystem;
using namespace ndpseq;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// --scenario, or --data with --config.
struct InputOptions {
  std::string scenario;
  std::string data;
  std::string config;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--scenario", scenario, "Built-in scenario name");
    cmd->add_option("--data", data, "Observation file (label CSV, rows JSON, or counts CSV)");
    cmd->add_option("--config", config, "Model config JSON {kappa, eps, base | gamer}");
  }
};

struct LoadedInput {
  std::optional<Scenario> scenario;
  std::optional<ObservationArray> data;
  std::optional<ConfigFile> config;

  const ObservationArray& observations() const { return scenario ? scenario->data : *data; }
  const ModelConfig& model() const { return scenario ? scenario->config : config->config; }
  std::optional<gamer::GamerParams> gamer() const { return scenario ? scenario->gamer : config->gamer; }
};

LoadedInput load_input(const InputOptions& in) {
  LoadedInput out;
  if (!in.scenario.empty()) {
    if (!in.data.empty() || !in.config.empty()) {
      throw ValidationError("use either --scenario or --data with --config, not both");
    }
    out.scenario = load_scenario(in.scenario);
    return out;
  }
  if (in.data.empty() || in.config.empty()) {
    throw ValidationError("give --scenario, or both --data and --config");
  }
  out.config = load_config(in.config);
  out.data = load_observations(in.data, out.config->config.num_states());
  return out;
}

std::vector<Query> parse_queries(const std::vector<std::string>& texts) {
  std::vector<Query> out;
  for (const auto& t : texts) out.push_back(parse_query(t));
  return out;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

// ---------------------------------------------------------------- infer

struct InferOptions {
  InputOptions input;
  std::optional<std::size_t> K;
  std::uint64_t seed = 1;
  std::optional<double> log_scale;
  std::optional<std::size_t> trim;
  std::optional<std::size_t> threads;
  std::vector<std::string> queries;
  std::size_t prior_samples = 10000;
  std::string out = "ndpseq-out";
  bool save_batch = false;
};

int cmd_infer(const InferOptions& opt, const std::vector<std::string>& argv) {
  const std::string started = utc_now();
  const auto input = load_input(opt.input);
  InferSettings settings;
  settings.engine.num_simulations = opt.K.value_or(input.scenario ? input.scenario->num_simulations : 10000);
  settings.engine.seed = opt.seed;
  settings.engine.log_scale_factor = opt.log_scale.value_or(input.scenario ? input.scenario->log_scale_factor : 0.0);
  settings.engine.threads = opt.threads;
  settings.trim = opt.trim.value_or(input.scenario ? input.scenario->trim : 0);
  settings.queries = parse_queries(opt.queries);
  settings.prior.size = opt.prior_samples;
  settings.gamer = input.gamer();
  if (input.scenario) {
    settings.scenario = input.scenario->name;
    settings.targets = input.scenario->targets;
    settings.notes = input.scenario->notes;
  }

  InferResult result = [&] {
    try {
      return run_inference(input.observations(), input.model(), settings);
    } catch (const DegenerateError& e) {
      throw DegenerateError(std::string(e.what()) +
                            "; every simulation weight underflowed, try another --seed or a larger --K");
    }
  }();

  const fs::path dir(opt.out);
  std::vector<std::string> outputs;
  write_text_file(dir / "report.json", dump_json(result.report));
  outputs.push_back("report.json");
  for (const auto& s : result.samples) {
    write_text_file(dir / s.name, s.csv);
    outputs.push_back(s.name);
  }
  if (opt.save_batch) {
    write_text_file(dir / "batch.json", dump_json(batch_to_json(result.batch)));
    outputs.push_back("batch.json");
  }

  Json manifest;
  manifest["tool"] = "ndpseq";
  manifest["version"] = kVersion;
  manifest["command_line"] = argv;
  const auto config_json = config_to_json(input.model(), input.gamer());
  manifest["config_hash"] = fnv1a_hex(dump_json(config_json));
  manifest["data_hash"] = fnv1a_hex(counts_csv(input.observations()));
  manifest["scenario"] = settings.scenario ? Json(*settings.scenario) : Json(nullptr);
  manifest["seed"] = settings.engine.seed;
  manifest["K"] = settings.engine.num_simulations;
  manifest["log_scale_factor"] = settings.engine.log_scale_factor;
  manifest["trim"] = settings.trim;
  manifest["threads"] = opt.threads ? Json(*opt.threads) : Json(nullptr);
  manifest["prior_samples"] = settings.prior.size;
  manifest["started_at"] = started;
  manifest["finished_at"] = utc_now();
  manifest["outputs"] = outputs;
  write_text_file(dir / "manifest.json", dump_json(manifest));

  const auto& r = result.report;
  std::cout << "K = " << r["K"].get<std::size_t>() << ", ESS K_e'' = "
            << format_fixed(r["ess"]["double_prime"].get<double>(), 1);
  if (r.contains("ess_after_trim")) {
    std::cout << ", after trimming " << settings.trim << ": "
              << format_fixed(r["ess_after_trim"]["double_prime"].get<double>(), 1);
  }
  std::cout << '\n';
  for (const auto& q : r["queries"]) {
    std::cout << q["query"].get<std::string>() << ": E = " << format_fixed(q["expectation"].get<double>(), 4)
              << " (SE " << format_fixed(q["standard_error"].get<double>(), 4) << ")";
    for (const auto& p : q["probability_below"]) {
      std::cout << ", P(< " << format_double(p["threshold"].get<double>())
                << ") = " << format_fixed(p["probability"].get<double>(), 4);
    }
    std::cout << '\n';
  }
  std::cout << "wrote " << (dir / "report.json").string() << '\n';
  return 0;
}

// -------------------------------------------------------------- density

struct DensityOptions {
  std::string samples;
  std::optional<double> bandwidth;
  std::size_t points = 512;
  std::vector<double> clip;
  std::string out = "density";
  bool svg = false;
  std::string title;
};

int cmd_density(const DensityOptions& opt, const std::vector<std::string>& argv) {
  const auto law = parse_law_csv(read_text_file(opt.samples));
  GridSpec grid;
  grid.points = opt.points;
  if (!opt.clip.empty()) grid.clip = std::make_pair(opt.clip[0], opt.clip[1]);
  const auto curve = kde(law, opt.bandwidth, grid);

  write_text_file(opt.out + ".csv", kde_csv(curve));
  Json sidecar;
  sidecar["command_line"] = argv;
  sidecar["samples"] = opt.samples;
  sidecar["bandwidth"] = curve.bandwidth;
  sidecar["bandwidth_rule"] = curve.bandwidth_from_scott ? "scott" : "fixed";
  sidecar["n_eff"] = curve.effective_count;
  sidecar["grid"] = Json{{"points", curve.grid.size()},
                         {"lower", curve.grid.front()},
                         {"upper", curve.grid.back()},
                         {"clip", grid.clip ? Json{grid.clip->first, grid.clip->second} : Json(nullptr)}};
  sidecar["integral"] = integrate(curve);
  write_text_file(opt.out + ".json", dump_json(sidecar));
  if (opt.svg) write_text_file(opt.out + ".svg", kde_svg(curve, opt.title.empty() ? opt.samples : opt.title));
  std::cout << "h = " << format_double(curve.bandwidth) << ", n_eff = " << format_fixed(curve.effective_count, 1)
            << ", wrote " << opt.out << ".csv\n";
  return 0;
}

// --------------------------------------------------------------- oracle

struct OracleOptions {
  InputOptions input;
  std::vector<std::string> queries;
  std::size_t top = 10;
  std::string out;
};

int cmd_oracle(const OracleOptions& opt) {
  const auto input = load_input(opt.input);
  auto queries = parse_queries(opt.queries);
  if (queries.empty() && input.scenario) {
    for (const auto& t : input.scenario->targets) {
      if (t.statistic == "mean") queries.push_back(parse_query(t.query));
    }
  }
  emit(opt.out, dump_json(oracle_report(input.observations(), input.model(), queries, opt.top)));
  return 0;
}

// ---------------------------------------------------------------- gamer

struct GamerOptions {
  std::string action;
  double r = 7.0 / 3.0;
  double c = 28.0;
  double alpha = 3.0;
  std::size_t L = 500;
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  double from = 0.25;
  double to = 500.0;
  std::size_t points = 2000;
  std::string out;
};

int cmd_gamer(const GamerOptions& opt) {
  const gamer::GamerParams params{opt.r, opt.c, opt.alpha};
  params.validate();
  std::string csv;
  if (opt.action == "pdf" || opt.action == "cdf") {
    if (opt.points < 2) throw ValidationError("--points must be at least 2");
    if (!(opt.from < opt.to)) throw ValidationError("--from must be below --to");
    const bool pdf = opt.action == "pdf";
    csv = pdf ? "x,pdf\n" : "x,cdf\n";
    for (std::size_t i = 0; i < opt.points; ++i) {
      const double x = opt.from + (opt.to - opt.from) * static_cast<double>(i) /
                                      static_cast<double>(opt.points - 1);
      csv += format_double(x) + ',' + format_double(pdf ? gamer::pdf(params, x) : gamer::cdf(params, x)) + '\n';
    }
  } else if (opt.action == "sample") {
    RandomStream rng(opt.seed, kAuxiliaryStreamBase + 1);
    csv = "value\n";
    for (std::size_t i = 0; i < opt.n; ++i) csv += format_double(gamer::sample(params, rng)) + '\n';
  } else if (opt.action == "discretize") {
    const auto p = gamer::discretize(params, opt.L);
    csv = "state,probability\n";
    for (std::size_t l = 0; l < p.size(); ++l) csv += std::to_string(l) + ',' + format_double(p[l]) + '\n';
  } else {
    throw ValidationError("unknown gamer action '" + opt.action + "' (pdf, cdf, sample, discretize)");
  }
  emit(opt.out, csv);
  return 0;
}

// ------------------------------------------------------------- examples

struct ExportOptions {
  std::string out = "ndpseq-examples";
  std::vector<std::string> scenarios;
};

int cmd_export(const ExportOptions& opt, const std::vector<std::string>& argv) {
  const auto names = opt.scenarios.empty() ? scenario_names() : opt.scenarios;
  const fs::path root(opt.out);
  std::vector<std::string> outputs;
  for (const auto& name : names) {
    const auto s = load_scenario(name);
    const fs::path dir = root / name;
    write_text_file(dir / "counts.csv", counts_csv(s.data));
    outputs.push_back(name + "/counts.csv");
    if (s.data.raw_rows().size() == s.data.num_rows()) {
      write_text_file(dir / "labels.csv", label_csv(s.data));
      outputs.push_back(name + "/labels.csv");
    }
    write_text_file(dir / "config.json", dump_json(config_to_json(s.config, s.gamer)));
    outputs.push_back(name + "/config.json");
    Json meta;
    meta["name"] = s.name;
    meta["description"] = s.description;
    meta["K"] = s.num_simulations;
    meta["log_scale_factor"] = s.log_scale_factor;
    meta["trim"] = s.trim;
    meta["row_names"] = s.row_names;
    meta["reference_ess"] = s.reference_ess ? Json(*s.reference_ess) : Json(nullptr);
    meta["reference_ess_trimmed"] = s.reference_ess_trimmed ? Json(*s.reference_ess_trimmed) : Json(nullptr);
    Json targets = Json::array();
    for (const auto& t : s.targets) {
      Json entry{{"query", t.query}, {"statistic", t.statistic}};
      if (t.statistic == "below") entry["threshold"] = t.threshold;
      if (t.offset != 0.0) entry["offset"] = t.offset;
      entry["value"] = t.value;
      entry["source"] = t.source;
      targets.push_back(std::move(entry));
    }
    meta["targets"] = std::move(targets);
    meta["notes"] = s.notes;
    write_text_file(dir / "scenario.json", dump_json(meta));
    outputs.push_back(name + "/scenario.json");
    std::cout << "exported " << name << " to " << dir.string() << '\n';
  }
  Json manifest{{"tool", "ndpseq"}, {"version", kVersion}, {"command_line", argv},
                {"created_at", utc_now()}, {"outputs", outputs}};
  write_text_file(root / "manifest.json", dump_json(manifest));
  return 0;
}

int run(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"Posterior inference for the nested Dirichlet process by sequential imputation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  InferOptions infer;
  auto* infer_cmd = app.add_subcommand("infer", "Run weighted simulations and evaluate queries");
  infer.input.add_to(infer_cmd);
  infer_cmd->add_option("--K", infer.K, "Number of weighted simulations")->check(CLI::PositiveNumber);
  infer_cmd->add_option("--seed", infer.seed, "64-bit seed")->capture_default_str();
  infer_cmd->add_option("--log-scale", infer.log_scale, "Log scale factor log c (reporting only)");
  infer_cmd->add_option("--trim", infer.trim, "Drop the n heaviest simulations");
  infer_cmd->add_option("--threads", infer.threads, "Worker threads")->check(CLI::PositiveNumber);
  infer_cmd->add_option("--query", infer.queries, "Query, e.g. 'component 5 1 below 0.5' (repeatable)");
  infer_cmd->add_option("--prior-samples", infer.prior_samples, "Prior draws for new-agent laws")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  infer_cmd->add_option("--out", infer.out, "Output directory")->capture_default_str();
  infer_cmd->add_flag("--save-batch", infer.save_batch, "Also write the full batch as JSON");

  DensityOptions density;
  auto* density_cmd = app.add_subcommand("density", "Weighted Gaussian KDE of a query's sample CSV");
  density_cmd->add_option("--samples", density.samples, "atom,weight CSV written by infer")->required();
  density_cmd->add_option("--bandwidth", density.bandwidth, "Kernel bandwidth (default: Scott's rule)");
  density_cmd->add_option("--points", density.points, "Grid points")->capture_default_str();
  density_cmd->add_option("--clip", density.clip, "Clip the grid to LO HI")->expected(2);
  density_cmd->add_option("--out", density.out, "Output prefix (.csv, .json, .svg)")->capture_default_str();
  density_cmd->add_flag("--svg", density.svg, "Also write an SVG plot");
  density_cmd->add_option("--title", density.title, "SVG title");

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact posterior by partition enumeration (M <= 12)");
  oracle.input.add_to(oracle_cmd);
  oracle_cmd->add_option("--query", oracle.queries, "Query (repeatable)");
  oracle_cmd->add_option("--top", oracle.top, "Most probable partitions to list")->capture_default_str();
  oracle_cmd->add_option("--out", oracle.out, "Output JSON file (default stdout)");

  GamerOptions gamer_opt;
  auto* gamer_cmd = app.add_subcommand("gamer", "Gamer distribution: pdf, cdf, sample, discretize");
  gamer_cmd->add_option("action", gamer_opt.action, "pdf | cdf | sample | discretize")->required();
  gamer_cmd->add_option("--r", gamer_opt.r, "Tail index")->capture_default_str();
  gamer_cmd->add_option("--c", gamer_opt.c, "Low-skill mean score")->capture_default_str();
  gamer_cmd->add_option("--alpha", gamer_opt.alpha, "Gamma shape")->capture_default_str();
  gamer_cmd->add_option("--L", gamer_opt.L, "Number of states for discretize")->capture_default_str();
  gamer_cmd->add_option("--n", gamer_opt.n, "Sample size")->capture_default_str();
  gamer_cmd->add_option("--seed", gamer_opt.seed, "Sampling seed")->capture_default_str();
  gamer_cmd->add_option("--from", gamer_opt.from, "Grid start for pdf/cdf")->capture_default_str();
  gamer_cmd->add_option("--to", gamer_opt.to, "Grid end for pdf/cdf")->capture_default_str();
  gamer_cmd->add_option("--points", gamer_opt.points, "Grid points for pdf/cdf")->capture_default_str();
  gamer_cmd->add_option("--out", gamer_opt.out, "Output CSV (default stdout)");

  ExportOptions export_opt;
  auto* examples_cmd = app.add_subcommand("examples", "Built-in example datasets");
  examples_cmd->require_subcommand(1);
  auto* export_cmd = examples_cmd->add_subcommand("export", "Write scenario data and configs to disk");
  export_cmd->add_option("--out", export_opt.out, "Output directory")->capture_default_str();
  export_cmd->add_option("--scenario", export_opt.scenarios, "Scenario to export (repeatable; default all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (*infer_cmd) return cmd_infer(infer, args);
  if (*density_cmd) return cmd_density(density, args);
  if (*oracle_cmd) return cmd_oracle(oracle);
  if (*gamer_cmd) return cmd_gamer(gamer_opt);
  if (*export_cmd) return cmd_export(export_opt, args);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const IoError& e) {
    std::cerr << "ndpseq: I/O error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "ndpseq: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ndpseq: " << e.what() << '\n';
    return 1;
  }
}
