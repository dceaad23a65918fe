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

// Python bindings. Reports cross the boundary as JSON text; the ndpseq
// package turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "ndpseq/datasets.hpp"
#include "ndpseq/engine.hpp"
#include "ndpseq/error.hpp"
#include "ndpseq/gamer.hpp"
#include "ndpseq/io.hpp"
#include "ndpseq/kde.hpp"
#include "ndpseq/report.hpp"

namespace py = pybind11;
using namespace ndpseq;

namespace {

struct Input {
  ObservationArray data;
  ModelConfig config;
  std::optional<gamer::GamerParams> gamer;
  std::optional<Scenario> scenario;
};

Input make_input(const std::optional<std::string>& scenario,
                 const std::optional<std::vector<CountVector>>& counts,
                 const std::optional<std::vector<std::vector<std::int64_t>>>& rows,
                 const std::optional<std::string>& config_json) {
  if (scenario) {
    if (counts || rows || config_json) throw ValidationError("give a scenario or data with a config, not both");
    auto s = load_scenario(*scenario);
    return {s.data, s.config, s.gamer, s};
  }
  if (!config_json) throw ValidationError("a config is required without a scenario");
  if (counts.has_value() == rows.has_value()) throw ValidationError("give exactly one of counts or rows");
  auto file = parse_config_json(*config_json);
  const std::size_t states = file.config.num_states();
  auto data = counts ? ObservationArray::from_counts(*counts, states) : validate_and_count(*rows, states);
  return {std::move(data), file.config, file.gamer, std::nullopt};
}

std::string infer(const std::optional<std::string>& scenario,
                  const std::optional<std::vector<CountVector>>& counts,
                  const std::optional<std::vector<std::vector<std::int64_t>>>& rows,
                  const std::optional<std::string>& config_json, std::optional<std::size_t> K,
                  std::uint64_t seed, std::optional<double> log_scale, std::optional<std::size_t> trim,
                  std::optional<std::size_t> threads, const std::vector<std::string>& queries,
                  std::size_t prior_samples) {
  auto input = make_input(scenario, counts, rows, config_json);
  InferSettings settings;
  const auto& s = input.scenario;
  settings.engine = {K.value_or(s ? s->num_simulations : 10000), seed,
                     log_scale.value_or(s ? s->log_scale_factor : 0.0), threads};
  settings.trim = trim.value_or(s ? s->trim : 0);
  for (const auto& q : queries) settings.queries.push_back(parse_query(q));
  settings.prior.size = prior_samples;
  settings.gamer = input.gamer;
  if (s) {
    settings.scenario = s->name;
    settings.targets = s->targets;
    settings.notes = s->notes;
  }
  py::gil_scoped_release release;
  const auto result = run_inference(input.data, input.config, settings);
  return dump_json(result.report);
}

std::string oracle(const std::optional<std::string>& scenario,
                   const std::optional<std::vector<CountVector>>& counts,
                   const std::optional<std::vector<std::vector<std::int64_t>>>& rows,
                   const std::optional<std::string>& config_json, const std::vector<std::string>& queries,
                   std::size_t top) {
  auto input = make_input(scenario, counts, rows, config_json);
  std::vector<Query> parsed;
  for (const auto& q : queries) parsed.push_back(parse_query(q));
  return dump_json(oracle_report(input.data, input.config, parsed, top));
}

}  // namespace

PYBIND11_MODULE(_ndpseq, m) {
  m.doc() = "Nested Dirichlet process posterior inference by sequential imputation";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<DegenerateError>(m, "DegenerateError", PyExc_ArithmeticError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception<LookupError>(m, "LookupError", PyExc_KeyError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("scenario_names", &scenario_names);
  m.def("infer_json", &infer, py::arg("scenario") = py::none(), py::arg("counts") = py::none(),
        py::arg("rows") = py::none(), py::arg("config") = py::none(), py::arg("K") = py::none(),
        py::arg("seed") = 1, py::arg("log_scale") = py::none(), py::arg("trim") = py::none(),
        py::arg("threads") = py::none(), py::arg("queries") = std::vector<std::string>{},
        py::arg("prior_samples") = 10000);
  m.def("oracle_json", &oracle, py::arg("scenario") = py::none(), py::arg("counts") = py::none(),
        py::arg("rows") = py::none(), py::arg("config") = py::none(),
        py::arg("queries") = std::vector<std::string>{}, py::arg("top") = 10);

  m.def("log_marginal_likelihood",
        [](const CountVector& counts, double eps, const std::vector<double>& base) {
          return log_marginal_likelihood(counts, eps, SimplexVector(base));
        },
        py::arg("counts"), py::arg("eps"), py::arg("base"));
  m.def("ess",
        [](const std::vector<double>& weights) {
          const auto e = ndpseq::ess(weights);
          return py::make_tuple(e.prime, e.double_prime);
        },
        py::arg("weights"));

  m.def("gamer_pdf", [](double x, double r, double c, double alpha) { return gamer::pdf({r, c, alpha}, x); },
        py::arg("x"), py::arg("r") = 7.0 / 3.0, py::arg("c") = 28.0, py::arg("alpha") = 3.0);
  m.def("gamer_cdf", [](double x, double r, double c, double alpha) { return gamer::cdf({r, c, alpha}, x); },
        py::arg("x"), py::arg("r") = 7.0 / 3.0, py::arg("c") = 28.0, py::arg("alpha") = 3.0);
  m.def("gamer_sample",
        [](std::size_t n, std::uint64_t seed, double r, double c, double alpha) {
          RandomStream rng(seed, kAuxiliaryStreamBase + 1);
          std::vector<double> out(n);
          for (auto& x : out) x = gamer::sample({r, c, alpha}, rng);
          return out;
        },
        py::arg("n"), py::arg("seed") = 1, py::arg("r") = 7.0 / 3.0, py::arg("c") = 28.0,
        py::arg("alpha") = 3.0);
  m.def("gamer_discretize",
        [](std::size_t L, double r, double c, double alpha) {
          return gamer::discretize({r, c, alpha}, L).vector();
        },
        py::arg("L") = 500, py::arg("r") = 7.0 / 3.0, py::arg("c") = 28.0, py::arg("alpha") = 3.0);

  m.def("kde",
        [](const std::vector<double>& atoms, const std::vector<double>& weights, std::optional<double> bandwidth,
           std::size_t points) {
          WeightedSampleLaw law;
          law.atoms = atoms;
          law.weights = weights;
          law.prior_begin = atoms.size();
          GridSpec grid;
          grid.points = points;
          const auto curve = ndpseq::kde(law, bandwidth, grid);
          return py::make_tuple(curve.grid, curve.values, curve.bandwidth);
        },
        py::arg("atoms"), py::arg("weights"), py::arg("bandwidth") = py::none(), py::arg("points") = 512);
}
