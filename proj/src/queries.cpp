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

#include "ndpseq/queries.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <numeric>

#include "ndpseq/error.hpp"
#include "ndpseq/random.hpp"

namespace ndpseq {

Functional Functional::component(std::size_t row, std::size_t state) {
  Functional f;
  f.kind = FunctionalKind::kComponent;
  f.row = row;
  f.state = state;
  return f;
}

Functional Functional::mean_score(std::size_t row) {
  Functional f;
  f.kind = FunctionalKind::kMeanScore;
  f.row = row;
  return f;
}

Functional Functional::new_agent_component(std::size_t state) {
  Functional f;
  f.kind = FunctionalKind::kNewAgentComponent;
  f.state = state;
  return f;
}

Functional Functional::new_agent_mean() {
  Functional f;
  f.kind = FunctionalKind::kNewAgentMean;
  return f;
}

Functional Functional::contest(std::size_t row, std::size_t other_row) {
  Functional f;
  f.kind = FunctionalKind::kContest;
  f.row = row;
  f.other_row = other_row;
  return f;
}

Functional Functional::mean_diff(std::size_t row, std::size_t other_row) {
  Functional f;
  f.kind = FunctionalKind::kMeanDiff;
  f.row = row;
  f.other_row = other_row;
  return f;
}

Functional Functional::cocluster(std::size_t row, std::size_t other_row) {
  Functional f;
  f.kind = FunctionalKind::kCocluster;
  f.row = row;
  f.other_row = other_row;
  return f;
}

Functional Functional::indicator_less(Functional inner, double threshold) {
  Functional f;
  f.kind = FunctionalKind::kIndicatorLess;
  f.threshold = threshold;
  f.inner = std::make_shared<const Functional>(std::move(inner));
  return f;
}

bool Functional::is_new_agent() const {
  switch (kind) {
    case FunctionalKind::kNewAgentComponent:
    case FunctionalKind::kNewAgentMean:
      return true;
    case FunctionalKind::kIndicatorLess:
      return inner->is_new_agent();
    default:
      return false;
  }
}

bool Functional::is_linear() const {
  switch (kind) {
    case FunctionalKind::kComponent:
    case FunctionalKind::kMeanScore:
    case FunctionalKind::kNewAgentComponent:
    case FunctionalKind::kNewAgentMean:
    case FunctionalKind::kMeanDiff:
      return true;
    default:
      return false;
  }
}

namespace {

std::string format_number(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, result.ptr);
}

}  // namespace

std::string Functional::to_string() const {
  switch (kind) {
    case FunctionalKind::kComponent:
      return "component " + std::to_string(row) + " " + std::to_string(state);
    case FunctionalKind::kMeanScore:
      return "mean_score " + std::to_string(row);
    case FunctionalKind::kNewAgentComponent:
      return "new_agent_component " + std::to_string(state);
    case FunctionalKind::kNewAgentMean:
      return "new_agent_mean";
    case FunctionalKind::kContest:
      return "contest " + std::to_string(row) + " " + std::to_string(other_row);
    case FunctionalKind::kMeanDiff:
      return "mean_diff " + std::to_string(row) + " " + std::to_string(other_row);
    case FunctionalKind::kCocluster:
      return "cocluster " + std::to_string(row) + " " + std::to_string(other_row);
    case FunctionalKind::kIndicatorLess:
      return "lt " + format_number(threshold) + " " + inner->to_string();
  }
  return {};
}

void Functional::validate(std::size_t num_rows, std::size_t num_states) const {
  auto check_row = [&](std::size_t r) {
    if (r < 1 || r > num_rows) {
      throw ValidationError("row index " + std::to_string(r) + " outside [1, " +
                            std::to_string(num_rows) + "] in '" + to_string() + "'");
    }
  };
  auto check_state = [&](std::size_t s) {
    if (s >= num_states) {
      throw ValidationError("state " + std::to_string(s) + " outside [0, " +
                            std::to_string(num_states) + ") in '" + to_string() + "'");
    }
  };
  switch (kind) {
    case FunctionalKind::kComponent:
      check_row(row);
      check_state(state);
      break;
    case FunctionalKind::kMeanScore:
      check_row(row);
      break;
    case FunctionalKind::kNewAgentComponent:
      check_state(state);
      break;
    case FunctionalKind::kNewAgentMean:
      break;
    case FunctionalKind::kContest:
    case FunctionalKind::kMeanDiff:
    case FunctionalKind::kCocluster:
      check_row(row);
      check_row(other_row);
      break;
    case FunctionalKind::kIndicatorLess:
      if (!inner) throw ValidationError("indicator functional without an inner functional");
      if (std::isnan(threshold)) throw ValidationError("indicator threshold is NaN");
      inner->validate(num_rows, num_states);
      break;
  }
}

namespace {

class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : text_(text) {}

  std::optional<std::string_view> next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) return std::nullopt;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::string_view expect(const char* what) {
    auto tok = next();
    if (!tok) throw ValidationError(std::string("query ended early, expected ") + what);
    return *tok;
  }

  std::size_t expect_index(const char* what) {
    const auto tok = expect(what);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ValidationError("expected a nonnegative integer " + std::string(what) + ", got '" +
                            std::string(tok) + "'");
    }
    return value;
  }

  double expect_number(const char* what) {
    const auto tok = expect(what);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
      throw ValidationError("expected a number for " + std::string(what) + ", got '" +
                            std::string(tok) + "'");
    }
    return value;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Functional parse_from(TokenStream& tokens) {
  const auto verb = tokens.expect("a functional name");
  if (verb == "component") {
    const auto row = tokens.expect_index("row");
    return Functional::component(row, tokens.expect_index("state"));
  }
  if (verb == "mean_score") return Functional::mean_score(tokens.expect_index("row"));
  if (verb == "new_agent_component") {
    return Functional::new_agent_component(tokens.expect_index("state"));
  }
  if (verb == "new_agent_mean") return Functional::new_agent_mean();
  if (verb == "contest") {
    const auto row = tokens.expect_index("row");
    return Functional::contest(row, tokens.expect_index("row"));
  }
  if (verb == "mean_diff") {
    const auto row = tokens.expect_index("row");
    return Functional::mean_diff(row, tokens.expect_index("row"));
  }
  if (verb == "cocluster") {
    const auto row = tokens.expect_index("row");
    return Functional::cocluster(row, tokens.expect_index("row"));
  }
  if (verb == "lt") {
    const double threshold = tokens.expect_number("threshold");
    return Functional::indicator_less(parse_from(tokens), threshold);
  }
  throw ValidationError("unknown functional '" + std::string(verb) + "'");
}

}  // namespace

Functional parse_functional(std::string_view text) {
  TokenStream tokens(text);
  auto f = parse_from(tokens);
  if (auto extra = tokens.next()) {
    throw ValidationError("unexpected token '" + std::string(*extra) + "' in functional");
  }
  return f;
}

Query parse_query(std::string_view text) {
  TokenStream tokens(text);
  Query q;
  q.functional = parse_from(tokens);
  while (auto tok = tokens.next()) {
    if (*tok != "below") {
      throw ValidationError("unexpected token '" + std::string(*tok) + "', expected 'below'");
    }
    q.below.push_back(tokens.expect_number("threshold"));
  }
  q.text = q.functional.to_string();
  for (double t : q.below) q.text += " below " + format_number(t);
  return q;
}

namespace {

double mean_score_of(std::span<const double> theta) {
  double acc = 0.0;
  for (std::size_t l = 1; l < theta.size(); ++l) acc += static_cast<double>(l) * theta[l];
  return acc;
}

// sum_{l > l'} x_l y_l'
double contest_of(std::span<const double> x, std::span<const double> y) {
  double below = 0.0;
  double acc = 0.0;
  for (std::size_t l = 0; l < x.size(); ++l) {
    acc += x[l] * below;
    below += y[l];
  }
  return acc;
}

}  // namespace

double evaluate(const Functional& f, const WeightedSimulation& sim, std::size_t num_states) {
  switch (f.kind) {
    case FunctionalKind::kComponent:
      return sim.theta(f.row - 1, num_states)[f.state];
    case FunctionalKind::kMeanScore:
      return mean_score_of(sim.theta(f.row - 1, num_states));
    case FunctionalKind::kContest:
      return contest_of(sim.theta(f.row - 1, num_states), sim.theta(f.other_row - 1, num_states));
    case FunctionalKind::kMeanDiff:
      return mean_score_of(sim.theta(f.row - 1, num_states)) -
             mean_score_of(sim.theta(f.other_row - 1, num_states));
    case FunctionalKind::kCocluster:
      return sim.cluster_of[f.row - 1] == sim.cluster_of[f.other_row - 1] ? 1.0 : 0.0;
    case FunctionalKind::kIndicatorLess:
      return evaluate(*f.inner, sim, num_states) < f.threshold ? 1.0 : 0.0;
    case FunctionalKind::kNewAgentComponent:
    case FunctionalKind::kNewAgentMean:
      break;
  }
  throw ValidationError("'" + f.to_string() + "' is a new-agent functional");
}

double evaluate_on_vector(const Functional& f, std::span<const double> theta) {
  switch (f.kind) {
    case FunctionalKind::kNewAgentComponent:
      return theta[f.state];
    case FunctionalKind::kNewAgentMean:
      return mean_score_of(theta);
    case FunctionalKind::kIndicatorLess:
      return evaluate_on_vector(*f.inner, theta) < f.threshold ? 1.0 : 0.0;
    default:
      break;
  }
  throw ValidationError("'" + f.to_string() + "' is not a functional of a single new row");
}

namespace {

void check_batch(const SimulationBatch& batch) {
  if (batch.sims.empty() || batch.normalized_weights.size() != batch.sims.size()) {
    throw ValidationError("batch has no weighted simulations");
  }
}

struct PriorSample {
  std::vector<double> values;
  double mean = 0.0;
};

PriorSample prior_sample(const SimulationBatch& batch, const Functional& f,
                         const PriorSampleOptions& options) {
  if (options.size == 0) throw ValidationError("prior sample size must be positive");
  const auto& config = batch.config;
  const std::size_t num_states = config.num_states();
  std::vector<double> alpha(num_states);
  for (std::size_t l = 0; l < num_states; ++l) alpha[l] = config.eps() * config.base()[l];
  RandomStream rng(options.seed.value_or(batch.seed), kAuxiliaryStreamBase);
  std::vector<double> scratch(num_states);
  std::vector<double> theta(num_states);
  PriorSample out;
  out.values.reserve(options.size);
  double total = 0.0;
  for (std::size_t i = 0; i < options.size; ++i) {
    sample_dirichlet_into(alpha, rng, scratch, theta);
    out.values.push_back(evaluate_on_vector(f, theta));
    total += out.values.back();
  }
  out.mean = total / static_cast<double>(options.size);
  return out;
}

// f(p) for a linear new-agent functional.
double exact_prior_value(const SimulationBatch& batch, const Functional& f) {
  return evaluate_on_vector(f, batch.config.base().values());
}

}  // namespace

WeightedSampleLaw new_agent_law(const SimulationBatch& batch, const Functional& f,
                                const PriorSampleOptions& prior) {
  check_batch(batch);
  if (!f.is_new_agent()) {
    throw ValidationError("'" + f.to_string() + "' is not a new-agent functional");
  }
  f.validate(batch.num_rows, batch.num_states());
  const std::size_t num_states = batch.num_states();
  const double kappa = batch.config.kappa();
  const double rows = static_cast<double>(batch.num_rows);
  const double row_mass = 1.0 / (kappa + rows);

  WeightedSampleLaw law;
  law.atoms.reserve(batch.size() * batch.num_rows + prior.size);
  law.weights.reserve(law.atoms.capacity());
  for (std::size_t k = 0; k < batch.size(); ++k) {
    const auto& sim = batch.sims[k];
    const double w = batch.normalized_weights[k] * row_mass;
    for (std::size_t m = 0; m < batch.num_rows; ++m) {
      law.atoms.push_back(evaluate_on_vector(f, sim.theta(m, num_states)));
      law.weights.push_back(w);
    }
  }
  law.prior_begin = law.atoms.size();
  law.prior_mass = kappa * row_mass;
  auto sample = prior_sample(batch, f, prior);
  const double each = law.prior_mass / static_cast<double>(sample.values.size());
  for (double v : sample.values) {
    law.atoms.push_back(v);
    law.weights.push_back(each);
  }
  if (f.is_linear()) law.prior_mean = exact_prior_value(batch, f);
  return law;
}

WeightedSampleLaw law_of(const SimulationBatch& batch, const Functional& f,
                         const PriorSampleOptions& prior) {
  if (f.is_new_agent()) return new_agent_law(batch, f, prior);
  check_batch(batch);
  f.validate(batch.num_rows, batch.num_states());
  WeightedSampleLaw law;
  law.atoms.reserve(batch.size());
  for (const auto& sim : batch.sims) law.atoms.push_back(evaluate(f, sim, batch.num_states()));
  law.weights = batch.normalized_weights;
  law.prior_begin = law.atoms.size();
  return law;
}

double expectation(const WeightedSampleLaw& law) {
  double acc = 0.0;
  const std::size_t end = law.prior_mean ? law.prior_begin : law.atoms.size();
  for (std::size_t i = 0; i < end; ++i) acc += law.weights[i] * law.atoms[i];
  if (law.prior_mean) acc += law.prior_mass * *law.prior_mean;
  return acc;
}

double probability_below(const WeightedSampleLaw& law, double threshold) {
  double acc = 0.0;
  for (std::size_t i = 0; i < law.atoms.size(); ++i) {
    if (law.atoms[i] < threshold) acc += law.weights[i];
  }
  return acc;
}

Estimate estimate(const SimulationBatch& batch, const Functional& f,
                  const PriorSampleOptions& prior) {
  check_batch(batch);
  f.validate(batch.num_rows, batch.num_states());
  const std::size_t num_states = batch.num_states();
  std::vector<double> per_sim(batch.size());
  if (f.is_new_agent()) {
    const double kappa = batch.config.kappa();
    const double prior_value =
        f.is_linear() ? exact_prior_value(batch, f) : prior_sample(batch, f, prior).mean;
    const double scale = 1.0 / (kappa + static_cast<double>(batch.num_rows));
    for (std::size_t k = 0; k < batch.size(); ++k) {
      double acc = kappa * prior_value;
      for (std::size_t m = 0; m < batch.num_rows; ++m) {
        acc += evaluate_on_vector(f, batch.sims[k].theta(m, num_states));
      }
      per_sim[k] = acc * scale;
    }
  } else {
    for (std::size_t k = 0; k < batch.size(); ++k) {
      per_sim[k] = evaluate(f, batch.sims[k], num_states);
    }
  }
  Estimate out;
  for (std::size_t k = 0; k < batch.size(); ++k) out.value += batch.normalized_weights[k] * per_sim[k];
  double var = 0.0;
  for (std::size_t k = 0; k < batch.size(); ++k) {
    const double d = batch.normalized_weights[k] * (per_sim[k] - out.value);
    var += d * d;
  }
  out.standard_error = std::sqrt(var);
  return out;
}

std::vector<double> cocluster_matrix(const SimulationBatch& batch) {
  check_batch(batch);
  const std::size_t rows = batch.num_rows;
  std::vector<double> out(rows * rows, 0.0);
  for (std::size_t k = 0; k < batch.size(); ++k) {
    const auto& cluster = batch.sims[k].cluster_of;
    const double w = batch.normalized_weights[k];
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = i + 1; j < rows; ++j) {
        if (cluster[i] == cluster[j]) out[i * rows + j] += w;
      }
    }
  }
  for (std::size_t i = 0; i < rows; ++i) {
    out[i * rows + i] = 1.0;
    for (std::size_t j = i + 1; j < rows; ++j) out[j * rows + i] = out[i * rows + j];
  }
  return out;
}

SimplexVector predictive_next(const SimulationBatch& batch, std::size_t row) {
  check_batch(batch);
  const std::size_t rows = batch.num_rows;
  const std::size_t num_states = batch.num_states();
  if (row < 1 || row > rows + 1) {
    throw ValidationError("row index " + std::to_string(row) + " outside [1, " +
                          std::to_string(rows + 1) + "]");
  }
  std::vector<double> mean(num_states, 0.0);
  auto accumulate_row = [&](std::size_t m, double scale) {
    for (std::size_t k = 0; k < batch.size(); ++k) {
      const auto theta = batch.sims[k].theta(m, num_states);
      const double w = batch.normalized_weights[k] * scale;
      for (std::size_t l = 0; l < num_states; ++l) mean[l] += w * theta[l];
    }
  };
  if (row <= rows) {
    accumulate_row(row - 1, 1.0);
  } else {
    const double kappa = batch.config.kappa();
    const double scale = 1.0 / (kappa + static_cast<double>(rows));
    for (std::size_t l = 0; l < num_states; ++l) mean[l] = kappa * scale * batch.config.base()[l];
    for (std::size_t m = 0; m < rows; ++m) accumulate_row(m, scale);
  }
  return SimplexVector(std::move(mean));
}

}  // namespace ndpseq
