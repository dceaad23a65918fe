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

#include "ndpseq/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

#include "ndpseq/error.hpp"
#include "ndpseq/special.hpp"

namespace ndpseq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Sum over the row's nonzero counts of y_l * log(theta_l). A zero component
// under a positive count gives -inf, i.e. t_mi = 0 exactly.
double log_row_weight(std::span<const std::pair<std::uint32_t, std::int64_t>> nonzero,
                      std::span<const double> theta) {
  double acc = 0.0;
  for (const auto& [state, count] : nonzero) {
    const double v = theta[state];
    if (v <= 0.0) return kNegInf;
    acc += static_cast<double>(count) * std::log(v);
  }
  return acc;
}

void check_shapes(const ObservationArray& data, const ModelConfig& config) {
  if (data.num_states() != config.num_states()) {
    throw ShapeError("data has L = " + std::to_string(data.num_states()) +
                     " states but the model has L = " + std::to_string(config.num_states()));
  }
}

// Per-dataset precomputation plus scratch buffers; one instance per worker.
class Simulator {
 public:
  Simulator(const ObservationArray& data, const ModelConfig& config)
      : data_(data), config_(config), num_states_(config.num_states()) {
    check_shapes(data, config);
    const std::size_t rows = data.num_rows();
    log_fresh_.resize(rows);
    alpha_.resize(rows * num_states_);
    for (std::size_t m = 0; m < rows; ++m) {
      log_fresh_[m] =
          std::log(config.kappa()) + log_marginal_likelihood(data.counts(m), config.eps(), config.base());
      const auto a = dirichlet_posterior_params(config.eps(), config.base(), data.counts(m));
      std::copy(a.begin(), a.end(), alpha_.begin() + static_cast<std::ptrdiff_t>(m * num_states_));
    }
    log_scratch_.resize(num_states_);
    cluster_log_weight_.reserve(rows);
    cumulative_.reserve(rows + 1);
  }

  WeightedSimulation run(RandomStream& rng) {
    const std::size_t rows = data_.num_rows();
    WeightedSimulation sim;
    sim.cluster_of.resize(rows);
    sim.slot_of.resize(rows);
    cluster_root_.clear();
    cluster_size_.clear();
    log_thetas_.clear();
    double log_weight = 0.0;

    for (std::size_t m = 0; m < rows; ++m) {
      const auto nonzero = data_.nonzero(m);
      const std::size_t clusters = cluster_size_.size();

      // Rows i < m in the same cluster share t_mi, so the categorical over
      // i = 1..m collapses to one over clusters with weights n_c t_c.
      cluster_log_weight_.clear();
      double peak = log_fresh_[m];
      for (std::size_t c = 0; c < clusters; ++c) {
        const double* log_theta = log_thetas_.data() + c * num_states_;
        double lw = 0.0;
        for (const auto& [state, count] : nonzero) lw += static_cast<double>(count) * log_theta[state];
        lw += std::log(static_cast<double>(cluster_size_[c]));
        cluster_log_weight_.push_back(lw);
        peak = std::max(peak, lw);
      }

      // Cumulative weights scaled by exp(-peak); the fresh draw comes last.
      cumulative_.clear();
      double total = 0.0;
      for (std::size_t c = 0; c < clusters; ++c) {
        total += std::exp(cluster_log_weight_[c] - peak);
        cumulative_.push_back(total);
      }
      total += std::exp(log_fresh_[m] - peak);
      cumulative_.push_back(total);

      const double u = rng.uniform() * total;
      const auto hit = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
      const std::size_t choice =
          hit == cumulative_.end() ? clusters : static_cast<std::size_t>(hit - cumulative_.begin());

      if (choice < clusters) {
        sim.slot_of[m] = static_cast<std::uint32_t>(choice);
        sim.cluster_of[m] = cluster_root_[choice];
        ++cluster_size_[choice];
      } else {
        sim.slot_of[m] = static_cast<std::uint32_t>(clusters);
        sim.cluster_of[m] = static_cast<std::uint32_t>(m);
        cluster_root_.push_back(static_cast<std::uint32_t>(m));
        cluster_size_.push_back(1);
        sim.thetas.resize((clusters + 1) * num_states_);
        log_thetas_.resize((clusters + 1) * num_states_);
        const std::span<const double> alpha(alpha_.data() + m * num_states_, num_states_);
        double* theta = sim.thetas.data() + clusters * num_states_;
        sample_dirichlet_into(alpha, rng, log_scratch_, std::span<double>(theta, num_states_));
        double* log_theta = log_thetas_.data() + clusters * num_states_;
        for (std::size_t l = 0; l < num_states_; ++l) {
          log_theta[l] = theta[l] > 0.0 ? std::log(theta[l]) : kNegInf;
        }
      }

      log_weight += peak + std::log(total) - std::log(config_.kappa() + static_cast<double>(m));
    }
    sim.thetas.shrink_to_fit();
    sim.log_weight = log_weight;
    return sim;
  }

 private:
  const ObservationArray& data_;
  const ModelConfig& config_;
  std::size_t num_states_;
  std::vector<double> log_fresh_;  // log t_mm
  std::vector<double> alpha_;      // eps p + y_m, row-major
  std::vector<double> log_scratch_;
  std::vector<double> cluster_log_weight_;
  std::vector<double> cumulative_;
  std::vector<std::uint32_t> cluster_root_;
  std::vector<std::size_t> cluster_size_;
  std::vector<double> log_thetas_;  // log of each cluster vector
};

void finalize(SimulationBatch& batch) {
  std::vector<double> log_weights(batch.sims.size());
  for (std::size_t k = 0; k < batch.sims.size(); ++k) log_weights[k] = batch.sims[k].log_weight;
  batch.normalized_weights = normalize_log_weights(log_weights);
  batch.ess = ess(batch.normalized_weights);
}

}  // namespace

WeightedSimulation simulate_one(const ObservationArray& data, const ModelConfig& config,
                                RandomStream& rng) {
  Simulator simulator(data, config);
  return simulator.run(rng);
}

SimulationBatch run_batch(const ObservationArray& data, const ModelConfig& config,
                          const EngineOptions& options) {
  if (options.num_simulations == 0) {
    throw ValidationError("number of simulations K must be at least 1");
  }
  if (!std::isfinite(options.log_scale_factor)) {
    throw ValidationError("log scale factor must be finite");
  }
  check_shapes(data, config);
  const std::size_t count = options.num_simulations;
  std::size_t threads = options.threads.value_or(std::max(1u, std::thread::hardware_concurrency()));
  if (threads == 0) throw ValidationError("thread count must be positive");
  threads = std::min(threads, count);

  SimulationBatch batch{config};
  batch.num_rows = data.num_rows();
  batch.seed = options.seed;
  batch.log_scale_factor = options.log_scale_factor;
  batch.generated = count;
  batch.sims.resize(count);
  batch.source_index.resize(count);
  std::iota(batch.source_index.begin(), batch.source_index.end(), std::size_t{0});

  auto work = [&](std::size_t begin, std::size_t end) {
    Simulator simulator(data, config);
    for (std::size_t k = begin; k < end; ++k) {
      RandomStream rng(options.seed, k);
      batch.sims[k] = simulator.run(rng);
    }
  };

  if (threads == 1) {
    work(0, count);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    const std::size_t chunk = (count + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(count, t * chunk);
      const std::size_t end = std::min(count, begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  finalize(batch);
  return batch;
}

std::vector<double> normalize_log_weights(std::span<const double> log_weights) {
  if (log_weights.empty()) throw DegenerateError("no weights to normalize");
  double peak = kNegInf;
  for (double lw : log_weights) {
    if (std::isnan(lw) || lw == std::numeric_limits<double>::infinity()) {
      throw DegenerateError("log weights contain NaN or +inf");
    }
    peak = std::max(peak, lw);
  }
  if (peak == kNegInf) throw DegenerateError("every weight is zero");
  std::vector<double> w(log_weights.size());
  double total = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] = std::exp(log_weights[k] - peak);
    total += w[k];
  }
  for (double& v : w) v /= total;
  return w;
}

EssStats ess(std::span<const double> weights) {
  if (weights.empty()) throw DegenerateError("effective sample size of an empty batch");
  double sum = 0.0;
  double sum_sq = 0.0;
  double peak = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw DomainError("weights must be finite and nonnegative");
    }
    peak = std::max(peak, w);
  }
  if (peak == 0.0) throw DegenerateError("every weight is zero");
  // Rescale by the largest weight so squares cannot overflow or underflow.
  for (double w : weights) {
    const double s = w / peak;
    sum += s;
    sum_sq += s * s;
  }
  const double k = static_cast<double>(weights.size());
  EssStats out;
  out.prime = sum * sum / sum_sq;
  out.double_prime = weights.size() == 1 ? 1.0 : (k - 1.0) / (k - out.prime / k) * out.prime;
  return out;
}

EssStats ess_from_log(std::span<const double> log_weights) {
  return ess(normalize_log_weights(log_weights));
}

SimulationBatch trim_heaviest(SimulationBatch batch, std::size_t n) {
  if (n >= batch.size()) {
    throw ValidationError("cannot trim " + std::to_string(n) + " of " +
                          std::to_string(batch.size()) + " simulations");
  }
  if (n == 0) return batch;
  std::vector<std::size_t> order(batch.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return batch.sims[a].log_weight > batch.sims[b].log_weight;
  });
  std::vector<bool> drop(batch.size(), false);
  for (std::size_t i = 0; i < n; ++i) drop[order[i]] = true;

  SimulationBatch out{batch.config};
  out.num_rows = batch.num_rows;
  out.seed = batch.seed;
  out.log_scale_factor = batch.log_scale_factor;
  out.generated = batch.generated;
  out.trimmed = batch.trimmed;
  for (std::size_t i = 0; i < n; ++i) out.trimmed.push_back(batch.source_index[order[i]]);
  out.sims.reserve(batch.size() - n);
  out.source_index.reserve(batch.size() - n);
  for (std::size_t k = 0; k < batch.size(); ++k) {
    if (drop[k]) continue;
    out.sims.push_back(std::move(batch.sims[k]));
    out.source_index.push_back(batch.source_index[k]);
  }
  finalize(out);
  return out;
}

double recompute_log_weight(const WeightedSimulation& sim, const ObservationArray& data,
                            const ModelConfig& config) {
  check_shapes(data, config);
  const std::size_t num_states = config.num_states();
  double total_log = 0.0;
  std::vector<double> terms;
  for (std::size_t m = 0; m < data.num_rows(); ++m) {
    terms.clear();
    for (std::size_t i = 0; i < m; ++i) {
      terms.push_back(log_row_weight(data.nonzero(m), sim.theta(i, num_states)));
    }
    terms.push_back(std::log(config.kappa()) +
                    log_marginal_likelihood(data.counts(m), config.eps(), config.base()));
    total_log += log_sum_exp(terms) - std::log(config.kappa() + static_cast<double>(m));
  }
  return total_log;
}

}  // namespace ndpseq
