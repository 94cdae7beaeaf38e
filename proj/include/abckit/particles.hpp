// Copyright 2026 The abckit Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "abckit/errors.hpp"
#include "abckit/kernel.hpp"
#include "abckit/model.hpp"
#include "abckit/random.hpp"
#include "abckit/util.hpp"

namespace abckit {

/// N parameter values with nonnegative weights summing to 1, tagged with
/// the sampler iteration that produced them.
struct ParticleSet {
  std::vector<double> values;
  std::vector<double> weights;
  int iteration = 0;

  std::size_t size() const { return values.size(); }

  void validate() const {
    if (values.empty()) throw invalid_input("particle set: must hold at least one particle");
    if (values.size() != weights.size()) {
      throw invalid_input("particle set: values and weights must have equal length");
    }
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
        throw degenerate_weight_error("particle set: weight must be finite and >= 0", i);
      }
    }
    const double total = pairwise_sum(weights);
    if (std::abs(total - 1.0) > 1e-12) {
      throw invalid_input("particle set: weights must sum to 1 within 1e-12");
    }
    if (iteration < 0) throw invalid_input("particle set: iteration must be >= 0");
  }
};

/// Equal-weight particle set over the given values.
inline ParticleSet make_equal_weight_set(std::vector<double> values, int iteration) {
  ParticleSet pset;
  pset.weights.assign(values.size(), values.empty() ? 0.0 : 1.0 / values.size());
  pset.values = std::move(values);
  pset.iteration = iteration;
  pset.validate();
  return pset;
}

/// Acceptance thresholds epsilon_1..epsilon_T, one per iteration.
/// Entries must be positive (+infinity allowed: accept everything).
/// An increasing schedule is legal but usually a mistake; callers that
/// load schedules surface a warning via nonincreasing().
struct ToleranceSchedule {
  std::vector<double> epsilons;

  std::size_t size() const { return epsilons.size(); }

  void validate() const {
    if (epsilons.empty()) throw invalid_input("schedule: must hold at least one tolerance");
    for (double eps : epsilons) {
      if (!(eps > 0.0)) throw invalid_input("schedule: tolerances must be positive");
    }
  }

  bool nonincreasing() const {
    for (std::size_t i = 1; i < epsilons.size(); ++i) {
      if (epsilons[i] > epsilons[i - 1]) return false;
    }
    return true;
  }
};

/// Everything a sequential sampler run needs besides the model.
struct SamplerConfig {
  int n_particles = 1000;
  UniformPrior prior;
  GaussianKernel kernel;
  ToleranceSchedule schedule;
  std::uint64_t seed = 1;
  /// Guard against ever-rarer acceptances: simulation calls allowed
  /// within one iteration before the run aborts.
  std::int64_t max_sim_calls_per_iteration = 10'000'000;
  /// How many iterations to record; clamped to the schedule length.
  int checkpoint_count = 20;

  void validate() const {
    if (n_particles < 1) throw invalid_input("config: n_particles must be >= 1");
    prior.validate();
    kernel.validate();
    schedule.validate();
    if (max_sim_calls_per_iteration < 1) {
      throw invalid_input("config: max_sim_calls_per_iteration must be >= 1");
    }
    if (checkpoint_count < 1) throw invalid_input("config: checkpoint_count must be >= 1");
  }
};

/// Recorded state of one iteration: the accepted (pre-perturbation)
/// particles and the distances that earned each acceptance.
struct Checkpoint {
  int iteration = 0;
  ParticleSet particles;
  std::vector<double> accept_distances;
};

struct IterationStats {
  int iteration = 0;
  double epsilon = 0.0;
  std::int64_t proposed = 0;
  std::int64_t accepted = 0;
};

/// Full record of a sequential sampler run. Checkpoint iterations are
/// strictly increasing and the last checkpoint is the final iteration.
struct RunTrace {
  std::vector<Checkpoint> checkpoints;
  std::vector<IterationStats> iterations;
  std::int64_t sim_call_count = 0;
};

/// 1-based iterations at which to record checkpoints: count evenly
/// spaced indices over 1..total (count clamped to total), first 1 and
/// last total. Rounding is half-away-from-zero so indices stay strictly
/// increasing whenever the spacing is at least one.
inline std::vector<int> checkpoint_iterations(int total, int count) {
  if (total < 1) throw invalid_input("checkpoint_iterations: total must be >= 1");
  if (count < 1) throw invalid_input("checkpoint_iterations: count must be >= 1");
  count = std::min(count, total);
  if (count == 1) return {total};
  std::vector<int> out(static_cast<std::size_t>(count));
  const double step = static_cast<double>(total - 1) / (count - 1);
  for (int k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = static_cast<int>(std::lround(1.0 + step * k));
  }
  out.back() = total;
  return out;
}

namespace detail {

/// Draws indices proportional to a fixed nonnegative weight vector via
/// inverse transform on the cumulative sum. Built once per iteration and
/// shared read-only across workers.
class WeightedPicker {
 public:
  explicit WeightedPicker(const std::vector<double>& weights) {
    if (weights.empty()) throw invalid_input("weighted pick: empty weight vector");
    cumulative_.resize(weights.size());
    double running = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      const double w = weights[i];
      if (!(w >= 0.0) || !std::isfinite(w)) {
        throw degenerate_weight_error("weighted pick: weight must be finite and >= 0", i);
      }
      if (w > 0.0) last_positive_ = i;
      running += w;
      cumulative_[i] = running;
    }
    if (!(running > 0.0)) {
      throw degenerate_weight_error("weighted pick: all weights are zero",
                                    degenerate_weight_error::npos);
    }
  }

  std::size_t pick(RandomStream& rng) const {
    const double u = rng.next_uniform() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    // u can round up to the total; fall back to the last pickable index
    // so zero-weight tail entries stay excluded.
    if (it == cumulative_.end()) return last_positive_;
    return static_cast<std::size_t>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
  std::size_t last_positive_ = 0;
};

}  // namespace detail

/// `count` draws with replacement from pset.values, proportional to
/// pset.weights.
inline std::vector<double> resample(const ParticleSet& pset, std::size_t count,
                                    RandomStream& rng) {
  pset.validate();
  if (count == 0) throw invalid_input("resample: count must be >= 1");
  detail::WeightedPicker picker(pset.weights);
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = pset.values[picker.pick(rng)];
  return out;
}

}  // namespace abckit
