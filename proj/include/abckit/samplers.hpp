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

#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "abckit/errors.hpp"
#include "abckit/kernel.hpp"
#include "abckit/model.hpp"
#include "abckit/particles.hpp"
#include "abckit/random.hpp"
#include "abckit/util.hpp"

namespace abckit {

struct RejectionResult {
  ParticleSet particles;
  std::vector<double> accept_distances;
  std::int64_t sim_call_count = 0;
};

/// Plain rejection ABC: draw theta from the prior, simulate a summary,
/// accept when its distance to the observed summary is within eps; repeat
/// until n_accept acceptances. Acceptance slot i draws from rng.child({i}),
/// so the result is identical for every thread count.
inline RejectionResult abc_rejection(const GaussianModelSpec& spec, const UniformPrior& prior,
                                     double eps, int n_accept, std::int64_t guard,
                                     const RandomStream& rng, int threads = 1) {
  spec.validate();
  prior.validate();
  if (!(eps > 0.0)) throw invalid_input("abc_rejection: eps must be positive");
  if (n_accept < 1) throw invalid_input("abc_rejection: n_accept must be >= 1");
  if (guard < 1) throw invalid_input("abc_rejection: guard must be >= 1");

  std::vector<double> values(static_cast<std::size_t>(n_accept));
  std::vector<double> dists(static_cast<std::size_t>(n_accept));
  std::vector<std::int64_t> trials(static_cast<std::size_t>(n_accept));
  std::atomic<std::int64_t> used{0};
  parallel_for(static_cast<std::size_t>(n_accept), threads, [&](std::size_t i) {
    RandomStream slot = rng.child({static_cast<std::uint64_t>(i)});
    std::int64_t count = 0;
    for (;;) {
      if (used.fetch_add(1, std::memory_order_relaxed) >= guard) {
        throw budget_exceeded("abc_rejection: simulation budget exhausted before " +
                                  std::to_string(n_accept) + " acceptances",
                              0, eps, used.load(std::memory_order_relaxed));
      }
      const double theta = prior.sample(slot);
      const double s = simulate_summary(theta, spec, slot);
      ++count;
      const double d = distance(s, spec.ybar);
      if (d <= eps) {
        values[i] = theta;
        dists[i] = d;
        trials[i] = count;
        return;
      }
    }
  });

  RejectionResult result;
  result.particles = make_equal_weight_set(std::move(values), 0);
  result.accept_distances = std::move(dists);
  for (std::int64_t t : trials) result.sim_call_count += t;
  return result;
}

struct McmcResult {
  std::vector<double> chain;
  std::int64_t accepted_moves = 0;
  std::int64_t sim_call_count = 0;
};

/// Likelihood-free Metropolis-Hastings: propose theta' by perturbing the
/// current state, simulate, and move only when the simulated summary lands
/// within eps, the proposal is inside the prior's support, and the MH draw
/// passes. Out-of-support proposals are rejected before simulating (their
/// acceptance probability is zero regardless of the simulation). For the
/// symmetric kernel the MH log-ratio is exactly zero and no accept draw is
/// consumed; a nonzero kernel offset makes the proposal asymmetric and the
/// ratio is applied properly.
inline McmcResult abc_mcmc(const GaussianModelSpec& spec, const UniformPrior& prior,
                           const GaussianKernel& kernel, double eps, std::int64_t chain_len,
                           double init, RandomStream& rng) {
  spec.validate();
  prior.validate();
  kernel.validate();
  if (!(eps > 0.0)) throw invalid_input("abc_mcmc: eps must be positive");
  if (chain_len < 1) throw invalid_input("abc_mcmc: chain_len must be >= 1");
  if (!prior.contains(init)) {
    throw invalid_input("abc_mcmc: init must lie within the prior bounds");
  }

  McmcResult result;
  result.chain.reserve(static_cast<std::size_t>(chain_len));
  double theta = init;
  for (std::int64_t step = 0; step < chain_len; ++step) {
    const double cand = perturb(theta, kernel, rng);
    if (prior.contains(cand)) {
      const double s = simulate_summary(cand, spec, rng);
      ++result.sim_call_count;
      if (distance(s, spec.ybar) <= eps) {
        const double d = cand - theta;
        const double log_ratio = -2.0 * d * kernel.mean_offset / kernel.xi2;
        if (log_ratio >= 0.0 || rng.next_uniform() < std::exp(log_ratio)) {
          theta = cand;
          ++result.accepted_moves;
        }
      }
    }
    result.chain.push_back(theta);
  }
  return result;
}

namespace detail {

/// Shared engine for both sequential samplers. Iteration 0 fills the pool
/// from the prior; each iteration t picks candidates from the pool
/// (uniformly when all pick weights are 1, else proportional to them),
/// simulates until every slot has an acceptance within epsilon_t, records
/// the accepted set at checkpoint iterations, then perturbs the accepted
/// set into the next pool. In corrected mode the pick weights become the
/// reciprocal kernel density of the new pool against the accepted set;
/// in uncorrected mode they stay equal. Slot i of iteration t draws
/// everything (pick, simulations, perturbation noise) from the stream
/// derived as (seed, t, i), which makes the run reproducible bit-for-bit
/// at any thread count.
inline RunTrace run_abc_prc(const GaussianModelSpec& spec, const SamplerConfig& config,
                            bool corrected, int threads) {
  spec.validate();
  config.validate();
  const std::size_t n = static_cast<std::size_t>(config.n_particles);
  const int total_iterations = static_cast<int>(config.schedule.size());
  const std::vector<int> marks = checkpoint_iterations(total_iterations, config.checkpoint_count);

  std::vector<double> pool(n);
  parallel_for(n, threads, [&](std::size_t i) {
    RandomStream slot = derive(config.seed, {0, static_cast<std::uint64_t>(i)});
    pool[i] = config.prior.sample(slot);
  });
  std::vector<double> pick_weights(n, 1.0);

  RunTrace trace;
  trace.checkpoints.reserve(marks.size());
  trace.iterations.reserve(static_cast<std::size_t>(total_iterations));
  std::size_t next_mark = 0;

  std::vector<double> accepted(n);
  std::vector<double> dists(n);
  std::vector<double> perturbed(n);
  std::vector<std::int64_t> trials(n);

  for (int t = 1; t <= total_iterations; ++t) {
    const double eps = config.schedule.epsilons[static_cast<std::size_t>(t - 1)];
    const WeightedPicker picker(pick_weights);
    std::atomic<std::int64_t> used{0};
    const std::int64_t budget = config.max_sim_calls_per_iteration;

    parallel_for(n, threads, [&](std::size_t i) {
      RandomStream slot =
          derive(config.seed, {static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(i)});
      std::int64_t count = 0;
      for (;;) {
        if (used.fetch_add(1, std::memory_order_relaxed) >= budget) {
          char eps_text[32];
          std::snprintf(eps_text, sizeof(eps_text), "%g", eps);
          throw budget_exceeded("sequential sampler: iteration " + std::to_string(t) +
                                    " exhausted its simulation budget at epsilon " + eps_text,
                                t, eps, used.load(std::memory_order_relaxed));
        }
        const double theta = pool[picker.pick(slot)];
        const double s = simulate_summary(theta, spec, slot);
        ++count;
        const double d = distance(s, spec.ybar);
        if (d <= eps) {
          accepted[i] = theta;
          dists[i] = d;
          trials[i] = count;
          break;
        }
      }
      perturbed[i] = perturb(accepted[i], config.kernel, slot);
    });

    std::int64_t proposed = 0;
    for (std::int64_t c : trials) proposed += c;
    trace.sim_call_count += proposed;
    trace.iterations.push_back(
        IterationStats{t, eps, proposed, static_cast<std::int64_t>(n)});

    if (next_mark < marks.size() && marks[next_mark] == t) {
      Checkpoint cp;
      cp.iteration = t;
      cp.particles = make_equal_weight_set(accepted, t);
      cp.accept_distances = dists;
      trace.checkpoints.push_back(std::move(cp));
      ++next_mark;
    }

    if (corrected) {
      pick_weights = corrected_weights(perturbed, accepted, config.kernel, threads);
    }
    pool.swap(perturbed);
  }
  return trace;
}

}  // namespace detail

/// Sequential sampler in which every particle keeps equal weight through
/// all iterations; candidate picks are uniform over the pool.
inline RunTrace abc_prc_uncorrected(const GaussianModelSpec& spec, const SamplerConfig& config,
                                    int threads = 1) {
  return detail::run_abc_prc(spec, config, /*corrected=*/false, threads);
}

/// Sequential sampler with reciprocal-kernel-density weights: candidate
/// picks are proportional to the weights of the previous iteration's
/// perturbed pool, computed by corrected_weights after each perturbation.
inline RunTrace abc_prc_corrected(const GaussianModelSpec& spec, const SamplerConfig& config,
                                  int threads = 1) {
  return detail::run_abc_prc(spec, config, /*corrected=*/true, threads);
}

/// Variance of a Gaussian density raised to the t-th power and
/// renormalized: the base variance divided by t. The limiting target of a
/// degenerate sequential run whose kernel variance is near zero.
inline double power_posterior_reference(double base_variance, int t) {
  if (!(base_variance > 0.0)) {
    throw invalid_input("power_posterior_reference: base_variance must be positive");
  }
  if (t < 1) throw invalid_input("power_posterior_reference: t must be >= 1");
  return base_variance / t;
}

}  // namespace abckit
