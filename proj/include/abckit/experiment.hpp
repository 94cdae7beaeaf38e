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
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "abckit/csv.hpp"
#include "abckit/diagnostics.hpp"
#include "abckit/errors.hpp"
#include "abckit/kernel.hpp"
#include "abckit/model.hpp"
#include "abckit/particles.hpp"
#include "abckit/samplers.hpp"
#include "abckit/schedule.hpp"
#include "abckit/svg_plot.hpp"
#include "abckit/util.hpp"

namespace abckit {

enum class Algorithm { rejection, mcmc, prc, prc_corrected };

inline const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::rejection:
      return "rejection";
    case Algorithm::mcmc:
      return "mcmc";
    case Algorithm::prc:
      return "prc";
    case Algorithm::prc_corrected:
      return "prc-corrected";
  }
  throw invalid_input("algorithm_name: unknown algorithm");
}

inline Algorithm parse_algorithm(const std::string& name) {
  if (name == "rejection") return Algorithm::rejection;
  if (name == "mcmc") return Algorithm::mcmc;
  if (name == "prc") return Algorithm::prc;
  if (name == "prc-corrected") return Algorithm::prc_corrected;
  throw invalid_input("unknown algorithm '" + name +
                      "' (expected rejection, mcmc, prc, or prc-corrected)");
}

/// Default output directory: the ABCKIT_OUT_DIR environment variable when
/// set and nonempty, else the working directory.
inline std::string default_out_dir() {
  const char* env = std::getenv("ABCKIT_OUT_DIR");
  if (env != nullptr && env[0] != '\0') return std::string(env);
  return ".";
}

/// One full experiment: an algorithm, the model, and a seed list. Each
/// seed runs independently and writes its own trace, final-particle, and
/// histogram CSV; the reported number is the median across seeds.
struct ExperimentConfig {
  Algorithm algorithm = Algorithm::prc;
  double ybar = 4.786624;
  int n = 10;
  double sigma2 = 9.0;
  double prior_lo = -15.0;
  double prior_hi = 15.0;
  double kernel_var = 1.0;
  double kernel_mean = 0.0;
  std::string schedule_source = "paper-2007";
  /// Acceptance tolerance for the single-threshold algorithms
  /// (rejection, mcmc). Must be set for those; ignored by prc runs.
  double eps = std::numeric_limits<double>::quiet_NaN();
  int particles = 1000;
  std::int64_t chain_len = 200000;
  std::int64_t burn_in = 0;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::string out_dir = ".";
  std::int64_t max_sim_calls = 10'000'000;
  int threads = 1;
  int bins = 50;
  bool plot = false;

  void validate() const {
    if (seeds.empty()) throw invalid_input("experiment: seed list must be nonempty");
    if (particles < 1) throw invalid_input("experiment: particles must be >= 1");
    if (threads < 1) throw invalid_input("experiment: threads must be >= 1");
    if (bins < 1) throw invalid_input("experiment: bins must be >= 1");
    if (max_sim_calls < 1) throw invalid_input("experiment: max-sim-calls must be >= 1");
    if (algorithm == Algorithm::rejection || algorithm == Algorithm::mcmc) {
      if (!(eps > 0.0)) {
        throw invalid_input("experiment: --eps must be positive for rejection and mcmc");
      }
    }
    if (algorithm == Algorithm::mcmc) {
      if (chain_len < 1) throw invalid_input("experiment: chain-len must be >= 1");
      if (burn_in < 0) throw invalid_input("experiment: burn-in must be >= 0");
    }
  }
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  double final_mean = 0.0;
  double final_variance = 0.0;
  std::int64_t sim_calls = 0;
};

struct ExperimentResult {
  std::vector<SeedOutcome> outcomes;
  double median_final_variance = 0.0;
  PosteriorSummary oracle{0.0, 0.0};
  std::string summary_line;
};

namespace detail {

struct SeedArtifacts {
  std::vector<TraceRow> trace_rows;
  std::vector<double> final_values;
  std::vector<double> final_weights;
  std::int64_t sim_calls = 0;
};

inline SeedArtifacts run_one_seed(const ExperimentConfig& config, const GaussianModelSpec& spec,
                                  const UniformPrior& prior, const GaussianKernel& kernel,
                                  const ToleranceSchedule& schedule, std::uint64_t seed,
                                  int sampler_threads) {
  SeedArtifacts art;
  switch (config.algorithm) {
    case Algorithm::rejection: {
      RandomStream rng(seed);
      RejectionResult result = abc_rejection(spec, prior, config.eps, config.particles,
                                             config.max_sim_calls, rng, sampler_threads);
      const Moments m = posterior_stats(result.particles);
      TraceRow row;
      row.iteration = 0;
      row.epsilon = config.eps;
      row.mean = m.mean;
      row.variance = m.variance;
      row.sim_calls = result.sim_call_count;
      row.acceptance_rate =
          static_cast<double>(config.particles) / static_cast<double>(result.sim_call_count);
      art.trace_rows.push_back(row);
      art.final_values = std::move(result.particles.values);
      art.final_weights = std::move(result.particles.weights);
      art.sim_calls = result.sim_call_count;
      break;
    }
    case Algorithm::mcmc: {
      RandomStream rng(seed);
      // Start at the observed summary (clamped into the support): the
      // chain then begins where acceptances are common instead of
      // waiting out a potentially astronomical first acceptance.
      const double init = std::clamp(spec.ybar, prior.lo, prior.hi);
      const std::int64_t total = config.burn_in + config.chain_len;
      McmcResult result = abc_mcmc(spec, prior, kernel, config.eps, total, init, rng);
      std::vector<double> kept(result.chain.begin() + static_cast<std::ptrdiff_t>(config.burn_in),
                               result.chain.end());
      const std::size_t n = kept.size();
      if (n < 2) throw invalid_input("experiment: mcmc needs chain-len >= 2");
      const double mean = pairwise_sum(n, [&](std::size_t i) { return kept[i]; }) / n;
      const double variance = pairwise_sum(n, [&](std::size_t i) {
                                const double d = kept[i] - mean;
                                return d * d;
                              }) /
                              n;
      TraceRow row;
      row.iteration = 0;
      row.epsilon = config.eps;
      row.mean = mean;
      row.variance = variance;
      row.sim_calls = result.sim_call_count;
      row.acceptance_rate =
          static_cast<double>(result.accepted_moves) / static_cast<double>(total);
      art.trace_rows.push_back(row);
      art.final_weights.assign(n, 1.0 / static_cast<double>(n));
      art.final_values = std::move(kept);
      art.sim_calls = result.sim_call_count;
      break;
    }
    case Algorithm::prc:
    case Algorithm::prc_corrected: {
      SamplerConfig sampler;
      sampler.n_particles = config.particles;
      sampler.prior = prior;
      sampler.kernel = kernel;
      sampler.schedule = schedule;
      sampler.seed = seed;
      sampler.max_sim_calls_per_iteration = config.max_sim_calls;
      RunTrace trace = config.algorithm == Algorithm::prc
                           ? abc_prc_uncorrected(spec, sampler, sampler_threads)
                           : abc_prc_corrected(spec, sampler, sampler_threads);
      art.trace_rows = build_trace_rows(trace);
      ParticleSet& last = trace.checkpoints.back().particles;
      art.final_values = std::move(last.values);
      art.final_weights = std::move(last.weights);
      art.sim_calls = trace.sim_call_count;
      break;
    }
  }
  return art;
}

}  // namespace detail

/// Runs the configured algorithm once per seed (seeds fan out over the
/// thread budget), writes per-seed CSVs (and optional SVG plots) into
/// out_dir, prints a one-line summary to standard output, and returns the
/// per-seed outcomes with the cross-seed median. Identical configs yield
/// byte-identical files at any thread count.
inline ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  GaussianModelSpec spec;
  spec.sigma2 = config.sigma2;
  spec.n = config.n;
  spec.ybar = config.ybar;
  spec.validate();
  UniformPrior prior{config.prior_lo, config.prior_hi};
  prior.validate();
  GaussianKernel kernel{config.kernel_mean, config.kernel_var};
  kernel.validate();
  const PosteriorSummary oracle = analytic_posterior(spec);

  ToleranceSchedule schedule;
  const bool sequential =
      config.algorithm == Algorithm::prc || config.algorithm == Algorithm::prc_corrected;
  if (sequential) {
    schedule = load_schedule(config.schedule_source);
    schedule.validate();
    if (!schedule.nonincreasing()) {
      std::cerr << "warning: tolerance schedule is not nonincreasing\n";
    }
  }

  std::filesystem::create_directories(config.out_dir);

  const std::size_t n_seeds = config.seeds.size();
  const int seed_jobs = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(config.threads), n_seeds));
  const int sampler_threads = std::max(1, config.threads / seed_jobs);

  std::vector<detail::SeedArtifacts> artifacts(n_seeds);
  parallel_for(n_seeds, seed_jobs, [&](std::size_t k) {
    artifacts[k] = detail::run_one_seed(config, spec, prior, kernel, schedule, config.seeds[k],
                                        sampler_threads);
  });

  ExperimentResult result;
  result.oracle = oracle;
  std::vector<double> final_variances;
  const std::string prefix =
      (std::filesystem::path(config.out_dir) /
       (std::string(algorithm_name(config.algorithm)) + "_seed"))
          .string();
  for (std::size_t k = 0; k < n_seeds; ++k) {
    const detail::SeedArtifacts& art = artifacts[k];
    const std::string base = prefix + std::to_string(config.seeds[k]);
    write_text_file(base + "_trace.csv", render_trace_csv(art.trace_rows));
    write_text_file(base + "_particles.csv",
                    render_particles_csv(art.final_values, art.final_weights));
    const std::vector<HistogramBin> bins = build_histogram(art.final_values, config.bins, oracle);
    write_text_file(base + "_histogram.csv", render_histogram_csv(bins));
    if (config.plot) {
      const std::string title = std::string(algorithm_name(config.algorithm)) + " seed " +
                                std::to_string(config.seeds[k]) + " vs oracle";
      write_text_file(base + "_plot.svg", render_histogram_svg(bins, title));
    }
    SeedOutcome outcome;
    outcome.seed = config.seeds[k];
    outcome.final_mean = art.trace_rows.back().mean;
    outcome.final_variance = art.trace_rows.back().variance;
    outcome.sim_calls = art.sim_calls;
    final_variances.push_back(outcome.final_variance);
    result.outcomes.push_back(outcome);
  }
  result.median_final_variance = median(final_variances);

  std::string kernel_part = sequential || config.algorithm == Algorithm::mcmc
                                ? format_short(config.kernel_var)
                                : std::string("n/a");
  result.summary_line = "algorithm=" + std::string(algorithm_name(config.algorithm)) +
                        " kernel_var=" + kernel_part +
                        " median_final_variance=" + format_short(result.median_final_variance) +
                        " oracle_variance=" + format_short(oracle.variance);
  std::cout << result.summary_line << "\n";
  return result;
}

}  // namespace abckit
