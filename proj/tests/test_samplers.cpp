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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "abckit/diagnostics.hpp"
#include "abckit/errors.hpp"
#include "abckit/model.hpp"
#include "abckit/samplers.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

abckit::GaussianModelSpec experiment_spec() {
  abckit::GaussianModelSpec spec;
  spec.sigma2 = 9.0;
  spec.n = 10;
  spec.ybar = 4.786624;
  return spec;
}

const abckit::UniformPrior kPrior{-15.0, 15.0};

double plain_mean(const std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x;
  return total / static_cast<double>(v.size());
}

double plain_variance(const std::vector<double>& v) {
  const double m = plain_mean(v);
  double total = 0.0;
  for (double x : v) total += (x - m) * (x - m);
  return total / static_cast<double>(v.size());
}

}  // namespace

TEST_CASE("rejection with infinite tolerance reproduces the prior", "[samplers]") {
  const abckit::RandomStream rng(100);
  const abckit::RejectionResult result =
      abckit::abc_rejection(experiment_spec(), kPrior, kInf, 2000, 1000000, rng);
  // Every proposal is accepted, so the draws are iid prior samples.
  REQUIRE(result.sim_call_count == 2000);
  for (double v : result.particles.values) REQUIRE(kPrior.contains(v));
  std::vector<double> sorted = result.particles.values;
  std::sort(sorted.begin(), sorted.end());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = (sorted[i] + 15.0) / 30.0;
    sup = std::max(sup, std::abs(f - static_cast<double>(i + 1) / sorted.size()));
  }
  REQUIRE(sup < 0.037);  // alpha = 0.01 critical value at n = 2000
}

TEST_CASE("rejection at a tight tolerance recovers the posterior", "[samplers]") {
  const abckit::RandomStream rng(101);
  const abckit::RejectionResult result =
      abckit::abc_rejection(experiment_spec(), kPrior, 0.05, 1000, 10000000, rng);
  const abckit::Moments m = abckit::posterior_stats(result.particles);
  REQUIRE(std::abs(m.mean - 4.786624) < 0.1);
  REQUIRE(std::abs(m.variance - 0.9) < 0.15);
  for (double d : result.accept_distances) REQUIRE(d <= 0.05);
}

TEST_CASE("a loose tolerance inflates the posterior like a brute-force filter", "[samplers]") {
  const abckit::GaussianModelSpec spec = experiment_spec();
  const double eps = 0.5;

  // Filtration oracle: draw (theta, summary) pairs directly and keep the
  // thetas whose summary lands within eps.
  abckit::RandomStream oracle_rng(555);
  std::vector<double> kept;
  for (int i = 0; i < 1000000; ++i) {
    const double theta = oracle_rng.next_uniform(-15.0, 15.0);
    const double summary = oracle_rng.next_gaussian(theta, 0.9);
    if (std::abs(summary - spec.ybar) <= eps) kept.push_back(theta);
  }
  const double oracle_variance = plain_variance(kept);

  const abckit::RandomStream rng(102);
  const abckit::RejectionResult result =
      abckit::abc_rejection(spec, kPrior, eps, 2000, 10000000, rng);
  const abckit::Moments m = abckit::posterior_stats(result.particles);
  REQUIRE(m.variance > 0.9);
  REQUIRE(oracle_variance > 0.9);
  REQUIRE(std::abs(m.variance - oracle_variance) < 0.13);
}

TEST_CASE("rejection respects its simulation budget", "[samplers]") {
  const abckit::RandomStream rng(103);
  try {
    abckit::abc_rejection(experiment_spec(), kPrior, 1e-9, 10, 100, rng);
    FAIL("expected budget_exceeded");
  } catch (const abckit::budget_exceeded& e) {
    REQUIRE(e.iteration() == 0);
    REQUIRE(e.epsilon() == 1e-9);
    REQUIRE(e.sim_calls() >= 100);
  }
}

TEST_CASE("rejection output does not depend on the thread count", "[samplers]") {
  const abckit::RandomStream rng(104);
  const abckit::RejectionResult serial =
      abckit::abc_rejection(experiment_spec(), kPrior, 0.5, 300, 10000000, rng, 1);
  const abckit::RejectionResult parallel =
      abckit::abc_rejection(experiment_spec(), kPrior, 0.5, 300, 10000000, rng, 4);
  REQUIRE(serial.particles.values == parallel.particles.values);
  REQUIRE(serial.accept_distances == parallel.accept_distances);
  REQUIRE(serial.sim_call_count == parallel.sim_call_count);
}

TEST_CASE("mcmc with infinite tolerance walks the bounded prior", "[samplers]") {
  abckit::RandomStream rng(200);
  const abckit::McmcResult result = abckit::abc_mcmc(
      experiment_spec(), kPrior, abckit::GaussianKernel{0.0, 1.0}, kInf, 200000, 0.0, rng);
  REQUIRE(result.chain.size() == 200000);
  for (double v : result.chain) REQUIRE(kPrior.contains(v));
  // Nearly every in-support proposal is accepted; only proposals past the
  // bounds are refused.
  REQUIRE(static_cast<double>(result.accepted_moves) / 200000 > 0.9);
  const double mean = plain_mean(result.chain);
  const double variance = plain_variance(result.chain);
  // U(-15,15) has mean 0 and variance 75; the walk mixes slowly, so the
  // bands are wide.
  REQUIRE(std::abs(mean) < 1.5);
  REQUIRE(variance > 55.0);
  REQUIRE(variance < 95.0);
}

TEST_CASE("mcmc recovers the posterior at a tight tolerance", "[samplers]") {
  const abckit::GaussianModelSpec spec = experiment_spec();
  abckit::RandomStream rng(201);
  const abckit::McmcResult result = abckit::abc_mcmc(
      spec, kPrior, abckit::GaussianKernel{0.0, 1.0}, 0.05, 22000, spec.ybar, rng);
  const std::vector<double> kept(result.chain.begin() + 2000, result.chain.end());
  REQUIRE(std::abs(plain_mean(kept) - 4.786624) < 0.15);
  REQUIRE(std::abs(plain_variance(kept) - 0.9) < 0.2);
}

TEST_CASE("mcmc rejects an out-of-support start", "[samplers]") {
  abckit::RandomStream rng(202);
  REQUIRE_THROWS_AS(abckit::abc_mcmc(experiment_spec(), kPrior, abckit::GaussianKernel{0.0, 1.0},
                                     0.05, 100, 40.0, rng),
                    abckit::invalid_input);
}

TEST_CASE("a vanishing kernel makes the chain crawl", "[samplers]") {
  const abckit::GaussianModelSpec spec = experiment_spec();
  abckit::RandomStream rng(203);
  const abckit::McmcResult result = abckit::abc_mcmc(
      spec, kPrior, abckit::GaussianKernel{0.0, 1e-8}, 0.5, 2000, spec.ybar, rng);
  const std::vector<double>& c = result.chain;
  double lag0 = 0.0, lag1 = 0.0;
  const double m = plain_mean(c);
  for (std::size_t i = 0; i < c.size(); ++i) lag0 += (c[i] - m) * (c[i] - m);
  for (std::size_t i = 1; i < c.size(); ++i) lag1 += (c[i] - m) * (c[i - 1] - m);
  REQUIRE(lag1 / lag0 > 0.99);
}

TEST_CASE("sequential runs conserve particle count and respect tolerances", "[samplers]") {
  abckit::SamplerConfig config;
  config.n_particles = 50;
  config.kernel = abckit::GaussianKernel{0.0, 0.5};
  config.schedule.epsilons = {5.0, 2.0, 1.0, 0.5, 0.25};
  config.seed = 42;
  const abckit::RunTrace trace = abckit::abc_prc_uncorrected(experiment_spec(), config);

  REQUIRE(trace.checkpoints.size() == 5);
  REQUIRE(trace.iterations.size() == 5);
  int previous = 0;
  for (const abckit::Checkpoint& cp : trace.checkpoints) {
    REQUIRE(cp.particles.size() == 50);
    REQUIRE(cp.accept_distances.size() == 50);
    REQUIRE(cp.iteration > previous);
    previous = cp.iteration;
    const double eps = config.schedule.epsilons[static_cast<std::size_t>(cp.iteration - 1)];
    for (double d : cp.accept_distances) {
      REQUIRE(d >= 0.0);
      REQUIRE(d <= eps);
    }
    REQUIRE_NOTHROW(cp.particles.validate());
  }
  REQUIRE(trace.checkpoints.back().iteration == 5);

  std::int64_t proposed_total = 0;
  for (const abckit::IterationStats& st : trace.iterations) {
    REQUIRE(st.accepted == 50);
    REQUIRE(st.proposed >= st.accepted);
    proposed_total += st.proposed;
  }
  REQUIRE(trace.sim_call_count == proposed_total);
}

TEST_CASE("an infinite tolerance accepts every candidate first try", "[samplers]") {
  abckit::SamplerConfig config;
  config.n_particles = 30;
  config.kernel = abckit::GaussianKernel{0.0, 1.0};
  config.schedule.epsilons.assign(37, kInf);
  config.seed = 9;
  const abckit::RunTrace trace = abckit::abc_prc_uncorrected(experiment_spec(), config);
  REQUIRE(trace.iterations.size() == 37);
  REQUIRE(trace.checkpoints.size() == 20);
  REQUIRE(trace.checkpoints.back().iteration == 37);
  REQUIRE(trace.sim_call_count == 37 * 30);
}

TEST_CASE("sequential samplers are seed-deterministic and thread-invariant", "[samplers]") {
  abckit::SamplerConfig config;
  config.n_particles = 100;
  config.kernel = abckit::GaussianKernel{0.0, 0.5};
  config.schedule.epsilons = {5.0, 2.0, 1.0, 0.5};
  config.seed = 77;

  for (bool corrected : {false, true}) {
    const auto run = [&](int threads) {
      return corrected ? abckit::abc_prc_corrected(experiment_spec(), config, threads)
                       : abckit::abc_prc_uncorrected(experiment_spec(), config, threads);
    };
    const abckit::RunTrace a = run(1);
    const abckit::RunTrace b = run(1);
    const abckit::RunTrace c = run(3);
    REQUIRE(a.sim_call_count == b.sim_call_count);
    REQUIRE(a.sim_call_count == c.sim_call_count);
    REQUIRE(a.checkpoints.size() == c.checkpoints.size());
    for (std::size_t k = 0; k < a.checkpoints.size(); ++k) {
      REQUIRE(a.checkpoints[k].particles.values == b.checkpoints[k].particles.values);
      REQUIRE(a.checkpoints[k].particles.values == c.checkpoints[k].particles.values);
      REQUIRE(a.checkpoints[k].accept_distances == c.checkpoints[k].accept_distances);
    }
    for (std::size_t k = 0; k < a.iterations.size(); ++k) {
      REQUIRE(a.iterations[k].proposed == c.iterations[k].proposed);
    }
  }
}

TEST_CASE("corrected and uncorrected agree before any perturbation matters", "[samplers]") {
  // One iteration at infinite tolerance: the pick weights are still all
  // ones, so the corrected sampler must select the same candidates.
  abckit::SamplerConfig config;
  config.n_particles = 64;
  config.kernel = abckit::GaussianKernel{0.0, 0.3};
  config.schedule.epsilons = {kInf};
  config.seed = 123;
  const abckit::RunTrace uncorrected = abckit::abc_prc_uncorrected(experiment_spec(), config);
  const abckit::RunTrace corrected = abckit::abc_prc_corrected(experiment_spec(), config);
  REQUIRE(uncorrected.checkpoints.size() == 1);
  REQUIRE(corrected.checkpoints.size() == 1);
  REQUIRE(uncorrected.checkpoints[0].particles.values == corrected.checkpoints[0].particles.values);
  for (double v : corrected.checkpoints[0].particles.values) REQUIRE(kPrior.contains(v));
}

TEST_CASE("sequential sampler enforces its per-iteration budget", "[samplers]") {
  abckit::SamplerConfig config;
  config.n_particles = 10;
  config.kernel = abckit::GaussianKernel{0.0, 0.5};
  config.schedule.epsilons = {1e-9};
  config.seed = 5;
  config.max_sim_calls_per_iteration = 50;
  try {
    abckit::abc_prc_uncorrected(experiment_spec(), config);
    FAIL("expected budget_exceeded");
  } catch (const abckit::budget_exceeded& e) {
    REQUIRE(e.iteration() == 1);
    REQUIRE(e.epsilon() == 1e-9);
    REQUIRE(e.sim_calls() >= 50);
  }
}

TEST_CASE("power posterior reference divides the variance by the power", "[samplers]") {
  REQUIRE(abckit::power_posterior_reference(0.9, 1) == 0.9);
  REQUIRE(abckit::power_posterior_reference(0.9, 2) == 0.45);
  REQUIRE(abckit::power_posterior_reference(0.9, 10) == Catch::Approx(0.09).epsilon(1e-15));
  REQUIRE_THROWS_AS(abckit::power_posterior_reference(0.9, 0), abckit::invalid_input);
  REQUIRE_THROWS_AS(abckit::power_posterior_reference(0.0, 1), abckit::invalid_input);
}
