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

// Minimal tour of the library: one rejection run, one mcmc run, and the
// exact posterior they both target.

#include <cstdio>

#include "abckit/abckit.hpp"

int main() {
  abckit::GaussianModelSpec spec;
  spec.sigma2 = 9.0;
  spec.n = 10;
  spec.ybar = 4.786624;
  const abckit::UniformPrior prior{-15.0, 15.0};
  const abckit::PosteriorSummary oracle = abckit::analytic_posterior(spec);
  std::printf("exact posterior: N(%.6f, %.3f)\n", oracle.mean, oracle.variance);

  const abckit::RandomStream rng(2026);
  const abckit::RejectionResult rejection =
      abckit::abc_rejection(spec, prior, 0.1, 1000, 10'000'000, rng);
  const abckit::Moments rm = abckit::posterior_stats(rejection.particles);
  std::printf("rejection (eps 0.1): mean %.4f variance %.4f from %lld simulations\n", rm.mean,
              rm.variance, static_cast<long long>(rejection.sim_call_count));

  abckit::RandomStream chain_rng(2027);
  const abckit::McmcResult chain = abckit::abc_mcmc(
      spec, prior, abckit::GaussianKernel{0.0, 1.0}, 0.1, 50'000, spec.ybar, chain_rng);
  double mean = 0.0;
  for (double v : chain.chain) mean += v;
  mean /= static_cast<double>(chain.chain.size());
  double variance = 0.0;
  for (double v : chain.chain) variance += (v - mean) * (v - mean);
  variance /= static_cast<double>(chain.chain.size());
  std::printf("mcmc (eps 0.1): mean %.4f variance %.4f acceptance %.3f\n", mean, variance,
              static_cast<double>(chain.accepted_moves) /
                  static_cast<double>(chain.chain.size()));
  return 0;
}
