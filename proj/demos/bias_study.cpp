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

// Demonstrates the perturbation bias of the uncorrected sequential
// sampler: as the kernel variance shrinks, the final particle variance
// collapses well below the true posterior variance, while the
// kernel-weighted correction holds it near the oracle.

#include <cstdio>

#include "abckit/abckit.hpp"

int main() {
  abckit::GaussianModelSpec spec;
  spec.sigma2 = 9.0;
  spec.n = 10;
  spec.ybar = 4.786624;
  const abckit::PosteriorSummary oracle = abckit::analytic_posterior(spec);

  abckit::SamplerConfig config;
  config.n_particles = 300;
  config.schedule = abckit::paper_2007_schedule();
  config.seed = 1;

  std::printf("oracle posterior: mean %.4f variance %.4f\n\n", oracle.mean, oracle.variance);
  std::printf("%-14s %12s %14s %14s\n", "sampler", "kernel var", "final mean", "final var");

  for (double xi2 : {10.0, 1.0, 0.1, 0.01}) {
    config.kernel = abckit::GaussianKernel{0.0, xi2};
    const abckit::RunTrace trace = abckit::abc_prc_uncorrected(spec, config);
    const abckit::Moments m = abckit::posterior_stats(trace.checkpoints.back().particles);
    std::printf("%-14s %12g %14.4f %14.4f\n", "uncorrected", xi2, m.mean, m.variance);
  }

  config.kernel = abckit::GaussianKernel{0.0, 0.01};
  const abckit::RunTrace trace = abckit::abc_prc_corrected(spec, config);
  const abckit::Moments m = abckit::posterior_stats(trace.checkpoints.back().particles);
  std::printf("%-14s %12g %14.4f %14.4f\n", "corrected", 0.01, m.mean, m.variance);

  std::printf("\nwith a single seed and 300 particles the numbers wander, but the\n");
  std::printf("uncorrected rows shrink with the kernel while the corrected row stays\n");
  std::printf("near the oracle variance %.2f\n", oracle.variance);
  return 0;
}
