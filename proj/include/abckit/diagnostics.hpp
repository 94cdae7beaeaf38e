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
#include <vector>

#include "abckit/errors.hpp"
#include "abckit/model.hpp"
#include "abckit/particles.hpp"
#include "abckit/util.hpp"

namespace abckit {

/// Estimated moments of a particle population.
struct Moments {
  double mean;
  double variance;
};

/// Weighted mean and weighted population variance (1/N normalization in
/// the equal-weight case). Requires at least two particles so the
/// variance is meaningful.
inline Moments posterior_stats(const ParticleSet& pset) {
  pset.validate();
  const std::size_t n = pset.size();
  if (n < 2) throw invalid_input("posterior_stats: variance needs at least 2 particles");
  const double mean =
      pairwise_sum(n, [&](std::size_t i) { return pset.weights[i] * pset.values[i]; });
  const double variance = pairwise_sum(n, [&](std::size_t i) {
    const double d = pset.values[i] - mean;
    return pset.weights[i] * d * d;
  });
  return Moments{mean, variance};
}

struct TracePoint {
  int iteration;
  double mean;
  double variance;
};

/// Moment estimates across a run's checkpoints, with the analytic
/// variance attached as the reference line.
struct ConvergenceTrace {
  std::vector<TracePoint> points;
  double reference_variance = 0.0;
};

inline ConvergenceTrace build_trace(const RunTrace& trace, const PosteriorSummary& oracle) {
  if (trace.checkpoints.empty()) throw invalid_input("build_trace: no checkpoints");
  ConvergenceTrace out;
  out.points.reserve(trace.checkpoints.size());
  for (const Checkpoint& cp : trace.checkpoints) {
    const Moments m = posterior_stats(cp.particles);
    out.points.push_back(TracePoint{cp.iteration, m.mean, m.variance});
  }
  out.reference_variance = oracle.variance;
  return out;
}

inline double normal_cdf(double x, double mean, double variance) {
  if (!(variance > 0.0)) throw invalid_input("normal_cdf: variance must be positive");
  return 0.5 * std::erfc((mean - x) / std::sqrt(2.0 * variance));
}

/// Kolmogorov-Smirnov statistic: sup-distance between the empirical CDF
/// of the samples and the Normal(oracle.mean, oracle.variance) CDF.
inline double ks_statistic(const std::vector<double>& samples, const PosteriorSummary& oracle) {
  if (samples.empty()) throw invalid_input("ks_statistic: empty sample vector");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf(sorted[i], oracle.mean, oracle.variance);
    sup = std::max(sup, f - static_cast<double>(i) / n);
    sup = std::max(sup, static_cast<double>(i + 1) / n - f);
  }
  return sup;
}

/// Asymptotic two-sided critical value for the one-sample KS test:
/// sqrt(-ln(alpha/2) / 2) / sqrt(n).
inline double kolmogorov_critical(double alpha, std::size_t n) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw invalid_input("kolmogorov_critical: alpha must be in (0, 1)");
  }
  if (n == 0) throw invalid_input("kolmogorov_critical: n must be >= 1");
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

}  // namespace abckit
