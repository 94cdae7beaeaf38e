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
#include <vector>

#include "abckit/errors.hpp"
#include "abckit/random.hpp"
#include "abckit/util.hpp"

namespace abckit {

/// Gaussian perturbation kernel with variance xi2 and optional location
/// offset. Perturbation adds Normal(mean_offset, xi2) noise.
struct GaussianKernel {
  double mean_offset = 0.0;
  double xi2 = 1.0;

  void validate() const {
    if (!(xi2 > 0.0) || !std::isfinite(xi2)) {
      throw invalid_input("kernel: xi2 must be positive and finite");
    }
    if (!std::isfinite(mean_offset)) {
      throw invalid_input("kernel: mean_offset must be finite");
    }
  }
};

inline double perturb(double theta, const GaussianKernel& kernel, RandomStream& rng) {
  return theta + rng.next_gaussian(kernel.mean_offset, kernel.xi2);
}

/// Normal(center, xi2) density at x.
inline double kernel_density(double x, double center, double xi2) {
  if (!(xi2 > 0.0)) throw invalid_input("kernel_density: xi2 must be positive");
  constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
  const double d = x - center;
  return kInvSqrt2Pi / std::sqrt(xi2) * std::exp(-0.5 * d * d / xi2);
}

/// Reciprocal kernel density estimate weights:
/// W_i = 1 / sum_j density(perturbed_i | sources_j, xi2), unnormalized.
/// Evaluates against the kernel's variance only; the location offset
/// plays no role in the weight. The per-particle density sum runs in a
/// fixed index order (pairwise), so the result is identical for any
/// thread count, and duplicating the source vector halves every weight
/// bitwise-exactly.
inline std::vector<double> corrected_weights(const std::vector<double>& perturbed,
                                             const std::vector<double>& sources,
                                             const GaussianKernel& kernel, int threads = 1) {
  kernel.validate();
  if (sources.empty()) throw invalid_input("corrected_weights: sources must be nonempty");
  const double xi2 = kernel.xi2;
  const double inv_two_xi2 = 0.5 / xi2;
  constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
  const double norm = kInvSqrt2Pi / std::sqrt(xi2);

  std::vector<double> weights(perturbed.size());
  // Smallest failing index, so the reported particle does not depend on
  // which worker notices first.
  std::atomic<std::size_t> first_bad{degenerate_weight_error::npos};
  parallel_for(perturbed.size(), threads, [&](std::size_t i) {
    const double x = perturbed[i];
    const double total = pairwise_sum(sources.size(), [&](std::size_t j) {
      const double d = x - sources[j];
      return std::exp(-d * d * inv_two_xi2);
    });
    const double density_sum = norm * total;
    if (!(density_sum > 0.0) || !std::isfinite(density_sum)) {
      std::size_t seen = first_bad.load(std::memory_order_relaxed);
      while (i < seen && !first_bad.compare_exchange_weak(seen, i, std::memory_order_relaxed)) {
      }
      weights[i] = 0.0;
      return;
    }
    weights[i] = 1.0 / density_sum;
  });
  const std::size_t bad = first_bad.load(std::memory_order_relaxed);
  if (bad != degenerate_weight_error::npos) {
    throw degenerate_weight_error(
        "corrected_weights: kernel density sum underflowed to zero", bad);
  }
  return weights;
}

}  // namespace abckit
