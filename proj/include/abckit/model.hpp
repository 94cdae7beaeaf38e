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

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "abckit/errors.hpp"
#include "abckit/random.hpp"

namespace abckit {

/// Sample mean, the sufficient summary statistic for the Gaussian
/// location model.
inline double summarize(const std::vector<double>& y) {
  if (y.empty()) throw invalid_input("summarize: empty observation vector");
  double total = 0.0;
  for (double v : y) total += v;
  return total / static_cast<double>(y.size());
}

/// Known-variance Gaussian inference problem: n iid observations from
/// N(theta, sigma2), reduced to their sample mean ybar. The conjugate
/// prior on theta is N(mu0, tau2); tau2 = +infinity encodes the flat
/// improper prior exactly (not approximated by a large finite value).
struct GaussianModelSpec {
  double mu0 = 0.0;
  double tau2 = std::numeric_limits<double>::infinity();
  double sigma2 = 1.0;
  int n = 1;
  double ybar = 0.0;

  void validate() const {
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
      throw invalid_input("model: sigma2 must be positive and finite");
    }
    if (n < 1) throw invalid_input("model: n must be >= 1");
    if (!(tau2 > 0.0)) throw invalid_input("model: tau2 must be positive or +infinity");
    if (!std::isfinite(ybar)) throw invalid_input("model: ybar must be finite");
    if (!std::isfinite(mu0)) throw invalid_input("model: mu0 must be finite");
  }
};

/// Builds a spec from a raw observation vector; ybar becomes the
/// arithmetic mean and n the vector length.
inline GaussianModelSpec spec_from_observations(double mu0, double tau2, double sigma2,
                                                const std::vector<double>& y) {
  GaussianModelSpec spec;
  spec.mu0 = mu0;
  spec.tau2 = tau2;
  spec.sigma2 = sigma2;
  spec.n = static_cast<int>(y.size());
  spec.ybar = summarize(y);
  spec.validate();
  return spec;
}

/// Exact posterior moments; the ground-truth oracle for every sampler.
struct PosteriorSummary {
  double mean;
  double variance;
};

/// mean = (mu0/tau2 + n*ybar/sigma2) / (1/tau2 + n/sigma2),
/// variance = 1 / (1/tau2 + n/sigma2). The flat-prior limit
/// tau2 = +infinity short-circuits to (ybar, sigma2/n) so no rounding
/// passes through the precision form.
inline PosteriorSummary analytic_posterior(const GaussianModelSpec& spec) {
  spec.validate();
  if (std::isinf(spec.tau2)) {
    return PosteriorSummary{spec.ybar, spec.sigma2 / spec.n};
  }
  const double prior_precision = 1.0 / spec.tau2;
  const double data_precision = spec.n / spec.sigma2;
  const double variance = 1.0 / (prior_precision + data_precision);
  const double mean = (spec.mu0 * prior_precision + spec.ybar * data_precision) * variance;
  return PosteriorSummary{mean, variance};
}

/// Bounded uniform initial sampling distribution; also the flat-prior
/// approximation the samplers target.
struct UniformPrior {
  double lo = -15.0;
  double hi = 15.0;

  void validate() const {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw invalid_input("prior: bounds must be finite");
    }
    if (!(lo < hi)) throw invalid_input("prior: lo must be < hi");
  }

  bool contains(double theta) const { return theta >= lo && theta <= hi; }

  double sample(RandomStream& rng) const { return rng.next_uniform(lo, hi); }
};

/// Simulates a dataset of n draws from N(theta, sigma2) and returns its
/// sample mean; distributed as N(theta, sigma2/n). One call to this
/// function counts as one simulation.
inline double simulate_summary(double theta, const GaussianModelSpec& spec, RandomStream& rng) {
  double total = 0.0;
  for (int i = 0; i < spec.n; ++i) total += rng.next_gaussian(theta, spec.sigma2);
  return total / spec.n;
}

inline double distance(double s_sim, double s_obs) { return std::abs(s_sim - s_obs); }

}  // namespace abckit
