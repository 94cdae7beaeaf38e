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
#include <limits>
#include <vector>

#include "abckit/errors.hpp"
#include "abckit/model.hpp"
#include "abckit/random.hpp"

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

abckit::GaussianModelSpec experiment_spec() {
  abckit::GaussianModelSpec spec;
  spec.sigma2 = 9.0;
  spec.n = 10;
  spec.ybar = 4.786624;
  return spec;
}

}  // namespace

TEST_CASE("summarize is the arithmetic mean", "[model]") {
  REQUIRE(abckit::summarize({1.0, 2.0, 3.0}) == 2.0);
  REQUIRE(abckit::summarize({5.0}) == 5.0);
  REQUIRE_THROWS_AS(abckit::summarize({}), abckit::invalid_input);
}

TEST_CASE("spec built from raw observations stores their mean", "[model]") {
  const std::vector<double> y = {4.0, 6.0, 2.0, 8.0};
  const abckit::GaussianModelSpec spec = abckit::spec_from_observations(0.0, kInf, 9.0, y);
  REQUIRE(spec.n == 4);
  REQUIRE(spec.ybar == 5.0);
}

TEST_CASE("flat-prior posterior is exact", "[model]") {
  const abckit::PosteriorSummary post = abckit::analytic_posterior(experiment_spec());
  REQUIRE(post.mean == 4.786624);
  REQUIRE(post.variance == 0.9);
}

TEST_CASE("equal prior and data precision give the midpoint", "[model]") {
  abckit::GaussianModelSpec spec;
  spec.mu0 = 0.0;
  spec.tau2 = 1.0;
  spec.sigma2 = 1.0;
  spec.n = 1;
  spec.ybar = 2.0;
  const abckit::PosteriorSummary post = abckit::analytic_posterior(spec);
  REQUIRE(post.mean == 1.0);
  REQUIRE(post.variance == 0.5);
}

TEST_CASE("flat-prior limit reduces to ybar and sigma2 over n", "[model]") {
  abckit::GaussianModelSpec spec;
  spec.mu0 = 3.0;
  spec.tau2 = kInf;
  spec.sigma2 = 4.0;
  spec.n = 16;
  spec.ybar = 7.0;
  const abckit::PosteriorSummary post = abckit::analytic_posterior(spec);
  REQUIRE(post.mean == 7.0);
  REQUIRE(post.variance == 0.25);
}

TEST_CASE("posterior precision adds prior and data precision", "[model]") {
  // Dyadic fixture: every quantity is exactly representable.
  abckit::GaussianModelSpec dyadic;
  dyadic.mu0 = 1.0;
  dyadic.tau2 = 0.25;
  dyadic.sigma2 = 2.0;
  dyadic.n = 8;
  dyadic.ybar = 3.0;
  const abckit::PosteriorSummary post = abckit::analytic_posterior(dyadic);
  REQUIRE(1.0 / post.variance == 1.0 / 0.25 + 8 / 2.0);

  abckit::GaussianModelSpec spec;
  spec.mu0 = -0.7;
  spec.tau2 = 1.9;
  spec.sigma2 = 9.0;
  spec.n = 10;
  spec.ybar = 4.786624;
  const abckit::PosteriorSummary general = abckit::analytic_posterior(spec);
  const double expected = 1.0 / 1.9 + 10 / 9.0;
  REQUIRE(1.0 / general.variance == Catch::Approx(expected).epsilon(1e-15));
}

TEST_CASE("large finite prior variance approaches the flat limit", "[model]") {
  abckit::GaussianModelSpec spec = experiment_spec();
  double previous_gap = std::numeric_limits<double>::max();
  for (double tau2 : {1e2, 1e4, 1e6, 1e8, 1e10, 1e12}) {
    spec.tau2 = tau2;
    const double gap = std::abs(abckit::analytic_posterior(spec).variance - 0.9);
    REQUIRE(gap < previous_gap);
    previous_gap = gap;
  }
  REQUIRE(previous_gap < 1e-10);
  spec.tau2 = kInf;
  REQUIRE(abckit::analytic_posterior(spec).variance == 0.9);
}

TEST_CASE("simulated summary is calibrated to theta and sigma2 over n", "[model]") {
  const abckit::GaussianModelSpec spec = experiment_spec();
  abckit::RandomStream rng(314159);
  const int replicates = 100000;
  const double theta = 4.786624;
  double total = 0.0, total_sq = 0.0;
  for (int i = 0; i < replicates; ++i) {
    const double s = abckit::simulate_summary(theta, spec, rng);
    total += s;
    total_sq += s * s;
  }
  const double mean = total / replicates;
  const double variance = total_sq / replicates - mean * mean;
  REQUIRE(std::abs(mean - theta) < 4.0 * std::sqrt(0.9 / replicates));
  REQUIRE(std::abs(variance - 0.9) < 0.05 * 0.9);
}

TEST_CASE("simulation is deterministic for a fixed stream", "[model]") {
  const abckit::GaussianModelSpec spec = experiment_spec();
  abckit::RandomStream a = abckit::derive(5, {17});
  abckit::RandomStream b = abckit::derive(5, {17});
  for (int i = 0; i < 50; ++i) {
    REQUIRE(abckit::simulate_summary(1.5, spec, a) == abckit::simulate_summary(1.5, spec, b));
  }
}

TEST_CASE("distance is the absolute difference", "[model]") {
  REQUIRE(abckit::distance(4.786624, 4.786624) == 0.0);
  REQUIRE(abckit::distance(5.0, 4.0) == 1.0);
  REQUIRE(abckit::distance(3.0, 5.5) == 2.5);
  abckit::RandomStream rng(8);
  for (int i = 0; i < 100; ++i) {
    const double a = rng.next_uniform(-50.0, 50.0);
    const double b = rng.next_uniform(-50.0, 50.0);
    REQUIRE(abckit::distance(a, b) == abckit::distance(b, a));
    REQUIRE(abckit::distance(a, a) == 0.0);
  }
}

TEST_CASE("invalid model parameters are rejected", "[model]") {
  abckit::GaussianModelSpec spec = experiment_spec();
  spec.sigma2 = 0.0;
  REQUIRE_THROWS_AS(spec.validate(), abckit::invalid_input);
  spec = experiment_spec();
  spec.n = 0;
  REQUIRE_THROWS_AS(spec.validate(), abckit::invalid_input);
  spec = experiment_spec();
  spec.tau2 = 0.0;
  REQUIRE_THROWS_AS(spec.validate(), abckit::invalid_input);
  spec = experiment_spec();
  spec.tau2 = -2.0;
  REQUIRE_THROWS_AS(spec.validate(), abckit::invalid_input);

  abckit::UniformPrior prior{3.0, 3.0};
  REQUIRE_THROWS_AS(prior.validate(), abckit::invalid_input);
}

TEST_CASE("uniform prior samples stay inside its bounds", "[model]") {
  const abckit::UniformPrior prior{-15.0, 15.0};
  abckit::RandomStream rng(21);
  for (int i = 0; i < 10000; ++i) {
    const double theta = prior.sample(rng);
    REQUIRE(prior.contains(theta));
  }
  REQUIRE(prior.contains(-15.0));
  REQUIRE(prior.contains(15.0));
  REQUIRE_FALSE(prior.contains(15.0000001));
}

