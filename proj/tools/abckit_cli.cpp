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

// Command-line front end: configures one experiment, runs it once per
// seed, and writes per-seed trace/particle/histogram CSVs.
//
// Exit codes: 0 success, 1 runtime failure inside a sampler (budget,
// degenerate weights, I/O), 2 configuration or parse errors.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abckit/abckit.hpp"

namespace {

double parse_eps(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw abckit::invalid_input("--eps: cannot parse '" + text + "'");
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "abckit: likelihood-free samplers for the Gaussian mean benchmark.\n"
      "Runs rejection, mcmc, prc, or prc-corrected once per seed and writes\n"
      "trace, particle, and histogram CSVs for each."};

  std::string algorithm = "prc";
  std::string eps_text;
  std::string schedule = "paper-2007";
  abckit::ExperimentConfig config;
  config.out_dir = abckit::default_out_dir();

  app.add_option("--algorithm", algorithm, "rejection | mcmc | prc | prc-corrected")
      ->capture_default_str();
  app.add_option("--ybar", config.ybar, "observed summary statistic")->capture_default_str();
  app.add_option("--n", config.n, "observations behind the summary")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--sigma2", config.sigma2, "known observation variance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--prior-lo", config.prior_lo, "uniform prior lower bound")
      ->capture_default_str();
  app.add_option("--prior-hi", config.prior_hi, "uniform prior upper bound")
      ->capture_default_str();
  app.add_option("--kernel-var", config.kernel_var, "perturbation kernel variance")
      ->capture_default_str();
  app.add_option("--kernel-mean", config.kernel_mean, "perturbation kernel mean offset")
      ->capture_default_str();
  app.add_option("--schedule", schedule,
                 "tolerance schedule: preset name or file with one tolerance per line")
      ->capture_default_str();
  app.add_option("--eps", eps_text,
                 "acceptance tolerance for rejection and mcmc ('inf' allowed)");
  app.add_option("--particles", config.particles, "particles per iteration / accepted draws")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--chain-len", config.chain_len, "mcmc steps after burn-in")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--burn-in", config.burn_in, "mcmc steps discarded before recording")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--seeds", config.seeds, "comma-separated seed list")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--out-dir", config.out_dir,
                 "output directory (default: $ABCKIT_OUT_DIR or '.')");
  app.add_option("--max-sim-calls", config.max_sim_calls,
                 "simulation budget per run (per iteration for prc)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--threads", config.threads, "worker threads across seeds and samplers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--bins", config.bins, "histogram bin count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--plot", config.plot, "also write an SVG histogram per seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    config.algorithm = abckit::parse_algorithm(algorithm);
    config.schedule_source = schedule;
    if (!eps_text.empty()) config.eps = parse_eps(eps_text);
    config.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    abckit::run_experiment(config);
  } catch (const abckit::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const abckit::invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
