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

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace abckit {

/// Precondition or argument violation.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input; line() is 1-based, 0 when no line applies.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& message, std::size_t line)
      : std::runtime_error(line > 0 ? message + " (line " + std::to_string(line) + ")"
                                    : message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A particle weight collapsed to zero or became non-finite.
/// index() identifies the offending particle; npos when no single
/// particle is to blame (e.g. an all-zero weight vector).
class degenerate_weight_error : public std::runtime_error {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  degenerate_weight_error(const std::string& message, std::size_t index)
      : std::runtime_error(index != npos ? message + " (particle " + std::to_string(index) + ")"
                                         : message),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Simulation-call guard tripped. iteration() is 0 for samplers that
/// have no iteration structure.
class budget_exceeded : public std::runtime_error {
 public:
  budget_exceeded(const std::string& message, int iteration, double epsilon,
                  std::int64_t sim_calls)
      : std::runtime_error(message),
        iteration_(iteration),
        epsilon_(epsilon),
        sim_calls_(sim_calls) {}

  int iteration() const noexcept { return iteration_; }
  double epsilon() const noexcept { return epsilon_; }
  std::int64_t sim_calls() const noexcept { return sim_calls_; }

 private:
  int iteration_;
  double epsilon_;
  std::int64_t sim_calls_;
};

}  // namespace abckit
