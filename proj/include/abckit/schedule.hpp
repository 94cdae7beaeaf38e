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

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "abckit/errors.hpp"
#include "abckit/particles.hpp"

namespace abckit {

/// The built-in "paper-2007" preset: ten iterations at each tolerance in
/// 10, 5, 2, 1, 0.5, 0.2, 0.1, 0.05, 0.02, 0.01, one hundred entries in all.
inline ToleranceSchedule paper_2007_schedule() {
  static constexpr double kLevels[] = {10.0, 5.0, 2.0, 1.0, 0.5, 0.2, 0.1, 0.05, 0.02, 0.01};
  ToleranceSchedule schedule;
  schedule.epsilons.reserve(100);
  for (double level : kLevels) {
    for (int rep = 0; rep < 10; ++rep) schedule.epsilons.push_back(level);
  }
  return schedule;
}

/// Canonical text form of a schedule: one tolerance per line. The
/// committed reference copy of the preset is exactly this rendering.
inline std::string render_schedule(const ToleranceSchedule& schedule) {
  std::ostringstream out;
  for (double eps : schedule.epsilons) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", eps);
    out << buf << '\n';
  }
  return out.str();
}

/// Parses the one-tolerance-per-line format. '#' starts a comment (whole
/// line or trailing); blank lines are skipped. Any malformed or
/// nonpositive entry reports its 1-based line number.
inline ToleranceSchedule parse_schedule(const std::string& content) {
  ToleranceSchedule schedule;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t begin = 0;
    std::size_t end = line.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(line[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(line[end - 1]))) --end;
    if (begin == end) continue;
    const std::string token = line.substr(begin, end - begin);
    errno = 0;
    char* parse_end = nullptr;
    const double eps = std::strtod(token.c_str(), &parse_end);
    if (parse_end == token.c_str() || *parse_end != '\0' || errno == ERANGE) {
      throw parse_error("schedule: malformed tolerance '" + token + "'", line_no);
    }
    if (!(eps > 0.0)) {
      throw parse_error("schedule: tolerance must be positive, got '" + token + "'", line_no);
    }
    schedule.epsilons.push_back(eps);
  }
  if (schedule.epsilons.empty()) {
    throw parse_error("schedule: no tolerances found", line_no == 0 ? 1 : line_no);
  }
  return schedule;
}

/// Resolves a schedule source: the name of a built-in preset, else a file
/// path in the one-tolerance-per-line format.
inline ToleranceSchedule load_schedule(const std::string& source) {
  if (source == "paper-2007") return paper_2007_schedule();
  std::ifstream in(source, std::ios::binary);
  if (!in) {
    throw parse_error("schedule: unknown preset and unreadable file '" + source + "'", 0);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_schedule(buf.str());
}

}  // namespace abckit
