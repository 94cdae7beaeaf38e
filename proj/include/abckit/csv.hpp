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
#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "abckit/diagnostics.hpp"
#include "abckit/errors.hpp"
#include "abckit/model.hpp"
#include "abckit/particles.hpp"

namespace abckit {

/// Shortest decimal form that round-trips a double bit-exactly.
inline std::string format_g17(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf);
}

/// Compact decimal form for human-facing values (schedules, summaries);
/// not guaranteed to round-trip.
inline std::string format_short(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", value);
  return std::string(buf);
}

/// One emitted trace row. For sequential samplers there is one row per
/// checkpoint; rejection and MCMC emit a single summary row.
struct TraceRow {
  std::int64_t iteration = 0;
  double epsilon = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  std::int64_t sim_calls = 0;
  double acceptance_rate = 0.0;
};

inline constexpr const char* kTraceHeader = "iteration,epsilon,mean,variance,sim_calls,acceptance_rate";

/// Flattens a sequential run into trace rows: per checkpoint, the moment
/// estimates of the recorded particles, the epsilon and acceptance rate of
/// that iteration, and the cumulative simulation calls up to it.
inline std::vector<TraceRow> build_trace_rows(const RunTrace& trace) {
  std::vector<std::int64_t> cumulative(trace.iterations.size() + 1, 0);
  for (std::size_t k = 0; k < trace.iterations.size(); ++k) {
    cumulative[k + 1] = cumulative[k] + trace.iterations[k].proposed;
  }
  std::vector<TraceRow> rows;
  rows.reserve(trace.checkpoints.size());
  for (const Checkpoint& cp : trace.checkpoints) {
    const Moments m = posterior_stats(cp.particles);
    TraceRow row;
    row.iteration = cp.iteration;
    const IterationStats& stats = trace.iterations.at(static_cast<std::size_t>(cp.iteration - 1));
    row.epsilon = stats.epsilon;
    row.mean = m.mean;
    row.variance = m.variance;
    row.sim_calls = cumulative.at(static_cast<std::size_t>(cp.iteration));
    row.acceptance_rate =
        stats.proposed > 0 ? static_cast<double>(stats.accepted) / static_cast<double>(stats.proposed)
                           : 0.0;
    rows.push_back(row);
  }
  return rows;
}

inline std::string render_trace_csv(const std::vector<TraceRow>& rows) {
  std::ostringstream out;
  out << kTraceHeader << '\n';
  for (const TraceRow& row : rows) {
    out << row.iteration << ',' << format_g17(row.epsilon) << ',' << format_g17(row.mean) << ','
        << format_g17(row.variance) << ',' << row.sim_calls << ','
        << format_g17(row.acceptance_rate) << '\n';
  }
  return out.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace detail {

inline double parse_double_field(const std::string& field, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0' || errno == ERANGE) {
    throw parse_error("trace csv: malformed numeric field '" + field + "'", line);
  }
  return v;
}

inline std::int64_t parse_int_field(const std::string& field, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(field.c_str(), &end, 10);
  if (end == field.c_str() || *end != '\0' || errno == ERANGE) {
    throw parse_error("trace csv: malformed integer field '" + field + "'", line);
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

/// Parses a trace CSV produced by render_trace_csv; values round-trip
/// bit-exactly through the 17-significant-digit serialization.
inline std::vector<TraceRow> parse_trace_csv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw parse_error("trace csv: empty input", 1);
  ++line_no;
  if (line == std::string(kTraceHeader) + "\r") line.pop_back();
  if (line != kTraceHeader) throw parse_error("trace csv: unexpected header '" + line + "'", 1);
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream fs(line);
    while (std::getline(fs, field, ',')) fields.push_back(field);
    if (fields.size() != 6) {
      throw parse_error("trace csv: expected 6 fields, found " + std::to_string(fields.size()),
                        line_no);
    }
    TraceRow row;
    row.iteration = detail::parse_int_field(fields[0], line_no);
    row.epsilon = detail::parse_double_field(fields[1], line_no);
    row.mean = detail::parse_double_field(fields[2], line_no);
    row.variance = detail::parse_double_field(fields[3], line_no);
    row.sim_calls = detail::parse_int_field(fields[4], line_no);
    row.acceptance_rate = detail::parse_double_field(fields[5], line_no);
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<TraceRow> read_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace_csv(buf.str());
}

inline std::string render_particles_csv(const std::vector<double>& values,
                                        const std::vector<double>& weights) {
  if (values.size() != weights.size()) {
    throw invalid_input("particles csv: values and weights must have equal length");
  }
  std::ostringstream out;
  out << "theta,weight\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << format_g17(values[i]) << ',' << format_g17(weights[i]) << '\n';
  }
  return out.str();
}

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t count = 0;
  double density = 0.0;
  double oracle_density = 0.0;
};

/// Equal-width bins over the sample range, with the empirical density
/// (count normalized by N and bin width) and the oracle normal density at
/// each bin midpoint.
inline std::vector<HistogramBin> build_histogram(const std::vector<double>& samples,
                                                 int bin_count, const PosteriorSummary& oracle) {
  if (samples.empty()) throw invalid_input("histogram: empty sample vector");
  if (bin_count < 1) throw invalid_input("histogram: bin_count must be >= 1");
  if (!(oracle.variance > 0.0)) throw invalid_input("histogram: oracle variance must be positive");
  double lo = samples[0];
  double hi = samples[0];
  for (double v : samples) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / bin_count;
  std::vector<HistogramBin> bins(static_cast<std::size_t>(bin_count));
  for (int b = 0; b < bin_count; ++b) {
    bins[static_cast<std::size_t>(b)].lo = lo + width * b;
    bins[static_cast<std::size_t>(b)].hi = lo + width * (b + 1);
  }
  bins.back().hi = hi;
  for (double v : samples) {
    int b = static_cast<int>((v - lo) / width);
    if (b >= bin_count) b = bin_count - 1;
    if (b < 0) b = 0;
    ++bins[static_cast<std::size_t>(b)].count;
  }
  const double inv_sqrt_2pi_var = 0.3989422804014326779399461 / std::sqrt(oracle.variance);
  for (HistogramBin& bin : bins) {
    bin.density = static_cast<double>(bin.count) / (static_cast<double>(samples.size()) * width);
    const double mid = 0.5 * (bin.lo + bin.hi);
    const double d = mid - oracle.mean;
    bin.oracle_density = inv_sqrt_2pi_var * std::exp(-0.5 * d * d / oracle.variance);
  }
  return bins;
}

inline std::string render_histogram_csv(const std::vector<HistogramBin>& bins) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,count,density,oracle_density\n";
  for (const HistogramBin& bin : bins) {
    out << format_g17(bin.lo) << ',' << format_g17(bin.hi) << ',' << bin.count << ','
        << format_g17(bin.density) << ',' << format_g17(bin.oracle_density) << '\n';
  }
  return out.str();
}

}  // namespace abckit
