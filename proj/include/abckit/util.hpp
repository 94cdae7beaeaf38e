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
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "abckit/errors.hpp"

namespace abckit {

/// Runs body(i) for i in [0, count) split into contiguous static chunks,
/// one per worker. The partition depends only on count and threads, so
/// any per-index work that draws from index-keyed streams is reproducible
/// across thread counts.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  if (threads < 1) throw invalid_input("parallel_for: threads must be >= 1");
  if (count == 0) return;
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> guard(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace detail {

// Recursive midpoint split. The split points depend only on the index
// range, so a range whose two halves hold identical values produces two
// bitwise-identical partial sums; summing a duplicated vector yields
// exactly twice the original sum.
template <typename F>
double pairwise_transform_sum(std::size_t lo, std::size_t hi, const F& term) {
  const std::size_t n = hi - lo;
  if (n <= 8) {
    double total = 0.0;
    for (std::size_t i = lo; i < hi; ++i) total += term(i);
    return total;
  }
  const std::size_t mid = lo + n / 2;
  return pairwise_transform_sum(lo, mid, term) + pairwise_transform_sum(mid, hi, term);
}

}  // namespace detail

/// Sum of term(0..count-1) with O(log N) rounding error and a summation
/// order fixed by index, independent of thread count.
template <typename F>
double pairwise_sum(std::size_t count, const F& term) {
  return detail::pairwise_transform_sum(0, count, term);
}

inline double pairwise_sum(const std::vector<double>& values) {
  return pairwise_sum(values.size(), [&](std::size_t i) { return values[i]; });
}

/// Median of a copy of values; even counts average the two middle order
/// statistics.
inline double median(std::vector<double> values) {
  if (values.empty()) throw invalid_input("median: empty input");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace abckit
