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

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>

#include "abckit/errors.hpp"

namespace abckit {

namespace detail {

// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kPathSalt = 0x85EBCA77C2B2AE63ULL;

}  // namespace detail

/// Counter-based generator: Philox4x32-10 keyed by a hash of
/// (seed, derivation path). Streams with distinct paths are statistically
/// independent, and a stream's output is a pure function of its key and
/// counter, so work parceled out by index draws identical numbers no
/// matter how many threads run it.
class RandomStream {
 public:
  /// Root stream for a seed (empty derivation path).
  explicit RandomStream(std::uint64_t seed) : key_(derive_key(seed, {})) {}

  /// Stream keyed by seed and an explicit derivation path.
  RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
      : key_(derive_key(seed, path)) {}

  /// Sub-stream reached by appending path to this stream's own path.
  /// Children never overlap their parent or each other.
  RandomStream child(std::initializer_list<std::uint64_t> path) const {
    std::uint64_t h = key_;
    for (std::uint64_t v : path) h = extend_key(h, v);
    return RandomStream(Key{h});
  }

  /// Uniform draw on [0, 1) with 53 random bits.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform draw on [lo, hi).
  double next_uniform(double lo, double hi) {
    if (!(lo < hi)) throw invalid_input("next_uniform: lo must be < hi");
    return lo + (hi - lo) * next_uniform();
  }

  /// Gaussian draw via Box-Muller; the paired variate is cached, so
  /// consecutive calls cost one transform per two draws.
  double next_gaussian(double mean, double variance) {
    if (!(variance > 0.0) || !std::isfinite(variance)) {
      throw invalid_input("next_gaussian: variance must be positive and finite");
    }
    return mean + std::sqrt(variance) * next_standard_normal();
  }

  double next_standard_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1]: flip the half-open uniform so log() stays finite.
    const double u1 = 1.0 - next_uniform();
    const double u2 = next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  std::uint64_t next_u64() {
    if (buffer_pos_ == kBufferSize) refill();
    return buffer_[buffer_pos_++];
  }

 private:
  struct Key {
    std::uint64_t value;
  };

  explicit RandomStream(Key key) : key_(key.value) {}

  static std::uint64_t extend_key(std::uint64_t h, std::uint64_t v) {
    return detail::mix64((h ^ detail::mix64(v + detail::kGolden)) + detail::kPathSalt);
  }

  static std::uint64_t derive_key(std::uint64_t seed,
                                  std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = detail::mix64(seed + detail::kGolden);
    for (std::uint64_t v : path) h = extend_key(h, v);
    return h;
  }

  static constexpr int kBufferSize = 2;

  // One Philox4x32-10 block: four 32-bit words from (key, counter).
  void refill() {
    std::uint32_t c0 = static_cast<std::uint32_t>(counter_);
    std::uint32_t c1 = static_cast<std::uint32_t>(counter_ >> 32);
    std::uint32_t c2 = 0;
    std::uint32_t c3 = 0;
    std::uint32_t k0 = static_cast<std::uint32_t>(key_);
    std::uint32_t k1 = static_cast<std::uint32_t>(key_ >> 32);
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = 0xD2511F53ULL * c0;
      const std::uint64_t p1 = 0xCD9E8D57ULL * c2;
      const std::uint32_t h0 = static_cast<std::uint32_t>(p0 >> 32);
      const std::uint32_t l0 = static_cast<std::uint32_t>(p0);
      const std::uint32_t h1 = static_cast<std::uint32_t>(p1 >> 32);
      const std::uint32_t l1 = static_cast<std::uint32_t>(p1);
      const std::uint32_t n0 = h1 ^ c1 ^ k0;
      const std::uint32_t n1 = l1;
      const std::uint32_t n2 = h0 ^ c3 ^ k1;
      const std::uint32_t n3 = l0;
      c0 = n0;
      c1 = n1;
      c2 = n2;
      c3 = n3;
      k0 += 0x9E3779B9U;
      k1 += 0xBB67AE85U;
    }
    buffer_[0] = (static_cast<std::uint64_t>(c0) << 32) | c1;
    buffer_[1] = (static_cast<std::uint64_t>(c2) << 32) | c3;
    buffer_pos_ = 0;
    ++counter_;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, kBufferSize> buffer_{};
  int buffer_pos_ = kBufferSize;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Stream for (seed, path) without constructing intermediates.
inline RandomStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  return RandomStream(seed, path);
}

}  // namespace abckit
