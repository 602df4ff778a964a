// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

// Counter-based pseudo-random numbers. Every draw is a pure function of
// (seed, stream, counter), so results do not depend on call order or on the
// number of threads, and are identical across platforms.

#ifndef MATW_RANDOM_HPP
#define MATW_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace matw {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ counter);
}

// Uniform in [0, 1) with 53 random bits.
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return static_cast<double>(counter_bits(seed, stream, counter) >> 11) * 0x1.0p-53;
}

inline double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                              double lo, double hi) {
  return lo + (hi - lo) * counter_uniform(seed, stream, counter);
}

// One unbiased sign.
constexpr int counter_sign(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return (counter_bits(seed, stream, counter) >> 63) ? 1 : -1;
}

// Radical inverse of n in the given prime base.
inline double radical_inverse(std::uint64_t n, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double scale = inv;
  double out = 0.0;
  while (n > 0) {
    out += static_cast<double>(n % base) * scale;
    n /= base;
    scale *= inv;
  }
  return out;
}

inline constexpr std::uint64_t kHaltonPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace matw

#endif  // MATW_RANDOM_HPP
