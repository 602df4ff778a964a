// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

// Random instance generators shared by the test suites.

#ifndef MATW_TESTS_TEST_UTIL_HPP
#define MATW_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "matw/dyadic.hpp"
#include "matw/matrix.hpp"
#include "matw/random.hpp"
#include "matw/weights.hpp"

namespace matw::testing {

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

inline GridVector random_function(int depth, int dim, std::uint64_t seed) {
  std::vector<double> v(leaf_count_at(depth) * static_cast<std::size_t>(dim));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = counter_uniform(seed, 0xF00Dull, k, -1.0, 1.0);
  return GridVector(depth, dim, std::move(v));
}

// Mostly-zero function with a few large spikes; exercises type-2 stopping.
inline GridVector spiky_function(int depth, int dim, std::uint64_t seed) {
  std::vector<double> v(leaf_count_at(depth) * static_cast<std::size_t>(dim), 0.0);
  const std::size_t spikes = 1 + counter_bits(seed, 1, 0) % 3;
  for (std::size_t s = 0; s < spikes; ++s) {
    const std::size_t leaf = counter_bits(seed, 2, s) % leaf_count_at(depth);
    for (int c = 0; c < dim; ++c)
      v[leaf * static_cast<std::size_t>(dim) + static_cast<std::size_t>(c)] =
          counter_uniform(seed, 3, s * 8 + static_cast<std::size_t>(c), -50.0, 50.0);
  }
  return GridVector(depth, dim, std::move(v));
}

inline Matrix random_matrix(int dim, std::uint64_t seed, std::uint64_t stream = 0) {
  Matrix m(dim);
  std::uint64_t k = 0;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = counter_uniform(seed, stream, k++, -1.0, 1.0);
  return m;
}

inline Matrix random_spd(int dim, std::uint64_t seed, double spread = 1.0) {
  Matrix s(dim);
  std::uint64_t k = 0;
  for (int r = 0; r < dim; ++r)
    for (int c = r; c < dim; ++c) s(r, c) = s(c, r) = counter_uniform(seed, 77, k++, -spread, spread);
  return sym_exp(s);
}

inline GridScalar random_positive(int depth, std::uint64_t seed, double spread = 2.0) {
  std::vector<double> v(leaf_count_at(depth));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::exp(counter_uniform(seed, 5, k, -spread, spread));
  return GridScalar(depth, std::move(v));
}

inline MatrixWeight random_weight(int depth, int dim, std::uint64_t seed, double spread = 1.0) {
  return generate_weight(WeightFamilySpec{WeightKind::kRandomLogPd, dim, depth, spread, seed});
}

}  // namespace matw::testing

#endif  // MATW_TESTS_TEST_UTIL_HPP
