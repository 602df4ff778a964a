// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "matw/error.hpp"
#include "matw/matrix.hpp"
#include "test_util.hpp"

using namespace matw;
using matw::testing::random_matrix;
using matw::testing::random_spd;

namespace {

// Independent largest-singular-value oracle: plain power iteration on M^T M.
double power_iteration_norm(const Matrix& m) {
  const Matrix mtm = m.transpose() * m;
  std::vector<double> x(static_cast<std::size_t>(m.dim()), 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += 0.1 * static_cast<double>(i);
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    std::vector<double> y = mtm.apply(x);
    const double n = norm2(y);
    if (n == 0.0) return 0.0;
    for (double& v : y) v /= n;
    const double next = dot(y, mtm.apply(y));
    x = y;
    if (std::abs(next - lambda) <= 1e-16 * next) break;
    lambda = next;
  }
  return std::sqrt(dot(x, mtm.apply(x)));
}

double max_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("sym_eigen on hand-checked matrices") {
  const SymEigen id = sym_eigen(Matrix::identity(4));
  for (double v : id.values) CHECK(v == doctest::Approx(1.0));

  const SymEigen diag = sym_eigen(Matrix(2, {4.0, 0.0, 0.0, 9.0}));
  CHECK(diag.values[0] == doctest::Approx(9.0));
  CHECK(diag.values[1] == doctest::Approx(4.0));

  // Characteristic polynomial (2 - x)^2 - 1 has roots 3 and 1.
  const SymEigen e = sym_eigen(Matrix(2, {2.0, 1.0, 1.0, 2.0}));
  CHECK(e.values[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sym_eigen reconstructs random symmetric matrices") {
  for (int d = 1; d <= 8; ++d) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Matrix a = random_matrix(d, seed);
      const Matrix m = (a + a.transpose()) * 0.5;
      const SymEigen eig = sym_eigen(m);
      const Matrix vvt = eig.vectors * eig.vectors.transpose();
      CHECK(max_diff(vvt, Matrix::identity(d)) <= 1e-10);
      const Matrix rec = spectral_map(eig, [](double l) { return l; });
      CHECK(max_diff(rec, m) <= 1e-9 * std::max(1.0, m.max_abs()));
      for (std::size_t k = 1; k < eig.values.size(); ++k) CHECK(eig.values[k - 1] >= eig.values[k]);
    }
  }
}

TEST_CASE("sym_eigen rejects non-symmetric input") {
  CHECK_THROWS_AS(sym_eigen(Matrix(2, {1.0, 2.0, 0.0, 1.0})), Error);
}

TEST_CASE("psd_power examples") {
  const Matrix r = psd_power(Matrix(2, {4.0, 0.0, 0.0, 9.0}), 0.5);
  CHECK(max_diff(r, Matrix(2, {2.0, 0.0, 0.0, 3.0})) <= 1e-14);

  for (double p : {0.5, -0.5, -1.0})
    CHECK(max_diff(psd_power(Matrix::identity(3), p), Matrix::identity(3)) <= 1e-15);

  // sqrt([[2,1],[1,2]]) = [[(s+1)/2, (s-1)/2], ...] with s = sqrt(3); squaring returns the input.
  const Matrix m(2, {2.0, 1.0, 1.0, 2.0});
  const Matrix root = psd_power(m, 0.5);
  const double s = std::sqrt(3.0);
  CHECK(root(0, 0) == doctest::Approx((s + 1) / 2).epsilon(1e-14));
  CHECK(root(0, 1) == doctest::Approx((s - 1) / 2).epsilon(1e-14));
  CHECK(root(0, 0) == doctest::Approx(1.36603).epsilon(1e-5));
  CHECK(max_diff(root * root, m) <= 1e-12);
}

TEST_CASE("psd_power identities on random positive definite matrices") {
  for (int d = 1; d <= 8; ++d) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Matrix m = random_spd(d, seed * 31 + static_cast<std::uint64_t>(d), 1.5);
      const Matrix half = psd_power(m, 0.5);
      const Matrix neg_half = psd_power(m, -0.5);
      CHECK(max_diff(half * half, m) <= 1e-9 * m.max_abs());
      CHECK(max_diff(neg_half * half, Matrix::identity(d)) <= 1e-9);
      CHECK(max_diff(psd_power(m, -1.0) * m, Matrix::identity(d)) <= 1e-9);
    }
  }
}

TEST_CASE("psd_power errors") {
  CHECK_THROWS_WITH(psd_power(Matrix(2, {1.0, 0.0, 0.0, -1.0}), 0.5), "psd_power: matrix is not PSD");
  const Matrix singular(2, {1.0, 0.0, 0.0, 1e-13});
  CHECK_NOTHROW(psd_power(singular, 0.5));
  CHECK_THROWS_AS(psd_power(singular, -0.5), Error);
  try {
    psd_power(singular, -1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSingularWeight);
  }
}

TEST_CASE("operator norm examples and power-iteration oracle") {
  CHECK(operator_norm(Matrix(2, {2.0, 0.0, 0.0, 5.0})) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(operator_norm(Matrix(2, {0.0, 1.0, 0.0, 0.0})) == doctest::Approx(1.0).epsilon(1e-14));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Matrix m = random_matrix(3, seed, 9);
    CHECK(testing::rel_err(operator_norm(m), power_iteration_norm(m)) <= 1e-8);
  }
}

TEST_CASE("Hilbert-Schmidt norm and trace") {
  CHECK(hs_norm(Matrix::identity(3)) == doctest::Approx(std::sqrt(3.0)));
  CHECK(trace_of(Matrix::identity(3)) == 3.0);
  CHECK(hs_norm(Matrix(2, {1.0, 2.0, 3.0, 4.0})) == doctest::Approx(std::sqrt(30.0)).epsilon(1e-15));
}

TEST_CASE("norm comparisons on random matrices") {
  for (int d = 1; d <= 6; ++d) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Matrix m = random_matrix(d, seed, 11);
      const double op = operator_norm(m);
      const double hs = hs_norm(m);
      CHECK(op <= hs * (1 + 1e-12));
      CHECK(hs <= std::sqrt(static_cast<double>(d)) * op * (1 + 1e-12));
      CHECK(testing::rel_err(hs * hs, trace_of(m.transpose() * m)) <= 1e-12);
    }
  }
}

TEST_CASE("operator norm is submultiplicative") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Matrix a = random_matrix(4, seed, 1);
    const Matrix b = random_matrix(4, seed, 2);
    CHECK(operator_norm(a * b) <= operator_norm(a) * operator_norm(b) * (1 + 1e-12));
  }
}

TEST_CASE("trace is invariant under similarity") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Matrix m = random_matrix(4, seed, 3);
    // P = SPD matrix is invertible; P^-1 via psd_power.
    const Matrix p = random_spd(4, seed + 1000);
    const Matrix pinv = psd_power(p, -1.0);
    CHECK(std::abs(trace_of(pinv * m * p) - trace_of(m)) <= 1e-8 * (1.0 + std::abs(trace_of(m))));
  }
}

TEST_CASE("spd_solve agrees with the inverse") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix m = random_spd(5, seed);
    const std::vector<double> b{1.0, -2.0, 0.5, 3.0, 0.0};
    const std::vector<double> x = spd_solve(m, b);
    const std::vector<double> back = m.apply(x);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(back[i] == doctest::Approx(b[i]).epsilon(1e-10));
  }
}
