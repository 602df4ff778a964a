// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "matw/error.hpp"
#include "matw/operator_norm.hpp"
#include "matw/square_functions.hpp"
#include "test_util.hpp"

using namespace matw;
using matw::testing::rel_err;

namespace {

// Dense oracle: assemble Q and P on R^{2^N d} and solve Q v = lambda P v.
double dense_top_eigenvalue(const MatrixWeight& w) {
  const int depth = w.depth();
  const int d = w.dim();
  const auto n = static_cast<Eigen::Index>(leaf_count_at(depth));
  const Eigen::Index size = n * d;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(size, size);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(size, size);
  const double cell = 1.0 / static_cast<double>(n);
  for (Eigen::Index leaf = 0; leaf < n; ++leaf)
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) p(leaf * d + r, leaf * d + c) = cell * w.field()[static_cast<std::size_t>(leaf)](r, c);
  for (std::size_t node = 0; node < node_count_at(depth) - leaf_count_at(depth); ++node) {
    const DyadicInterval iv = DyadicInterval::from_node(node);
    // (f, h_I) = sum_leaf f(leaf) h_I(leaf) / n.
    Eigen::VectorXd h = Eigen::VectorXd::Zero(n);
    const auto first = static_cast<Eigen::Index>(iv.first_leaf(depth));
    const auto count = static_cast<Eigen::Index>(iv.leaf_count(depth));
    const double amp = cell / std::sqrt(iv.measure());
    for (Eigen::Index k = 0; k < count; ++k) h(first + k) = k < count / 2 ? amp : -amp;
    const Matrix avg = w.average(iv);
    for (Eigen::Index a = first; a < first + count; ++a)
      for (Eigen::Index b = first; b < first + count; ++b)
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c) q(a * d + r, b * d + c) += h(a) * h(b) * avg(r, c);
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(q, p);
  REQUIRE(solver.info() == Eigen::Success);
  return solver.eigenvalues().maxCoeff();
}

}  // namespace

TEST_CASE("identity weight has norm one") {
  for (int dim : {1, 3}) {
    const MatrixWeight id = generate_weight({WeightKind::kIdentity, dim, 6, 0.0, 0});
    const OperatorNormEstimate e = estimate_operator_norm(id);
    CHECK(e.converged);
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("two-cell scalar weight") {
  // Max of (5/2)(a-b)^2 / (a^2 + 9 b^2) is 25/9 at (a, b) ~ (-9, 1).
  const MatrixWeight w = make_scalar_weight(GridScalar(1, {1.0, 9.0}));
  const OperatorNormEstimate e = estimate_operator_norm(w);
  CHECK(e.converged);
  CHECK(rel_err(e.value, 25.0 / 9.0) <= 1e-12);
  const auto v = e.witness.flat();
  CHECK(v[0] / v[1] == doctest::Approx(-9.0).epsilon(1e-6));
  CHECK(dense_top_eigenvalue(w) == doctest::Approx(25.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("depth zero has no Haar terms") {
  const MatrixWeight w(GridMatrixField(0, 2, {Matrix(2, {2.0, 1.0, 1.0, 2.0})}));
  const OperatorNormEstimate e = estimate_operator_norm(w);
  CHECK(e.value == 0.0);
  CHECK(e.converged);
}

TEST_CASE("power iteration agrees with the dense generalized eigensolver") {
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    const int depth = 1 + static_cast<int>(seed % 6);
    const int dim = 1 + static_cast<int>(seed % 3);
    const MatrixWeight w = testing::random_weight(depth, dim, seed, 1.0 + static_cast<double>(seed % 3));
    PowerIterationOptions opts;
    opts.rel_tol = 1e-10;
    opts.max_iters = 200000;
    const OperatorNormEstimate e = estimate_operator_norm(w, opts);
    const double oracle = dense_top_eigenvalue(w);
    CHECK(e.converged);
    CHECK(rel_err(e.value, oracle) <= 1e-6);
    // The reported value is a Rayleigh quotient, so never above the oracle.
    CHECK(e.value <= oracle * (1.0 + 1e-12));
  }
}

TEST_CASE("the witness reproduces the reported value") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MatrixWeight w = testing::random_weight(5, 2, seed, 1.5);
    const OperatorNormEstimate e = estimate_operator_norm(w);
    CHECK(rel_err(rayleigh_quotient(w, e.witness), e.value) <= 1e-12);
    CHECK(weighted_norm_squared(w, e.witness) == doctest::Approx(1.0).epsilon(1e-9));
    // <A f, f> = Q(f).
    const GridVector af = apply_square_form(w, e.witness);
    const double q = dot(af.flat(), e.witness.flat()) / static_cast<double>(e.witness.cells());
    CHECK(rel_err(q, sw_norm_squared(w, e.witness).total) <= 1e-10);
  }
}

TEST_CASE("adding a constant to the witness never beats the top eigenvalue") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MatrixWeight w = testing::random_weight(4, 2, seed + 50, 2.0);
    const double oracle = dense_top_eigenvalue(w);
    const OperatorNormEstimate e = estimate_operator_norm(w);
    for (double shift : {-1.0, -0.1, 0.1, 1.0}) {
      GridVector g = e.witness;
      for (double& v : g.flat()) v += shift;
      CHECK(rayleigh_quotient(w, g) <= oracle * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("operator norm is invariant under scaling the weight") {
  const MatrixWeight w = testing::random_weight(5, 2, 3, 1.0);
  const OperatorNormEstimate a = estimate_operator_norm(w);
  const OperatorNormEstimate b = estimate_operator_norm(w.scaled(7.5));
  CHECK(rel_err(a.value, b.value) <= 1e-9);
}

TEST_CASE("option validation") {
  const MatrixWeight w = testing::random_weight(2, 1, 3, 1.0);
  PowerIterationOptions bad;
  bad.rel_tol = 0.1;
  CHECK_THROWS_AS(estimate_operator_norm(w, bad), Error);
  bad = {};
  bad.max_iters = 0;
  CHECK_THROWS_AS(estimate_operator_norm(w, bad), Error);
  CHECK_THROWS_AS(rayleigh_quotient(w, GridVector::zeros(2, 1)), Error);
}
