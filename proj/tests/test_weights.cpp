// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "matw/error.hpp"
#include "matw/weights.hpp"
#include "test_util.hpp"

using namespace matw;
using matw::testing::random_positive;
using matw::testing::rel_err;

namespace {

MatrixWeight constant_weight(int depth, const Matrix& m) {
  return MatrixWeight(GridMatrixField(depth, m.dim(), std::vector<Matrix>(leaf_count_at(depth), m)));
}

// Direct-summation oracles for scalar weights: every average is a fresh sum
// over leaves, every maximal function a fresh max over sub-intervals.
double direct_average(const GridScalar& w, const DyadicInterval& i, bool inverse = false) {
  double acc = 0.0;
  const std::size_t first = i.first_leaf(w.depth());
  for (std::size_t leaf = first; leaf < first + i.leaf_count(w.depth()); ++leaf)
    acc += inverse ? 1.0 / w[leaf] : w[leaf];
  return acc / static_cast<double>(i.leaf_count(w.depth()));
}

double direct_a2(const GridScalar& w) {
  double best = 0.0;
  for (std::size_t node = 0; node < node_count_at(w.depth()); ++node) {
    const DyadicInterval i = DyadicInterval::from_node(node);
    best = std::max(best, direct_average(w, i) * direct_average(w, i, true));
  }
  return best;
}

double direct_fujii_wilson(const GridScalar& w) {
  const int n = w.depth();
  double best = 0.0;
  for (std::size_t node = 0; node < node_count_at(n); ++node) {
    const DyadicInterval i = DyadicInterval::from_node(node);
    double integral = 0.0;
    for (std::size_t leaf = i.first_leaf(n); leaf < i.first_leaf(n) + i.leaf_count(n); ++leaf) {
      double m = 0.0;
      for (int level = i.level; level <= n; ++level)
        m = std::max(m, direct_average(w, DyadicInterval{level, static_cast<std::int64_t>(leaf >> (n - level))}));
      integral += m;
    }
    best = std::max(best, integral / static_cast<double>(i.leaf_count(n)) / direct_average(w, i));
  }
  return best;
}

}  // namespace

TEST_CASE("A2 of the identity and of the two-cell weight") {
  CHECK(a2_characteristic(generate_weight({WeightKind::kIdentity, 3, 5, 0.0, 0})) == doctest::Approx(1.0).epsilon(1e-14));
  // Root: <w> = 5, <1/w> = (1 + 1/9)/2 = 5/9; leaves give 1.
  const MatrixWeight w = make_scalar_weight(GridScalar(1, {1.0, 9.0}));
  CHECK(a2_characteristic(w) == doctest::Approx(25.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("A2 is at least one and equals one exactly for constant weights") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int d = 1 + static_cast<int>(seed % 4);
    const MatrixWeight w = testing::random_weight(4, d, seed, 1.0);
    CHECK(a2_characteristic(w) >= 1.0 - 1e-12);

    const Matrix c = testing::random_spd(d, seed + 500, 2.0);
    const MatrixWeight flat = constant_weight(4, c);
    CHECK(std::abs(a2_characteristic(flat) - 1.0) <= 1e-12);

    std::vector<Matrix> cells(leaf_count_at(4), c);
    cells[3] = c * 1.5;
    CHECK(a2_characteristic(MatrixWeight(GridMatrixField(4, d, cells))) > 1.0 + 1e-6);
  }
}

TEST_CASE("scalar A2 matches the direct-summation oracle") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const GridScalar w = random_positive(6, seed);
    CHECK(rel_err(a2_characteristic(make_scalar_weight(w)), direct_a2(w)) <= 1e-12);
    CHECK(rel_err(scalar_a2(w), direct_a2(w)) <= 1e-12);
  }
}

TEST_CASE("scalar direction weights") {
  const MatrixWeight id = generate_weight({WeightKind::kIdentity, 2, 3, 0.0, 0});
  const std::vector<double> e{0.6, 0.8};
  const GridScalar flat = scalar_direction_weight(id, e);
  for (double v : flat.values()) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

  std::vector<Matrix> cells;
  for (std::size_t leaf = 0; leaf < 4; ++leaf)
    cells.push_back(Matrix::diagonal(std::vector<double>{1.0 + static_cast<double>(leaf), 7.0}));
  const MatrixWeight diag(GridMatrixField(2, 2, cells));
  const GridScalar first = scalar_direction_weight(diag, std::vector<double>{1.0, 0.0});
  for (std::size_t leaf = 0; leaf < 4; ++leaf) CHECK(first[leaf] == 1.0 + static_cast<double>(leaf));

  const MatrixWeight m(GridMatrixField(0, 2, {Matrix(2, {2.0, 1.0, 1.0, 2.0})}));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(scalar_direction_weight(m, std::vector<double>{r, r})[0] == doctest::Approx(3.0).epsilon(1e-15));

  CHECK_THROWS_AS(scalar_direction_weight(m, std::vector<double>{0.0, 0.0}), Error);
  CHECK_THROWS_AS(scalar_direction_weight(m, std::vector<double>{1.0, 1.0}), Error);
}

TEST_CASE("Fujii-Wilson constant") {
  CHECK(fujii_wilson_constant(GridScalar(5, std::vector<double>(32, 3.0))) == doctest::Approx(1.0).epsilon(1e-15));
  // M_J w = (5, 9), average 7, over <w>_J = 5.
  CHECK(fujii_wilson_constant(GridScalar(1, {1.0, 9.0})) == doctest::Approx(1.4).epsilon(1e-15));
  CHECK_THROWS_AS(fujii_wilson_constant(GridScalar(1, {1.0, 0.0})), Error);
}

TEST_CASE("Fujii-Wilson matches the oracle") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GridScalar w = random_positive(1 + static_cast<int>(seed % 6), seed, 3.0);
    const double fw = fujii_wilson_constant(w);
    if (w.depth() <= 5) CHECK(rel_err(fw, direct_fujii_wilson(w)) <= 1e-12);
    CHECK(fw >= 1.0);
  }
}

TEST_CASE("A-infinity estimates") {
  const MatrixWeight id = generate_weight({WeightKind::kIdentity, 2, 4, 0.0, 0});
  CHECK(ainfty_characteristic(id, 16).value == doctest::Approx(1.0).epsilon(1e-14));

  const GridScalar w = random_positive(6, 42);
  const MatrixWeight scalar = make_scalar_weight(w);
  const double fw = fujii_wilson_constant(w);
  for (int n : {2, 5, 40}) CHECK(ainfty_characteristic(scalar, n, 7).value == fw);

  // diag(w, 1) with w = (1, 9): the first coordinate attains 1.4.
  const MatrixWeight block(GridMatrixField(1, 2, {Matrix::diagonal(std::vector<double>{1.0, 1.0}),
                                                  Matrix::diagonal(std::vector<double>{9.0, 1.0})}));
  const AinftyEstimate est = ainfty_characteristic(block, 8, 3);
  CHECK(est.value == doctest::Approx(1.4).epsilon(1e-14));
  CHECK(std::abs(est.best_direction[0]) == doctest::Approx(1.0));

  CHECK_THROWS_AS(ainfty_characteristic(block, 3), Error);
}

TEST_CASE("direction set contains axes, average eigenvectors and extra samples") {
  const MatrixWeight w = testing::random_weight(5, 3, 9, 1.0);
  const auto dirs = ainfty_directions(w, 200, 1);
  // 3 axes + 31 intervals * 3 eigenvectors, then Halton fill.
  CHECK(dirs.size() == 200);
  for (const auto& e : dirs) CHECK(norm2(e) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ainfty_directions(w, 6, 1).size() == 3 + 31 * 3);
  CHECK(ainfty_directions(w, 200, 1) == ainfty_directions(w, 200, 1));
  CHECK(ainfty_directions(w, 200, 1) != ainfty_directions(w, 200, 2));
}

TEST_CASE("characteristics are scale invariant") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MatrixWeight w = testing::random_weight(5, 2, seed, 1.2);
    const MatrixWeight cw = w.scaled(37.5);
    CHECK(rel_err(a2_characteristic(w), a2_characteristic(cw)) <= 1e-10);
    CHECK(rel_err(ainfty_characteristic(w, 32, 1).value, ainfty_characteristic(cw, 32, 1).value) <= 1e-10);
    const std::vector<double> e{0.6, 0.8};
    CHECK(rel_err(fujii_wilson_constant(scalar_direction_weight(w, e)),
                  fujii_wilson_constant(scalar_direction_weight(cw, e))) <= 1e-10);
  }
}

TEST_CASE("weights reject indefinite or singular cells") {
  CHECK_THROWS_AS(MatrixWeight(GridMatrixField(0, 2, {Matrix(2, {1.0, 0.0, 0.0, -1.0})})), Error);
  try {
    MatrixWeight(GridMatrixField(1, 1, {Matrix(1, {1.0}), Matrix(1, {1e-12})}));
    FAIL("expected a singular weight error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSingularWeight);
  }
}

TEST_CASE("inverse weight holds pointwise inverses") {
  const MatrixWeight w = testing::random_weight(3, 3, 4, 1.0);
  const MatrixWeight inv = w.inverse();
  for (std::size_t leaf = 0; leaf < 8; ++leaf)
    CHECK((w.field()[leaf] * inv.field()[leaf] - Matrix::identity(3)).max_abs() <= 1e-10);
  // [W^-1]_{A2} = [W]_{A2}: the product's operator norm is transpose invariant.
  CHECK(rel_err(a2_characteristic(w), a2_characteristic(inv)) <= 1e-10);
}

TEST_CASE("family generation") {
  CHECK(a2_characteristic(generate_weight({WeightKind::kIdentity, 2, 6, 0.0, 0})) == doctest::Approx(1.0));

  const MatrixWeight zero = generate_weight({WeightKind::kScalarPower, 2, 6, 0.0, 0});
  for (const Matrix& m : zero.field().values()) CHECK((m - Matrix::identity(2)).max_abs() == 0.0);

  // Frozen regression value (cross-checked against an independent numpy
  // evaluation of the same dyadic power weight).
  const MatrixWeight half = generate_weight({WeightKind::kScalarPower, 1, 10, 0.5, 0});
  CHECK(a2_characteristic(half) == doctest::Approx(1.3032976977770345).epsilon(1e-12));
  CHECK(fujii_wilson_constant(scalar_direction_weight(half.inverse(), std::vector<double>{1.0})) ==
        doctest::Approx(1.6284232448704161).epsilon(1e-12));

  const WeightFamilySpec spec{WeightKind::kRandomLogPd, 3, 4, 1.0, 11};
  const MatrixWeight a = generate_weight(spec);
  const MatrixWeight b = generate_weight(spec);
  for (std::size_t leaf = 0; leaf < 16; ++leaf) CHECK((a.field()[leaf] - b.field()[leaf]).max_abs() == 0.0);

  CHECK_THROWS_AS(generate_weight({WeightKind::kScalarPower, 1, 4, 1.0, 0}), Error);
  CHECK_THROWS_AS(generate_weight({WeightKind::kRotating, 3, 4, 0.5, 0}), Error);
  CHECK_THROWS_AS(generate_weight({WeightKind::kRandomLogPd, 2, 4, -1.0, 0}), Error);
  CHECK_THROWS_AS(parse_weight_kind("gaussian"), Error);
  CHECK(parse_weight_kind("block_scalar") == WeightKind::kBlockScalar);
}

TEST_CASE("scalar power family: A2 grows with t") {
  double prev = 0.0;
  for (int k = 0; k <= 9; ++k) {
    const double a2 = a2_characteristic(generate_weight({WeightKind::kScalarPower, 1, 12, 0.1 * k, 0}));
    CHECK(a2 >= prev);
    prev = a2;
  }
}

TEST_CASE("rotating and block families are valid weights with A2 > 1") {
  const MatrixWeight rot = generate_weight({WeightKind::kRotating, 2, 8, 1.5, 0});
  CHECK(a2_characteristic(rot) > 1.0);
  const MatrixWeight block = generate_weight({WeightKind::kBlockScalar, 3, 8, 0.7, 0});
  CHECK(a2_characteristic(block) > 1.0);
  for (const Matrix& m : rot.field().values()) CHECK(m.is_symmetric());
}
