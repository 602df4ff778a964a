// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

// Matrix weights on the dyadic grid, their A2 and A-infinity characteristics,
// and generators for the test families used by the experiments.

#ifndef MATW_WEIGHTS_HPP
#define MATW_WEIGHTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matw/dyadic.hpp"
#include "matw/matrix.hpp"

namespace matw {

enum class WeightKind { kIdentity, kScalarPower, kBlockScalar, kRotating, kRandomLogPd };

std::string_view to_string(WeightKind kind);
WeightKind parse_weight_kind(std::string_view name);

struct WeightFamilySpec {
  WeightKind kind = WeightKind::kIdentity;
  int dim = 1;
  int depth = 1;
  double parameter = 0.0;
  std::uint64_t seed = 0;
};

// Provenance carried into weight files.
struct WeightMetadata {
  std::string kind = "custom";
  double parameter = 0.0;
  std::uint64_t seed = 0;
  double eps_pd = kEpsPd;
};

// A pointwise positive definite matrix weight. Averages of W and of W^-1 over
// every dyadic interval, and square roots of the W averages, are built
// eagerly at construction; the object is immutable afterwards.
class MatrixWeight {
 public:
  // Throws kNotPsd / kSingularWeight if some cell has an eigenvalue below
  // eps_pd times the largest eigenvalue over the whole grid.
  explicit MatrixWeight(GridMatrixField field, WeightMetadata meta = {});

  int depth() const { return field_.depth(); }
  int dim() const { return field_.dim(); }
  const GridMatrixField& field() const { return field_; }
  const GridMatrixField& inverse_field() const { return inverse_; }
  const WeightMetadata& metadata() const { return meta_; }

  // <W>_I and <W^-1>_I
  Matrix average(const DyadicInterval& interval) const { return averages_.matrix_at(interval); }
  Matrix inverse_average(const DyadicInterval& interval) const {
    return inverse_averages_.matrix_at(interval);
  }
  // <W>_I^{1/2}
  const Matrix& average_sqrt(const DyadicInterval& interval) const {
    return average_sqrt_[interval.node()];
  }
  const AverageTree& average_tree() const { return averages_; }

  // The weight W^-1 (same grid).
  MatrixWeight inverse() const;
  // c * W for c > 0.
  MatrixWeight scaled(double c) const;

 private:
  GridMatrixField field_;
  GridMatrixField inverse_;
  WeightMetadata meta_;
  AverageTree averages_;
  AverageTree inverse_averages_;
  std::vector<Matrix> average_sqrt_;
};

MatrixWeight make_scalar_weight(const GridScalar& w);

// sup_I || <W>_I^{1/2} <W^-1>_I^{1/2} ||^2 over all 2^(N+1)-1 intervals.
double a2_characteristic(const MatrixWeight& weight);

// Classical sup_I <w>_I <w^-1>_I for a positive scalar grid function.
double scalar_a2(const GridScalar& w);

// x -> <W(x) e, e>; e must be a unit vector.
GridScalar scalar_direction_weight(const MatrixWeight& weight, std::span<const double> e);

// sup_I <M_I w>_I / <w>_I with M_I the dyadic maximal function localized to I.
double fujii_wilson_constant(const GridScalar& w);

struct AinftyEstimate {
  double value = 1.0;  // lower bound of the true supremum
  int directions = 0;
  std::vector<double> best_direction;
};

// Direction-sampled lower bound for sup_e [W_e]_{A-infinity}. The direction
// set holds the coordinate axes, the eigenvectors of <W>_I for levels
// 0..min(N,4), and quasi-uniform Halton directions up to n_directions total.
AinftyEstimate ainfty_characteristic(const MatrixWeight& weight, int n_directions,
                                     std::uint64_t seed = 0);

// The direction set used by ainfty_characteristic (exposed for tests).
std::vector<std::vector<double>> ainfty_directions(const MatrixWeight& weight, int n_directions,
                                                   std::uint64_t seed);

void validate(const WeightFamilySpec& spec);
MatrixWeight generate_weight(const WeightFamilySpec& spec);

}  // namespace matw

#endif  // MATW_WEIGHTS_HPP
