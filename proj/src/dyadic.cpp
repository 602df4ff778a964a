// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

#include "matw/dyadic.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "matw/error.hpp"

namespace matw {

DyadicInterval DyadicInterval::from_node(std::size_t node) {
  const int level = std::bit_width(node + 1) - 1;
  return {level, static_cast<std::int64_t>(node + 1 - (std::size_t{1} << level))};
}

double DyadicInterval::measure() const { return std::ldexp(1.0, -level); }

bool DyadicInterval::contains(const DyadicInterval& other) const {
  if (other.level < level) return false;
  return (other.index >> (other.level - level)) == index;
}

void check_interval(const DyadicInterval& interval, int depth) {
  if (interval.level < 0 || interval.level > depth)
    fail(ErrorCode::kInvalidArgument,
         "interval level " + std::to_string(interval.level) + " outside [0, " +
             std::to_string(depth) + "]");
  if (interval.index < 0 || interval.index >= (std::int64_t{1} << interval.level))
    fail(ErrorCode::kInvalidArgument, "interval index out of range");
}

Halves children(const DyadicInterval& interval, int depth) {
  check_interval(interval, depth);
  if (interval.level == depth) fail(ErrorCode::kInvalidArgument, "leaf has no children");
  return {interval.left_child(), interval.right_child()};
}

namespace {

void check_depth(int depth) {
  require(depth >= 0 && depth <= kMaxDepth, ErrorCode::kInvalidArgument, "depth out of range");
}

}  // namespace

GridScalar::GridScalar(int depth, std::vector<double> values)
    : depth_(depth), values_(std::move(values)) {
  check_depth(depth);
  require(values_.size() == leaf_count_at(depth), ErrorCode::kDimensionMismatch,
          "GridScalar: value count must be 2^depth");
  for (double v : values_)
    require(std::isfinite(v), ErrorCode::kInvalidArgument, "GridScalar: non-finite value");
}

GridVector::GridVector(int depth, int dim, std::vector<double> values)
    : depth_(depth), dim_(dim), values_(std::move(values)) {
  check_depth(depth);
  require(dim >= 1, ErrorCode::kInvalidArgument, "GridVector: dim must be positive");
  require(values_.size() == leaf_count_at(depth) * static_cast<std::size_t>(dim),
          ErrorCode::kDimensionMismatch, "GridVector: value count must be 2^depth * dim");
  for (double v : values_)
    require(std::isfinite(v), ErrorCode::kInvalidArgument, "GridVector: non-finite value");
}

GridVector GridVector::zeros(int depth, int dim) {
  return GridVector(depth, dim, std::vector<double>(leaf_count_at(depth) * static_cast<std::size_t>(dim)));
}

GridMatrixField::GridMatrixField(int depth, int dim, std::vector<Matrix> values)
    : depth_(depth), dim_(dim), values_(std::move(values)) {
  check_depth(depth);
  require(dim >= 1, ErrorCode::kInvalidArgument, "GridMatrixField: dim must be positive");
  require(values_.size() == leaf_count_at(depth), ErrorCode::kDimensionMismatch,
          "GridMatrixField: value count must be 2^depth");
  for (const Matrix& m : values_) {
    require(m.dim() == dim, ErrorCode::kDimensionMismatch, "GridMatrixField: cell has wrong dimension");
    require(m.is_finite(), ErrorCode::kInvalidArgument, "GridMatrixField: non-finite entry");
    require(m.is_symmetric(), ErrorCode::kInvalidArgument, "GridMatrixField: cell is not symmetric");
  }
}

AverageTree::AverageTree(int depth, std::size_t stride, std::span<const double> leaves)
    : depth_(depth), stride_(stride), data_(node_count_at(depth) * stride) {
  const std::size_t first_leaf_node = leaf_count_at(depth) - 1;
  std::copy(leaves.begin(), leaves.end(), data_.begin() + static_cast<std::ptrdiff_t>(first_leaf_node * stride));
  for (std::size_t node = first_leaf_node; node-- > 0;) {
    const double* l = data_.data() + (2 * node + 1) * stride;
    const double* r = data_.data() + (2 * node + 2) * stride;
    double* out = data_.data() + node * stride;
    for (std::size_t k = 0; k < stride; ++k) out[k] = 0.5 * (l[k] + r[k]);
  }
}

AverageTree::AverageTree(const GridScalar& field) : AverageTree(field.depth(), 1, field.values()) {}

AverageTree::AverageTree(const GridVector& field)
    : AverageTree(field.depth(), static_cast<std::size_t>(field.dim()), field.flat()) {}

namespace {

std::vector<double> flatten(const GridMatrixField& field) {
  std::vector<double> flat;
  flat.reserve(field.cells() * static_cast<std::size_t>(field.dim() * field.dim()));
  for (const Matrix& m : field.values()) flat.insert(flat.end(), m.data().begin(), m.data().end());
  return flat;
}

}  // namespace

AverageTree::AverageTree(const GridMatrixField& field)
    : AverageTree(field.depth(), static_cast<std::size_t>(field.dim() * field.dim()), flatten(field)) {}

Matrix AverageTree::matrix_at(const DyadicInterval& interval) const {
  const auto cell = at(interval);
  const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(stride_))));
  return Matrix(d, std::vector<double>(cell.begin(), cell.end()));
}

double average(const GridScalar& field, const DyadicInterval& interval) {
  check_interval(interval, field.depth());
  return AverageTree(field).at(interval)[0];
}

std::vector<double> average(const GridVector& field, const DyadicInterval& interval) {
  check_interval(interval, field.depth());
  const AverageTree tree(field);
  const auto cell = tree.at(interval);
  return {cell.begin(), cell.end()};
}

Matrix average(const GridMatrixField& field, const DyadicInterval& interval) {
  check_interval(interval, field.depth());
  return AverageTree(field).matrix_at(interval);
}

}  // namespace matw
