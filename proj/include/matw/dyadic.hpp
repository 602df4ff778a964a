// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

// The dyadic tree on J = [0,1] truncated at depth N, and piecewise-constant
// data living on its 2^N leaf cells.
//
// Nodes are numbered breadth-first: node (level k, index j) has id
// 2^k - 1 + j, so the root is 0 and the tree has 2^(N+1) - 1 nodes.

#ifndef MATW_DYADIC_HPP
#define MATW_DYADIC_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "matw/matrix.hpp"

namespace matw {

inline constexpr int kMaxDepth = 24;

struct DyadicInterval {
  int level = 0;
  std::int64_t index = 0;

  static constexpr DyadicInterval root() { return {0, 0}; }
  static DyadicInterval from_node(std::size_t node);

  std::size_t node() const {
    return (std::size_t{1} << level) - 1 + static_cast<std::size_t>(index);
  }
  double measure() const;
  double left_end() const { return static_cast<double>(index) * measure(); }
  double right_end() const { return static_cast<double>(index + 1) * measure(); }

  DyadicInterval left_child() const { return {level + 1, 2 * index}; }
  DyadicInterval right_child() const { return {level + 1, 2 * index + 1}; }
  DyadicInterval parent() const { return {level - 1, index / 2}; }

  // Inclusive containment: every interval contains itself.
  bool contains(const DyadicInterval& other) const;

  // Leaf range [first, last) covered at the given depth.
  std::size_t first_leaf(int depth) const {
    return static_cast<std::size_t>(index) << (depth - level);
  }
  std::size_t leaf_count(int depth) const { return std::size_t{1} << (depth - level); }

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
  friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;
};

// Halves of a non-leaf interval. The Haar function h_I is positive on the
// left half.
struct Halves {
  DyadicInterval left;
  DyadicInterval right;
};

// Throws kInvalidArgument when I is a leaf (I.level == depth) or out of range.
Halves children(const DyadicInterval& interval, int depth);

// Checks 0 <= level <= depth and 0 <= index < 2^level.
void check_interval(const DyadicInterval& interval, int depth);

inline std::size_t leaf_count_at(int depth) { return std::size_t{1} << depth; }
inline std::size_t node_count_at(int depth) { return (std::size_t{2} << depth) - 1; }

// ---------------------------------------------------------------------------
// Grid-valued data.

class GridScalar {
 public:
  GridScalar() = default;
  GridScalar(int depth, std::vector<double> values);

  int depth() const { return depth_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t leaf) const { return values_[leaf]; }
  std::span<const double> values() const { return values_; }

 private:
  int depth_ = 0;
  std::vector<double> values_;
};

class GridVector {
 public:
  GridVector() = default;
  // values holds 2^depth cells of dim components each, cell-major.
  GridVector(int depth, int dim, std::vector<double> values);
  static GridVector zeros(int depth, int dim);

  int depth() const { return depth_; }
  int dim() const { return dim_; }
  std::size_t cells() const { return leaf_count_at(depth_); }

  std::span<const double> cell(std::size_t leaf) const {
    return {values_.data() + leaf * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  std::span<double> cell(std::size_t leaf) {
    return {values_.data() + leaf * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  std::span<const double> flat() const { return values_; }
  std::span<double> flat() { return values_; }

 private:
  int depth_ = 0;
  int dim_ = 1;
  std::vector<double> values_;
};

class GridMatrixField {
 public:
  GridMatrixField() = default;
  // Every cell must be a dim x dim symmetric matrix with finite entries.
  GridMatrixField(int depth, int dim, std::vector<Matrix> values);

  int depth() const { return depth_; }
  int dim() const { return dim_; }
  std::size_t cells() const { return values_.size(); }
  const Matrix& operator[](std::size_t leaf) const { return values_[leaf]; }
  std::span<const Matrix> values() const { return values_; }

 private:
  int depth_ = 0;
  int dim_ = 1;
  std::vector<Matrix> values_;
};

// Averages over every node of the tree, built bottom-up so that each node's
// average is exactly the mean of its two children's averages. Each node owns
// `stride` consecutive doubles (1, d or d*d).
class AverageTree {
 public:
  AverageTree() = default;
  explicit AverageTree(const GridScalar& field);
  explicit AverageTree(const GridVector& field);
  explicit AverageTree(const GridMatrixField& field);

  int depth() const { return depth_; }
  std::size_t stride() const { return stride_; }

  std::span<const double> at(std::size_t node) const {
    return {data_.data() + node * stride_, stride_};
  }
  std::span<const double> at(const DyadicInterval& interval) const {
    return at(interval.node());
  }
  // Reinterprets a matrix node (stride d*d) as a Matrix.
  Matrix matrix_at(const DyadicInterval& interval) const;

 private:
  AverageTree(int depth, std::size_t stride, std::span<const double> leaves);

  int depth_ = 0;
  std::size_t stride_ = 1;
  std::vector<double> data_;
};

double average(const GridScalar& field, const DyadicInterval& interval);
std::vector<double> average(const GridVector& field, const DyadicInterval& interval);
Matrix average(const GridMatrixField& field, const DyadicInterval& interval);

}  // namespace matw

#endif  // MATW_DYADIC_HPP
