// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

#include "matw/square_functions.hpp"

#include <cmath>
#include <string>

#include "matw/error.hpp"
#include "matw/random.hpp"

namespace matw {

namespace {

double quadratic_form(std::span<const double> m, std::span<const double> x) {
  const std::size_t d = x.size();
  double acc = 0.0;
  for (std::size_t r = 0; r < d; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < d; ++c) row += m[r * d + c] * x[c];
    acc += row * x[r];
  }
  return acc;
}

void check_same_grid(const MatrixWeight& weight, const GridVector& f) {
  if (weight.depth() != f.depth() || weight.dim() != f.dim())
    fail(ErrorCode::kDimensionMismatch,
         "weight is depth " + std::to_string(weight.depth()) + " dim " + std::to_string(weight.dim()) +
             " but function is depth " + std::to_string(f.depth()) + " dim " + std::to_string(f.dim()));
}

}  // namespace

HaarCoefficients::HaarCoefficients(int depth, int dim)
    : depth_(depth),
      dim_(dim),
      mean_(static_cast<std::size_t>(dim), 0.0),
      coeffs_(haar_count_at(depth) * static_cast<std::size_t>(dim), 0.0) {}

SignPattern::SignPattern(int depth, std::vector<std::int8_t> signs) : depth_(depth), signs_(std::move(signs)) {
  require(signs_.size() == haar_count_at(depth), ErrorCode::kInvalidArgument,
          "sign pattern must cover every Haar interval");
  for (std::int8_t s : signs_)
    require(s == 1 || s == -1, ErrorCode::kInvalidArgument, "signs must be +1 or -1");
}

SignPattern SignPattern::constant(int depth, int sign) {
  return SignPattern(depth, std::vector<std::int8_t>(haar_count_at(depth), static_cast<std::int8_t>(sign)));
}

SignPattern SignPattern::from_bits(int depth, std::uint64_t bits) {
  std::vector<std::int8_t> signs(haar_count_at(depth));
  for (std::size_t k = 0; k < signs.size(); ++k) signs[k] = ((bits >> k) & 1u) ? 1 : -1;
  return SignPattern(depth, std::move(signs));
}

SignPattern SignPattern::random(int depth, std::uint64_t seed, std::uint64_t sample) {
  std::vector<std::int8_t> signs(haar_count_at(depth));
  for (std::size_t k = 0; k < signs.size(); ++k)
    signs[k] = static_cast<std::int8_t>(counter_sign(seed, sample, k));
  return SignPattern(depth, std::move(signs));
}

HaarCoefficients analyze(const GridVector& f) {
  const int d = f.dim();
  HaarCoefficients out(f.depth(), d);
  const AverageTree avg(f);
  const auto root = avg.at(std::size_t{0});
  std::copy(root.begin(), root.end(), out.mean().begin());
  for (std::size_t node = 0; node < out.intervals(); ++node) {
    const DyadicInterval interval = DyadicInterval::from_node(node);
    const double half_root = 0.5 * std::sqrt(interval.measure());
    const auto l = avg.at(interval.left_child());
    const auto r = avg.at(interval.right_child());
    auto c = out.at(node);
    for (int k = 0; k < d; ++k) c[static_cast<std::size_t>(k)] = (l[static_cast<std::size_t>(k)] - r[static_cast<std::size_t>(k)]) * half_root;
  }
  return out;
}

GridVector synthesize(const HaarCoefficients& coeffs) {
  const std::size_t d = static_cast<std::size_t>(coeffs.dim());
  std::vector<double> cur(coeffs.mean().begin(), coeffs.mean().end());
  for (int level = 0; level < coeffs.depth(); ++level) {
    const std::size_t width = std::size_t{1} << level;
    const double inv_root = std::sqrt(std::ldexp(1.0, level));  // |I|^{-1/2}
    std::vector<double> next(2 * width * d);
    for (std::size_t j = 0; j < width; ++j) {
      const auto c = coeffs.at(DyadicInterval{level, static_cast<std::int64_t>(j)});
      for (std::size_t k = 0; k < d; ++k) {
        const double step = c[k] * inv_root;
        next[(2 * j) * d + k] = cur[j * d + k] + step;
        next[(2 * j + 1) * d + k] = cur[j * d + k] - step;
      }
    }
    cur = std::move(next);
  }
  return GridVector(coeffs.depth(), coeffs.dim(), std::move(cur));
}

GridVector martingale_transform(const GridVector& f, const SignPattern& sigma) {
  require(sigma.depth() == f.depth(), ErrorCode::kInvalidArgument,
          "sign pattern depth does not match the function");
  HaarCoefficients c = analyze(f);
  for (double& m : c.mean()) m = 0.0;
  for (std::size_t node = 0; node < c.intervals(); ++node)
    if (sigma[node] < 0)
      for (double& v : c.at(node)) v = -v;
  return synthesize(c);
}

GridScalar square_function_squared(const HaarCoefficients& coeffs) {
  std::vector<double> cur{0.0};
  for (int level = 0; level < coeffs.depth(); ++level) {
    const std::size_t width = std::size_t{1} << level;
    const double inv_measure = std::ldexp(1.0, level);
    std::vector<double> next(2 * width);
    for (std::size_t j = 0; j < width; ++j) {
      const auto c = coeffs.at(DyadicInterval{level, static_cast<std::int64_t>(j)});
      const double add = dot(c, c) * inv_measure;
      next[2 * j] = next[2 * j + 1] = cur[j] + add;
    }
    cur = std::move(next);
  }
  return GridScalar(coeffs.depth(), std::move(cur));
}

GridScalar square_function_squared(const GridVector& g) { return square_function_squared(analyze(g)); }

GridScalar square_function(const GridVector& g) {
  const GridScalar sq = square_function_squared(g);
  std::vector<double> root(sq.values().begin(), sq.values().end());
  for (double& v : root) v = std::sqrt(v);
  return GridScalar(sq.depth(), std::move(root));
}

double l2_norm_squared(const GridVector& f) {
  return dot(f.flat(), f.flat()) * std::ldexp(1.0, -f.depth());
}

double weighted_norm_squared(const MatrixWeight& weight, const GridVector& f) {
  check_same_grid(weight, f);
  double acc = 0.0;
  for (std::size_t leaf = 0; leaf < f.cells(); ++leaf) acc += weight.field()[leaf].quadratic_form(f.cell(leaf));
  return acc * std::ldexp(1.0, -f.depth());
}

SwNorm sw_norm_squared(const MatrixWeight& weight, const GridVector& f) {
  check_same_grid(weight, f);
  const HaarCoefficients c = analyze(f);
  SwNorm out;
  out.terms.resize(c.intervals());
  for (std::size_t node = 0; node < c.intervals(); ++node) {
    out.terms[node] = quadratic_form(weight.average_tree().at(node), c.at(node));
    out.total += out.terms[node];
  }
  return out;
}

double sw_sign_enumeration(const MatrixWeight& weight, const GridVector& f) {
  check_same_grid(weight, f);
  const std::size_t intervals = haar_count_at(f.depth());
  if (intervals > kEnumerationCap)
    fail(ErrorCode::kLimitExceeded, "sign enumeration needs " + std::to_string(intervals) +
                                        " intervals (cap " + std::to_string(kEnumerationCap) +
                                        "); use the Monte Carlo estimate");
  const std::uint64_t patterns = std::uint64_t{1} << intervals;
  double acc = 0.0;
  for (std::uint64_t bits = 0; bits < patterns; ++bits) {
    const GridVector t = martingale_transform(f, SignPattern::from_bits(f.depth(), bits));
    acc += weighted_norm_squared(weight, t);
  }
  return acc / static_cast<double>(patterns);
}

MonteCarloEstimate sw_monte_carlo(const MatrixWeight& weight, const GridVector& f, std::size_t n_samples,
                                  std::uint64_t seed) {
  check_same_grid(weight, f);
  require(n_samples >= 100, ErrorCode::kInvalidArgument, "Monte Carlo needs at least 100 samples");
  double shift = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const GridVector t = martingale_transform(f, SignPattern::random(f.depth(), seed, s));
    const double v = weighted_norm_squared(weight, t);
    if (s == 0) shift = v;
    s1 += v - shift;
    s2 += (v - shift) * (v - shift);
  }
  const double n = static_cast<double>(n_samples);
  MonteCarloEstimate out;
  out.mean = shift + s1 / n;
  const double var = std::max(0.0, (s2 - s1 * s1 / n) / (n - 1.0));
  out.std_error = std::sqrt(var / n);
  return out;
}

double s3w_average(const MatrixWeight& weight, const GridVector& g, const DyadicInterval& interval) {
  check_same_grid(weight, g);
  check_interval(interval, g.depth());
  const Matrix& root = weight.average_sqrt(interval);
  const std::size_t first = interval.first_leaf(g.depth());
  const std::size_t count = interval.leaf_count(g.depth());
  std::vector<double> y(static_cast<std::size_t>(g.dim()));
  double acc = 0.0;
  for (std::size_t leaf = first; leaf < first + count; ++leaf) {
    root.apply(g.cell(leaf), y);
    acc += norm2(y);
  }
  return acc / static_cast<double>(count);
}

double s3w_norm_squared(const MatrixWeight& weight, const GridVector& g,
                        std::span<const DyadicInterval> family) {
  double acc = 0.0;
  for (const DyadicInterval& interval : family) {
    const double a = s3w_average(weight, g, interval);
    acc += a * a * interval.measure();
  }
  return acc;
}

}  // namespace matw
