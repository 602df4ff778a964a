// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

// Haar analysis of vector functions, martingale transforms, the classical
// square function, and three routes to the weighted square function norm
//   ||S_W f||^2 = sum_I < <W>_I (f,h_I), (f,h_I) >
// (closed form, exhaustive sign enumeration, Monte Carlo over signs).
//
// Haar functions are L2-normalized, h_I = |I|^{-1/2} (chi_left - chi_right),
// and exist for levels 0..N-1.

#ifndef MATW_SQUARE_FUNCTIONS_HPP
#define MATW_SQUARE_FUNCTIONS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "matw/dyadic.hpp"
#include "matw/weights.hpp"

namespace matw {

inline std::size_t haar_count_at(int depth) { return leaf_count_at(depth) - 1; }

class HaarCoefficients {
 public:
  HaarCoefficients(int depth, int dim);

  int depth() const { return depth_; }
  int dim() const { return dim_; }
  std::size_t intervals() const { return haar_count_at(depth_); }

  std::span<const double> mean() const { return mean_; }
  std::span<double> mean() { return mean_; }
  // (f, h_I) for I at level < depth.
  std::span<const double> at(std::size_t node) const {
    return {coeffs_.data() + node * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  std::span<double> at(std::size_t node) {
    return {coeffs_.data() + node * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  std::span<const double> at(const DyadicInterval& interval) const { return at(interval.node()); }

 private:
  int depth_;
  int dim_;
  std::vector<double> mean_;
  std::vector<double> coeffs_;
};

// sigma_I = +-1 on every Haar interval, breadth-first order.
class SignPattern {
 public:
  SignPattern(int depth, std::vector<std::int8_t> signs);
  static SignPattern constant(int depth, int sign);
  // Bit k of `bits` gives the sign of Haar interval k (1 -> +1).
  static SignPattern from_bits(int depth, std::uint64_t bits);
  // Counter-based random signs; pattern `sample` of stream `seed`.
  static SignPattern random(int depth, std::uint64_t seed, std::uint64_t sample);

  int depth() const { return depth_; }
  int operator[](std::size_t node) const { return signs_[node]; }

 private:
  int depth_;
  std::vector<std::int8_t> signs_;
};

HaarCoefficients analyze(const GridVector& f);
// f = mean + sum_I (f,h_I) h_I
GridVector synthesize(const HaarCoefficients& coeffs);

// T_sigma f = sum_I sigma_I (f,h_I) h_I; the mean is dropped.
GridVector martingale_transform(const GridVector& f, const SignPattern& sigma);

// Pointwise S^2 g(x) = sum_{I containing x} ||(g,h_I)||^2 / |I|.
GridScalar square_function_squared(const GridVector& g);
GridScalar square_function_squared(const HaarCoefficients& coeffs);
// Pointwise S g, the root of the above.
GridScalar square_function(const GridVector& g);

double l2_norm_squared(const GridVector& f);
// int <W f, f>
double weighted_norm_squared(const MatrixWeight& weight, const GridVector& f);

struct SwNorm {
  double total = 0.0;
  // < <W>_I c_I, c_I > per Haar interval, breadth-first.
  std::vector<double> terms;
};

SwNorm sw_norm_squared(const MatrixWeight& weight, const GridVector& f);

// Maximum number of Haar intervals sw_sign_enumeration will enumerate.
inline constexpr std::size_t kEnumerationCap = 22;

// Average over all 2^(#intervals) sign patterns of int ||W^{1/2} T_sigma f||^2.
// Throws kLimitExceeded past kEnumerationCap (use sw_monte_carlo instead).
double sw_sign_enumeration(const MatrixWeight& weight, const GridVector& f);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

MonteCarloEstimate sw_monte_carlo(const MatrixWeight& weight, const GridVector& f, std::size_t n_samples,
                                  std::uint64_t seed);

// sum_{L in family} < || <W>_L^{1/2} g || >_L^2 |L|
double s3w_norm_squared(const MatrixWeight& weight, const GridVector& g,
                        std::span<const DyadicInterval> family);
// Single term <|| <W>_L^{1/2} g ||>_L (without the square or the measure).
double s3w_average(const MatrixWeight& weight, const GridVector& g, const DyadicInterval& interval);

}  // namespace matw

#endif  // MATW_SQUARE_FUNCTIONS_HPP
