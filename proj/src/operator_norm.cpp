// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

#include "matw/operator_norm.hpp"

#include <cmath>

#include "matw/error.hpp"
#include "matw/random.hpp"
#include "matw/square_functions.hpp"

namespace matw {

GridVector apply_square_form(const MatrixWeight& weight, const GridVector& f) {
  require(weight.depth() == f.depth() && weight.dim() == f.dim(), ErrorCode::kDimensionMismatch,
          "weight and function grids differ");
  HaarCoefficients c = analyze(f);
  for (double& m : c.mean()) m = 0.0;
  std::vector<double> y(static_cast<std::size_t>(f.dim()));
  for (std::size_t node = 0; node < c.intervals(); ++node) {
    auto coeff = c.at(node);
    const auto avg = weight.average_tree().at(node);
    const std::size_t d = coeff.size();
    for (std::size_t r = 0; r < d; ++r) {
      double acc = 0.0;
      for (std::size_t k = 0; k < d; ++k) acc += avg[r * d + k] * coeff[k];
      y[r] = acc;
    }
    std::copy(y.begin(), y.end(), coeff.begin());
  }
  return synthesize(c);
}

GridVector apply_weight_inverse(const MatrixWeight& weight, const GridVector& g) {
  GridVector out = GridVector::zeros(g.depth(), g.dim());
  for (std::size_t leaf = 0; leaf < g.cells(); ++leaf) weight.inverse_field()[leaf].apply(g.cell(leaf), out.cell(leaf));
  return out;
}

double rayleigh_quotient(const MatrixWeight& weight, const GridVector& f) {
  const double p = weighted_norm_squared(weight, f);
  require(p > 0.0, ErrorCode::kInvalidArgument, "Rayleigh quotient of the zero function");
  return sw_norm_squared(weight, f).total / p;
}

GridVector start_vector(int depth, int dim, std::uint64_t seed) {
  GridVector f = GridVector::zeros(depth, dim);
  auto flat = f.flat();
  for (std::size_t k = 0; k < flat.size(); ++k) flat[k] = counter_uniform(seed, 0x57A27ull, k, -1.0, 1.0);
  const std::size_t d = static_cast<std::size_t>(dim);
  for (std::size_t c = 0; c < d; ++c) {
    double mean = 0.0;
    for (std::size_t leaf = 0; leaf < f.cells(); ++leaf) mean += flat[leaf * d + c];
    mean /= static_cast<double>(f.cells());
    for (std::size_t leaf = 0; leaf < f.cells(); ++leaf) flat[leaf * d + c] -= mean;
  }
  return f;
}

namespace {

void scale(GridVector& f, double s) {
  for (double& v : f.flat()) v *= s;
}

}  // namespace

OperatorNormEstimate estimate_operator_norm(const MatrixWeight& weight, const PowerIterationOptions& opts) {
  require(opts.max_iters >= 1, ErrorCode::kInvalidArgument, "max_iters must be positive");
  require(opts.rel_tol > 0.0 && opts.rel_tol <= 1e-3, ErrorCode::kInvalidArgument,
          "rel_tol must lie in (0, 1e-3]");
  OperatorNormEstimate out;
  GridVector f = start_vector(weight.depth(), weight.dim(), opts.seed);
  if (weight.depth() == 0) {
    // No Haar intervals: S_W vanishes.
    f = GridVector(0, weight.dim(), std::vector<double>(static_cast<std::size_t>(weight.dim()), 1.0));
    scale(f, 1.0 / std::sqrt(weighted_norm_squared(weight, f)));
    out.witness = f;
    out.converged = true;
    return out;
  }
  scale(f, 1.0 / std::sqrt(weighted_norm_squared(weight, f)));

  for (int it = 1; it <= opts.max_iters; ++it) {
    const GridVector af = apply_square_form(weight, f);
    GridVector g = apply_weight_inverse(weight, af);
    // f is P-normalized, so lambda = <A f, f> / P(f) = <A f, f> * 2^N / 2^N.
    const double lambda = dot(af.flat(), f.flat()) * std::ldexp(1.0, -f.depth());
    out.rayleigh = lambda;
    out.iters = it;
    const double g_norm = std::sqrt(weighted_norm_squared(weight, g));
    if (lambda <= 0.0 || g_norm == 0.0) {
      out.converged = true;
      out.residual = 0.0;
      break;
    }
    GridVector r = g;
    {
      auto rf = r.flat();
      const auto ff = f.flat();
      for (std::size_t k = 0; k < rf.size(); ++k) rf[k] -= lambda * ff[k];
    }
    out.residual = std::sqrt(weighted_norm_squared(weight, r)) / lambda;
    scale(g, 1.0 / g_norm);
    f = std::move(g);
    if (out.residual <= opts.rel_tol) {
      out.converged = true;
      break;
    }
  }
  out.value = rayleigh_quotient(weight, f);
  out.witness = std::move(f);
  return out;
}

}  // namespace matw
