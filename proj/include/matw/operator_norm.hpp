// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

// ||S_W||^2 from L2(W) to L2 as the top generalized eigenvalue of the pair
// (Q, P), Q(f) = sum_I <<W>_I (f,h_I), (f,h_I)>, P(f) = int <W f, f>,
// estimated matrix-free by power iteration on P^{-1} A.

#ifndef MATW_OPERATOR_NORM_HPP
#define MATW_OPERATOR_NORM_HPP

#include <cstdint>

#include "matw/dyadic.hpp"
#include "matw/weights.hpp"

namespace matw {

struct PowerIterationOptions {
  int max_iters = 20000;
  // Stop once ||P^{-1}A f - lambda f||_P <= rel_tol * lambda * ||f||_P.
  double rel_tol = 1e-9;
  std::uint64_t seed = 1;
};

struct OperatorNormEstimate {
  double value = 0.0;     // Q(witness) / P(witness), a certified lower bound
  double rayleigh = 0.0;  // last Rayleigh quotient of the iteration
  GridVector witness;     // P-normalized, mean zero
  int iters = 0;
  bool converged = false;
  double residual = 0.0;  // relative P-residual at exit
};

// A f = sum_I h_I <W>_I (f,h_I), so that <A f, f>_{L2} = Q(f).
GridVector apply_square_form(const MatrixWeight& weight, const GridVector& f);
// Leafwise W(x)^{-1} g(x).
GridVector apply_weight_inverse(const MatrixWeight& weight, const GridVector& g);

// Q(f) / P(f) through the closed-form sum (independent of the iteration).
double rayleigh_quotient(const MatrixWeight& weight, const GridVector& f);

// Deterministic mean-zero start vector.
GridVector start_vector(int depth, int dim, std::uint64_t seed);

OperatorNormEstimate estimate_operator_norm(const MatrixWeight& weight, const PowerIterationOptions& opts = {});

}  // namespace matw

#endif  // MATW_OPERATOR_NORM_HPP
