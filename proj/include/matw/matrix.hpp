// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

// Small dense square matrices (d <= 8 in practice) and the symmetric
// spectral calculus needed for weight averages: eigendecomposition,
// fractional powers of PSD matrices, operator / Hilbert-Schmidt norms.

#ifndef MATW_MATRIX_HPP
#define MATW_MATRIX_HPP

#include <span>
#include <vector>

namespace matw {

// Smallest admissible eigenvalue, relative to the largest, before a negative
// power is refused.
inline constexpr double kEpsPd = 1e-10;

// Row-major dense square matrix.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, 0.0) {}
  Matrix(int dim, std::vector<double> row_major);

  static Matrix identity(int dim);
  static Matrix diagonal(std::span<const double> diag);

  int dim() const { return dim_; }
  double& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
  double operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
  std::span<const double> data() const { return a_; }
  std::span<double> data() { return a_; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator*(double s) const;

  // y = M x
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;
  // <M x, x>
  double quadratic_form(std::span<const double> x) const;

  double max_abs() const;
  bool is_symmetric(double rel_tol = 1e-12) const;
  bool is_finite() const;

 private:
  int dim_ = 0;
  std::vector<double> a_;
};

struct SymEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k is the eigenvector for values[k]
};

// Cyclic Jacobi. Throws kInvalidArgument on non-symmetric input.
SymEigen sym_eigen(const Matrix& m);

// V f(Lambda) V^T for a scalar function f applied to the spectrum.
template <class F>
Matrix spectral_map(const SymEigen& eig, F&& f) {
  const int d = eig.vectors.dim();
  Matrix out(d);
  for (int k = 0; k < d; ++k) {
    const double fk = f(eig.values[static_cast<std::size_t>(k)]);
    for (int r = 0; r < d; ++r) {
      const double vr = eig.vectors(r, k) * fk;
      for (int c = 0; c < d; ++c) out(r, c) += vr * eig.vectors(c, k);
    }
  }
  return out;
}

// M^p for PSD M. Negative eigenvalues below -1e-10*|M| raise kNotPsd; for
// p < 0 an eigenvalue below eps_pd * lambda_max raises kSingularWeight.
Matrix psd_power(const Matrix& m, double p, double eps_pd = kEpsPd);

// exp(S) for symmetric S.
Matrix sym_exp(const Matrix& s);

// Largest singular value.
double operator_norm(const Matrix& m);
double hs_norm(const Matrix& m);
double trace_of(const Matrix& m);

// Solves M x = b for symmetric positive definite M (Cholesky).
std::vector<double> spd_solve(const Matrix& m, std::span<const double> b);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

}  // namespace matw

#endif  // MATW_MATRIX_HPP
