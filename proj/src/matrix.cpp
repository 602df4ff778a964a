// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

#include "matw/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "matw/error.hpp"

namespace matw {

Matrix::Matrix(int dim, std::vector<double> row_major) : dim_(dim), a_(std::move(row_major)) {
  require(dim >= 1, ErrorCode::kInvalidArgument, "matrix dimension must be positive");
  require(a_.size() == static_cast<std::size_t>(dim) * dim, ErrorCode::kDimensionMismatch,
          "matrix entry count does not match dimension");
}

Matrix Matrix::identity(int dim) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(static_cast<int>(diag.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  require(dim_ == rhs.dim_, ErrorCode::kDimensionMismatch, "matrix product dimension mismatch");
  Matrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int k = 0; k < dim_; ++k) {
      const double a = (*this)(r, k);
      if (a == 0.0) continue;
      for (int c = 0; c < dim_; ++c) out(r, c) += a * rhs(k, c);
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  require(dim_ == rhs.dim_, ErrorCode::kDimensionMismatch, "matrix sum dimension mismatch");
  Matrix out(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += rhs.a_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  require(dim_ == rhs.dim_, ErrorCode::kDimensionMismatch, "matrix difference dimension mismatch");
  Matrix out(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] -= rhs.a_[i];
  return out;
}

Matrix Matrix::operator*(double s) const {
  Matrix out(*this);
  for (double& v : out.a_) v *= s;
  return out;
}

void Matrix::apply(std::span<const double> x, std::span<double> y) const {
  for (int r = 0; r < dim_; ++r) {
    double acc = 0.0;
    for (int c = 0; c < dim_; ++c) acc += (*this)(r, c) * x[static_cast<std::size_t>(c)];
    y[static_cast<std::size_t>(r)] = acc;
  }
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
  std::vector<double> y(static_cast<std::size_t>(dim_));
  apply(x, y);
  return y;
}

double Matrix::quadratic_form(std::span<const double> x) const {
  double acc = 0.0;
  for (int r = 0; r < dim_; ++r) {
    double row = 0.0;
    for (int c = 0; c < dim_; ++c) row += (*this)(r, c) * x[static_cast<std::size_t>(c)];
    acc += row * x[static_cast<std::size_t>(r)];
  }
  return acc;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool Matrix::is_symmetric(double rel_tol) const {
  const double tol = rel_tol * max_abs();
  for (int r = 0; r < dim_; ++r)
    for (int c = r + 1; c < dim_; ++c)
      if (std::abs((*this)(r, c) - (*this)(c, r)) > tol) return false;
  return true;
}

bool Matrix::is_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

SymEigen sym_eigen(const Matrix& m) {
  require(m.is_finite(), ErrorCode::kInvalidArgument, "matrix has non-finite entries");
  require(m.is_symmetric(), ErrorCode::kInvalidArgument, "sym_eigen: matrix is not symmetric");
  const int d = m.dim();
  Matrix a = m;
  // Symmetrize exactly so rotations see a symmetric array.
  for (int r = 0; r < d; ++r)
    for (int c = r + 1; c < d; ++c) a(r, c) = a(c, r) = 0.5 * (a(r, c) + a(c, r));
  Matrix v = Matrix::identity(d);

  const double scale = a.max_abs();
  for (int sweep = 0; sweep < 100 && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) off += a(p, q) * a(p, q);
    if (off <= 1e-34 * scale * scale) break;

    for (int p = 0; p < d; ++p) {
      for (int q = p + 1; q < d; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < d; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < d; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < d; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

  SymEigen out{std::vector<double>(static_cast<std::size_t>(d)), Matrix(d)};
  for (int k = 0; k < d; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    out.values[static_cast<std::size_t>(k)] = a(src, src);
    for (int r = 0; r < d; ++r) out.vectors(r, k) = v(r, src);
  }
  return out;
}

Matrix psd_power(const Matrix& m, double p, double eps_pd) {
  const SymEigen eig = sym_eigen(m);
  const double top = eig.values.front();
  const double bottom = eig.values.back();
  const double scale = std::max(std::abs(top), std::abs(bottom));
  if (bottom < -1e-10 * scale) fail(ErrorCode::kNotPsd, "psd_power: matrix is not PSD");
  if (p < 0.0 && (top <= 0.0 || bottom < eps_pd * top))
    fail(ErrorCode::kSingularWeight, "psd_power: singular weight (eigenvalue below eps_pd)");
  return spectral_map(eig, [p](double lambda) {
    if (lambda <= 0.0) return 0.0;
    if (p == 0.5) return std::sqrt(lambda);
    if (p == -0.5) return 1.0 / std::sqrt(lambda);
    if (p == -1.0) return 1.0 / lambda;
    return std::pow(lambda, p);
  });
}

Matrix sym_exp(const Matrix& s) {
  return spectral_map(sym_eigen(s), [](double lambda) { return std::exp(lambda); });
}

double operator_norm(const Matrix& m) {
  const SymEigen eig = sym_eigen(m.transpose() * m);
  return std::sqrt(std::max(eig.values.front(), 0.0));
}

double hs_norm(const Matrix& m) {
  double acc = 0.0;
  for (double v : m.data()) acc += v * v;
  return std::sqrt(acc);
}

double trace_of(const Matrix& m) {
  double acc = 0.0;
  for (int i = 0; i < m.dim(); ++i) acc += m(i, i);
  return acc;
}

std::vector<double> spd_solve(const Matrix& m, std::span<const double> b) {
  const int d = m.dim();
  Matrix l(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (!(s > 0.0)) fail(ErrorCode::kSingularWeight, "spd_solve: matrix is not positive definite");
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  std::vector<double> x(b.begin(), b.end());
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < i; ++k) x[static_cast<std::size_t>(i)] -= l(i, k) * x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(i)] /= l(i, i);
  }
  for (int i = d - 1; i >= 0; --i) {
    for (int k = i + 1; k < d; ++k) x[static_cast<std::size_t>(i)] -= l(k, i) * x[static_cast<std::size_t>(k)];
    x[static_cast<std::size_t>(i)] /= l(i, i);
  }
  return x;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace matw
