// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

#include "matw/weights.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "matw/error.hpp"
#include "matw/random.hpp"

namespace matw {

namespace {

constexpr std::array<std::pair<WeightKind, std::string_view>, 5> kKindNames{{
    {WeightKind::kIdentity, "identity"},
    {WeightKind::kScalarPower, "scalar_power"},
    {WeightKind::kBlockScalar, "block_scalar"},
    {WeightKind::kRotating, "rotating"},
    {WeightKind::kRandomLogPd, "random_log_pd"},
}};

}  // namespace

std::string_view to_string(WeightKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

WeightKind parse_weight_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  fail(ErrorCode::kInvalidArgument, "unknown weight kind '" + std::string(name) + "'");
}

MatrixWeight::MatrixWeight(GridMatrixField field, WeightMetadata meta)
    : field_(std::move(field)), meta_(std::move(meta)) {
  const int d = field_.dim();
  std::vector<SymEigen> eigs;
  eigs.reserve(field_.cells());
  double top = 0.0;
  for (const Matrix& m : field_.values()) {
    eigs.push_back(sym_eigen(m));
    top = std::max(top, eigs.back().values.front());
  }
  require(top > 0.0, ErrorCode::kSingularWeight, "weight vanishes identically");

  std::vector<Matrix> inv;
  inv.reserve(field_.cells());
  for (std::size_t leaf = 0; leaf < eigs.size(); ++leaf) {
    const double bottom = eigs[leaf].values.back();
    if (bottom < -1e-10 * top)
      fail(ErrorCode::kNotPsd, "weight cell " + std::to_string(leaf) + " is not positive semidefinite");
    if (bottom < meta_.eps_pd * top)
      fail(ErrorCode::kSingularWeight,
           "weight cell " + std::to_string(leaf) + " has eigenvalue below eps_pd * max eigenvalue");
    inv.push_back(spectral_map(eigs[leaf], [](double l) { return 1.0 / l; }));
  }
  inverse_ = GridMatrixField(field_.depth(), d, std::move(inv));
  averages_ = AverageTree(field_);
  inverse_averages_ = AverageTree(inverse_);

  const std::size_t nodes = node_count_at(field_.depth());
  average_sqrt_.reserve(nodes);
  for (std::size_t node = 0; node < nodes; ++node)
    average_sqrt_.push_back(psd_power(averages_.matrix_at(DyadicInterval::from_node(node)), 0.5));
}

MatrixWeight MatrixWeight::inverse() const {
  WeightMetadata meta = meta_;
  meta.kind = meta_.kind + "^-1";
  return MatrixWeight(inverse_, meta);
}

MatrixWeight MatrixWeight::scaled(double c) const {
  require(c > 0.0 && std::isfinite(c), ErrorCode::kInvalidArgument, "scale must be positive");
  std::vector<Matrix> cells;
  cells.reserve(field_.cells());
  for (const Matrix& m : field_.values()) cells.push_back(m * c);
  return MatrixWeight(GridMatrixField(depth(), dim(), std::move(cells)), meta_);
}

MatrixWeight make_scalar_weight(const GridScalar& w) {
  std::vector<Matrix> cells;
  cells.reserve(w.size());
  for (double v : w.values()) cells.push_back(Matrix(1, {v}));
  return MatrixWeight(GridMatrixField(w.depth(), 1, std::move(cells)));
}

double a2_characteristic(const MatrixWeight& weight) {
  double best = 0.0;
  const std::size_t nodes = node_count_at(weight.depth());
  for (std::size_t node = 0; node < nodes; ++node) {
    const DyadicInterval interval = DyadicInterval::from_node(node);
    const Matrix inv_sqrt = psd_power(weight.inverse_average(interval), 0.5);
    const double n = operator_norm(weight.average_sqrt(interval) * inv_sqrt);
    best = std::max(best, n * n);
  }
  return best;
}

double scalar_a2(const GridScalar& w) {
  std::vector<double> inv(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    require(w[i] > 0.0, ErrorCode::kInvalidArgument, "scalar weight must be positive");
    inv[i] = 1.0 / w[i];
  }
  const AverageTree a(w);
  const AverageTree b(GridScalar(w.depth(), std::move(inv)));
  double best = 0.0;
  for (std::size_t node = 0; node < node_count_at(w.depth()); ++node)
    best = std::max(best, a.at(node)[0] * b.at(node)[0]);
  return best;
}

GridScalar scalar_direction_weight(const MatrixWeight& weight, std::span<const double> e) {
  require(static_cast<int>(e.size()) == weight.dim(), ErrorCode::kDimensionMismatch,
          "direction has wrong dimension");
  const double len = norm2(e);
  require(len > 0.0, ErrorCode::kInvalidArgument, "direction must be nonzero");
  require(std::abs(len - 1.0) <= 1e-12, ErrorCode::kInvalidArgument, "direction must be a unit vector");
  std::vector<double> values(weight.field().cells());
  for (std::size_t leaf = 0; leaf < values.size(); ++leaf)
    values[leaf] = weight.field()[leaf].quadratic_form(e);
  return GridScalar(weight.depth(), std::move(values));
}

double fujii_wilson_constant(const GridScalar& w) {
  for (double v : w.values())
    require(v > 0.0, ErrorCode::kInvalidArgument, "Fujii-Wilson constant needs a positive weight");
  const int depth = w.depth();
  const AverageTree avg(w);
  // integral over I of M_I w, accumulated leaf by leaf
  std::vector<double> maximal_integral(node_count_at(depth), 0.0);
  std::vector<double> chain(static_cast<std::size_t>(depth) + 1);
  const double cell = std::ldexp(1.0, -depth);
  for (std::size_t leaf = 0; leaf < leaf_count_at(depth); ++leaf) {
    for (int k = 0; k <= depth; ++k) {
      const DyadicInterval at{k, static_cast<std::int64_t>(leaf >> (depth - k))};
      chain[static_cast<std::size_t>(k)] = avg.at(at)[0];
    }
    double running = 0.0;
    for (int k = depth; k >= 0; --k) {
      running = std::max(running, chain[static_cast<std::size_t>(k)]);
      const DyadicInterval at{k, static_cast<std::int64_t>(leaf >> (depth - k))};
      maximal_integral[at.node()] += running * cell;
    }
  }
  double best = 1.0;
  for (std::size_t node = 0; node < maximal_integral.size(); ++node) {
    const DyadicInterval interval = DyadicInterval::from_node(node);
    const double ratio = maximal_integral[node] / interval.measure() / avg.at(node)[0];
    best = std::max(best, ratio);
  }
  return best;
}

std::vector<std::vector<double>> ainfty_directions(const MatrixWeight& weight, int n_directions,
                                                   std::uint64_t seed) {
  const int d = weight.dim();
  require(n_directions >= 2 * d, ErrorCode::kInvalidArgument, "n_directions must be at least 2*dim");
  std::vector<std::vector<double>> dirs;
  for (int i = 0; i < d; ++i) {
    std::vector<double> e(static_cast<std::size_t>(d), 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    dirs.push_back(std::move(e));
  }
  if (d > 1) {
    const int max_level = std::min(weight.depth(), 4);
    for (std::size_t node = 0; node < node_count_at(max_level); ++node) {
      const SymEigen eig = sym_eigen(weight.average(DyadicInterval::from_node(node)));
      for (int k = 0; k < d; ++k) {
        std::vector<double> e(static_cast<std::size_t>(d));
        for (int r = 0; r < d; ++r) e[static_cast<std::size_t>(r)] = eig.vectors(r, k);
        const double len = norm2(e);
        for (double& v : e) v /= len;
        dirs.push_back(std::move(e));
      }
    }
  }
  const std::uint64_t skip = splitmix64(seed) % 1000003u;
  const int extra = n_directions - static_cast<int>(dirs.size());
  for (int k = 0; k < extra; ++k) {
    const std::uint64_t n = skip + static_cast<std::uint64_t>(k) + 1;
    std::vector<double> e(static_cast<std::size_t>(d));
    for (int c = 0; c < d; c += 2) {
      const double u1 = radical_inverse(n, kHaltonPrimes[c]);
      const double u2 = radical_inverse(n, kHaltonPrimes[c + 1]);
      const double r = std::sqrt(-2.0 * std::log(std::max(u1, 1e-300)));
      e[static_cast<std::size_t>(c)] = r * std::cos(2.0 * std::numbers::pi * u2);
      if (c + 1 < d) e[static_cast<std::size_t>(c + 1)] = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    const double len = norm2(e);
    if (len == 0.0) continue;
    for (double& v : e) v /= len;
    dirs.push_back(std::move(e));
  }
  return dirs;
}

AinftyEstimate ainfty_characteristic(const MatrixWeight& weight, int n_directions, std::uint64_t seed) {
  AinftyEstimate out;
  const auto dirs = ainfty_directions(weight, n_directions, seed);
  out.directions = static_cast<int>(dirs.size());
  out.best_direction = dirs.front();
  out.value = 0.0;
  for (const auto& e : dirs) {
    const double v = fujii_wilson_constant(scalar_direction_weight(weight, e));
    if (v > out.value) {
      out.value = v;
      out.best_direction = e;
    }
  }
  return out;
}

void validate(const WeightFamilySpec& spec) {
  require(spec.dim >= 1 && spec.dim <= 8, ErrorCode::kInvalidArgument, "dim must be in [1, 8]");
  require(spec.depth >= 0 && spec.depth <= kMaxDepth, ErrorCode::kInvalidArgument, "depth out of range");
  require(std::isfinite(spec.parameter) && spec.parameter >= 0.0, ErrorCode::kInvalidArgument,
          "parameter must be finite and nonnegative");
  switch (spec.kind) {
    case WeightKind::kScalarPower:
    case WeightKind::kBlockScalar:
      require(spec.parameter < 1.0, ErrorCode::kInvalidArgument, "power family parameter must lie in [0, 1)");
      break;
    case WeightKind::kRotating:
      require(spec.dim == 2, ErrorCode::kInvalidArgument, "rotating family requires dim 2");
      [[fallthrough]];
    case WeightKind::kRandomLogPd:
      require(spec.parameter <= 10.0, ErrorCode::kInvalidArgument, "parameter must lie in [0, 10]");
      break;
    case WeightKind::kIdentity:
      break;
  }
}

namespace {

// Index m of the lacunary block [2^-(m+1), 2^-m] holding the leaf; the first
// leaf [0, 2^-N] gets m = N.
int lacunary_block(std::size_t leaf, int depth) {
  if (leaf == 0) return depth;
  return depth - std::bit_width(leaf);
}

// Dyadic analogue of |x - x0|^t with the singularity at x0 = 0 (or x0 = 1
// when mirrored).
double power_profile(std::size_t leaf, int depth, double t, bool mirrored) {
  const std::size_t i = mirrored ? leaf_count_at(depth) - 1 - leaf : leaf;
  return std::exp2(-static_cast<double>(lacunary_block(i, depth)) * t);
}

}  // namespace

MatrixWeight generate_weight(const WeightFamilySpec& spec) {
  validate(spec);
  const int d = spec.dim;
  const int n = spec.depth;
  const std::size_t cells = leaf_count_at(n);
  std::vector<Matrix> values;
  values.reserve(cells);

  for (std::size_t leaf = 0; leaf < cells; ++leaf) {
    switch (spec.kind) {
      case WeightKind::kIdentity:
        values.push_back(Matrix::identity(d));
        break;
      case WeightKind::kScalarPower: {
        Matrix m = Matrix::identity(d);
        m(0, 0) = power_profile(leaf, n, spec.parameter, false);
        values.push_back(std::move(m));
        break;
      }
      case WeightKind::kBlockScalar: {
        Matrix m(d);
        for (int j = 0; j < d; ++j) {
          const double t = spec.parameter * static_cast<double>(d - j) / d;
          m(j, j) = power_profile(leaf, n, t, j % 2 == 1);
        }
        values.push_back(std::move(m));
        break;
      }
      case WeightKind::kRotating: {
        const double x = (static_cast<double>(leaf) + 0.5) / static_cast<double>(cells);
        const double theta = std::numbers::pi * spec.parameter * x;
        const double lambda = std::exp(spec.parameter * std::sin(2.0 * std::numbers::pi * x));
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        Matrix m(2);
        m(0, 0) = c * c * lambda + s * s / lambda;
        m(1, 1) = s * s * lambda + c * c / lambda;
        m(0, 1) = m(1, 0) = c * s * (lambda - 1.0 / lambda);
        values.push_back(std::move(m));
        break;
      }
      case WeightKind::kRandomLogPd: {
        Matrix s(d);
        std::uint64_t counter = 0;
        for (int r = 0; r < d; ++r)
          for (int c = r; c < d; ++c)
            s(r, c) = s(c, r) = counter_uniform(spec.seed, leaf, counter++, -spec.parameter, spec.parameter);
        values.push_back(sym_exp(s));
        break;
      }
    }
  }
  WeightMetadata meta;
  meta.kind = std::string(to_string(spec.kind));
  meta.parameter = spec.parameter;
  meta.seed = spec.seed;
  return MatrixWeight(GridMatrixField(n, d, std::move(values)), meta);
}

}  // namespace matw
