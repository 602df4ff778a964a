// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

#include "matw/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "matw/error.hpp"

namespace matw {

StoppingConfig StoppingConfig::defaults(int dim) {
  StoppingConfig c;
  c.c1 = 2.0 * std::sqrt(static_cast<double>(dim));
  c.c2 = 256.0;
  return c;
}

void StoppingConfig::validate() const {
  require(std::isfinite(c1) && c1 > 1.0, ErrorCode::kInvalidArgument, "C1 must exceed 1");
  require(std::isfinite(c2) && c2 > 1.0, ErrorCode::kInvalidArgument, "C2 must exceed 1");
  require(sparseness_target > 0.0 && sparseness_target <= 1.0, ErrorCode::kInvalidArgument,
          "sparseness target must lie in (0, 1]");
  require(max_generations >= 1, ErrorCode::kInvalidArgument, "max_generations must be positive");
  require(weak_type_budget > 0.0, ErrorCode::kInvalidArgument, "weak-type budget must be positive");
}

std::string_view to_string(Trigger trigger) {
  switch (trigger) {
    case Trigger::kRoot: return "root";
    case Trigger::kNorm: return "type1";
    case Trigger::kSum: return "type2";
    case Trigger::kBoth: return "both";
  }
  return "unknown";
}

std::vector<DyadicInterval> SparseFamily::intervals() const {
  std::vector<DyadicInterval> out;
  out.reserve(nodes.size());
  for (const FamilyNode& n : nodes) out.push_back(n.interval);
  return out;
}

namespace {

// Everything the stopping conditions need relative to one generation root.
class Generation {
 public:
  Generation(const DyadicInterval& root, const MatrixWeight& weight, const GridVector& f,
             const HaarCoefficients& coeffs, const StoppingConfig& config)
      : root_(root),
        weight_(weight),
        coeffs_(coeffs),
        config_(config),
        root_sqrt_(weight.average_sqrt(root)),
        root_inv_sqrt_(psd_power(weight.average(root), -0.5)),
        mean_norm_(s3w_average(weight, f, root)),
        threshold_(config.c2 * mean_norm_ * mean_norm_),
        scratch_(static_cast<std::size_t>(weight.dim())) {}

  const DyadicInterval& root() const { return root_; }
  const Matrix& root_inv_sqrt() const { return root_inv_sqrt_; }
  double threshold() const { return threshold_; }
  double mean_norm() const { return mean_norm_; }

  // ||<W>_{J'}^{1/2} (f,h_I)||^2 / |I|, zero at the leaf level.
  double chain_term(const DyadicInterval& interval) {
    if (interval.level >= coeffs_.depth()) return 0.0;
    root_sqrt_.apply(coeffs_.at(interval), scratch_);
    return dot(scratch_, scratch_) / interval.measure();
  }

  double norm_ratio(const DyadicInterval& interval) const {
    return operator_norm(weight_.average_sqrt(interval) * root_inv_sqrt_);
  }

  Trigger classify(const DyadicInterval& interval, double chain) const {
    const bool type1 = norm_ratio(interval) > config_.c1;
    const bool type2 = chain > threshold_;
    if (type1 && type2) return Trigger::kBoth;
    if (type1) return Trigger::kNorm;
    if (type2) return Trigger::kSum;
    return Trigger::kRoot;  // not stopping
  }

  std::vector<StoppingChild> children() {
    std::vector<StoppingChild> out;
    const int depth = coeffs_.depth();
    if (root_.level >= depth) return out;
    struct Pending {
      DyadicInterval interval;
      double parent_chain;
    };
    const double root_chain = chain_term(root_);
    std::vector<Pending> stack{{root_.right_child(), root_chain}, {root_.left_child(), root_chain}};
    while (!stack.empty()) {
      const Pending p = stack.back();
      stack.pop_back();
      const double chain = p.parent_chain + chain_term(p.interval);
      const Trigger t = classify(p.interval, chain);
      if (t != Trigger::kRoot) {
        out.push_back({p.interval, t});
      } else if (p.interval.level < depth) {
        stack.push_back({p.interval.right_child(), chain});
        stack.push_back({p.interval.left_child(), chain});
      }
    }
    return out;
  }

 private:
  DyadicInterval root_;
  const MatrixWeight& weight_;
  const HaarCoefficients& coeffs_;
  const StoppingConfig& config_;
  Matrix root_sqrt_;
  Matrix root_inv_sqrt_;
  double mean_norm_;
  double threshold_;
  std::vector<double> scratch_;
};

void check_instance(const MatrixWeight& weight, const GridVector& f) {
  require(weight.depth() == f.depth() && weight.dim() == f.dim(), ErrorCode::kDimensionMismatch,
          "weight and function grids differ");
}

bool leq(double a, double b) { return a <= b + 1e-9 * std::max(std::abs(a), std::abs(b)); }

}  // namespace

std::vector<StoppingChild> stopping_children(const DyadicInterval& root, const MatrixWeight& weight,
                                             const GridVector& f, const StoppingConfig& config) {
  check_instance(weight, f);
  config.validate();
  check_interval(root, f.depth());
  const HaarCoefficients coeffs = analyze(f);
  return Generation(root, weight, f, coeffs, config).children();
}

SparseFamily build_sparse_family(const MatrixWeight& weight, const GridVector& f, const StoppingConfig& config) {
  check_instance(weight, f);
  config.validate();
  const HaarCoefficients coeffs = analyze(f);

  SparseFamily family;
  family.config = config;
  family.nodes.push_back(FamilyNode{DyadicInterval::root(), -1, 0, Trigger::kRoot, {}, 1.0, 0, 0, 0});

  for (std::size_t cursor = 0; cursor < family.nodes.size(); ++cursor) {
    const DyadicInterval interval = family.nodes[cursor].interval;
    const int generation = family.nodes[cursor].generation;
    if (generation > config.max_generations)
      fail(ErrorCode::kInternal, "stopping construction exceeded max_generations");
    Generation gen(interval, weight, f, coeffs, config);
    family.nodes[cursor].s3w_average = gen.mean_norm();
    const auto kids = gen.children();
    double covered = 0.0;
    double type1 = 0.0;
    double type2 = 0.0;
    for (const StoppingChild& kid : kids) {
      if (!(kid.interval.level > interval.level && interval.contains(kid.interval)))
        fail(ErrorCode::kInternal, "stopping child not strictly inside its root");
      const double m = kid.interval.measure();
      covered += m;
      if (is_type1(kid.trigger)) type1 += m;
      if (is_type2(kid.trigger)) type2 += m;
      family.nodes[cursor].children.push_back(static_cast<int>(family.nodes.size()));
      family.nodes.push_back(FamilyNode{kid.interval, static_cast<int>(cursor), generation + 1, kid.trigger,
                                        {}, 1.0, 0, 0, 0});
    }
    FamilyNode& node = family.nodes[cursor];
    const double measure = interval.measure();
    node.e_ratio = 1.0 - covered / measure;
    node.type1_fraction = type1 / measure;
    node.type2_fraction = type2 / measure;
    family.generations = std::max(family.generations, generation + 1);
  }
  return family;
}

SparsenessReport verify_sparseness(const SparseFamily& family, double target) {
  SparsenessReport r;
  for (std::size_t i = 0; i < family.nodes.size(); ++i) {
    r.min_ratio = std::min(r.min_ratio, family.nodes[i].e_ratio);
    if (family.nodes[i].e_ratio < target) r.offending.push_back(static_cast<int>(i));
  }
  r.ok = r.offending.empty();
  return r;
}

DominationReport verify_domination(const MatrixWeight& weight, const GridVector& f, const SparseFamily& family) {
  check_instance(weight, f);
  DominationReport r;
  const SwNorm sw = sw_norm_squared(weight, f);
  r.lhs = sw.total;
  const double c = family.config.c1 * family.config.c1 * family.config.c2;
  const int depth = f.depth();

  for (const FamilyNode& node : family.nodes) {
    const double avg = s3w_average(weight, f, node.interval);
    const double term = avg * avg * node.interval.measure();
    r.s3w += term;

    // Haar intervals inside this node and not inside any of its children.
    std::vector<std::size_t> stops;
    for (int child : node.children) stops.push_back(family.nodes[static_cast<std::size_t>(child)].interval.node());
    std::sort(stops.begin(), stops.end());
    double owned = 0.0;
    std::vector<DyadicInterval> stack{node.interval};
    while (!stack.empty()) {
      const DyadicInterval i = stack.back();
      stack.pop_back();
      if (i.level >= depth) continue;
      if (std::binary_search(stops.begin(), stops.end(), i.node())) continue;
      owned += sw.terms[i.node()];
      stack.push_back(i.right_child());
      stack.push_back(i.left_child());
    }
    if (!leq(owned, c * term)) ++r.local_violations;
  }
  r.rhs = c * r.s3w;
  r.slack = r.rhs - r.lhs;
  r.ok = r.lhs <= r.rhs * (1.0 + 1e-9) && r.local_violations == 0;
  return r;
}

TraceReport verify_type1_trace_bound(const SparseFamily& family, const MatrixWeight& weight) {
  TraceReport r;
  const double c1sq = family.config.c1 * family.config.c1;
  const double d = weight.dim();
  r.fraction_bound = d / c1sq;
  for (std::size_t idx = 0; idx < family.nodes.size(); ++idx) {
    const FamilyNode& node = family.nodes[idx];
    bool any = false;
    for (int c : node.children) any = any || is_type1(family.nodes[static_cast<std::size_t>(c)].trigger);
    if (!any) continue;

    const Matrix rinv = psd_power(weight.average(node.interval), -0.5);
    TraceStep s;
    s.node = static_cast<int>(idx);
    bool strict = true;
    for (int c : node.children) {
      const FamilyNode& kid = family.nodes[static_cast<std::size_t>(c)];
      if (!is_type1(kid.trigger)) continue;
      const double m = kid.interval.measure();
      const Matrix prod = weight.average_sqrt(kid.interval) * rinv;
      const double op = operator_norm(prod);
      const double hs = hs_norm(prod);
      s.type1_mass += m;
      s.norm_sum += m * op * op;
      s.hs_sum += m * hs * hs;
      s.trace_sum += m * trace_of(rinv * weight.average(kid.interval) * rinv);
      strict = strict && op > family.config.c1;
    }
    const double measure = node.interval.measure();
    s.trace_total = measure * trace_of(rinv * weight.average(node.interval) * rinv);
    s.bound = d * measure / c1sq;
    s.ok = strict && leq(c1sq * s.type1_mass, s.norm_sum) && leq(s.norm_sum, s.hs_sum) &&
           std::abs(s.hs_sum - s.trace_sum) <= 1e-10 * std::max(1.0, s.trace_sum) &&
           leq(s.trace_sum, s.trace_total) && std::abs(s.trace_total - d * measure) <= 1e-9 * d * measure &&
           s.type1_mass <= s.bound + 1e-12 * measure;
    r.max_fraction = std::max(r.max_fraction, s.type1_mass / measure);
    r.ok = r.ok && s.ok;
    r.steps.push_back(s);
  }
  return r;
}

WeakTypeReport verify_type2_weak_bound(const SparseFamily& family, const MatrixWeight& weight,
                                       const GridVector& f) {
  check_instance(weight, f);
  WeakTypeReport r;
  const HaarCoefficients coeffs = analyze(f);
  const int depth = f.depth();
  const double root_c2 = std::sqrt(family.config.c2);
  for (std::size_t idx = 0; idx < family.nodes.size(); ++idx) {
    const FamilyNode& node = family.nodes[idx];
    bool any = false;
    for (int c : node.children) any = any || is_type2(family.nodes[static_cast<std::size_t>(c)].trigger);
    if (!any) continue;

    // S^2 of g = <W>_{J'}^{1/2} f using only Haar intervals inside J'.
    const Matrix& root_sqrt = weight.average_sqrt(node.interval);
    const std::size_t first = node.interval.first_leaf(depth);
    const std::size_t count = node.interval.leaf_count(depth);
    std::vector<double> sq(count, 0.0);
    std::vector<double> y(static_cast<std::size_t>(f.dim()));
    for (int level = node.interval.level; level < depth; ++level) {
      const int shift = depth - level;
      for (std::size_t leaf = 0; leaf < count; ++leaf) {
        const DyadicInterval i{level, static_cast<std::int64_t>((first + leaf) >> shift)};
        root_sqrt.apply(coeffs.at(i), y);
        sq[leaf] += dot(y, y) / i.measure();
      }
    }
    const double mean_norm = s3w_average(weight, f, node.interval);
    const double threshold = family.config.c2 * mean_norm * mean_norm;

    WeakTypeStep s;
    s.node = static_cast<int>(idx);
    std::size_t above = 0;
    for (double v : sq) above += v > threshold ? 1 : 0;
    s.level_set_fraction = static_cast<double>(above) / static_cast<double>(count);
    for (int c : node.children) {
      const FamilyNode& kid = family.nodes[static_cast<std::size_t>(c)];
      if (!is_type2(kid.trigger)) continue;
      s.type2_fraction += kid.interval.measure() / node.interval.measure();
      const std::size_t kf = kid.interval.first_leaf(depth) - first;
      for (std::size_t leaf = kf; leaf < kf + kid.interval.leaf_count(depth); ++leaf)
        s.contained = s.contained && sq[leaf] > threshold;
    }
    s.quotient = s.type2_fraction * root_c2;
    r.max_quotient = std::max(r.max_quotient, s.quotient);
    r.max_level_set_quotient = std::max(r.max_level_set_quotient, s.level_set_fraction * root_c2);
    r.ok = r.ok && s.contained && s.quotient <= family.config.weak_type_budget;
    r.steps.push_back(s);
  }
  return r;
}

MaximalityReport verify_maximality(const SparseFamily& family, const MatrixWeight& weight, const GridVector& f) {
  check_instance(weight, f);
  MaximalityReport r;
  const HaarCoefficients coeffs = analyze(f);
  for (const FamilyNode& node : family.nodes) {
    if (node.children.empty()) continue;
    Generation gen(node.interval, weight, f, coeffs, family.config);
    for (int c : node.children) {
      const DyadicInterval kid = family.nodes[static_cast<std::size_t>(c)].interval;
      for (DyadicInterval mid = kid.parent(); mid.level > node.interval.level; mid = mid.parent()) {
        // Chain sum recomputed from scratch along mid, ..., J'.
        double chain = 0.0;
        for (DyadicInterval up = mid; up.level >= node.interval.level; up = up.parent()) {
          chain += gen.chain_term(up);
          if (up.level == 0) break;
        }
        ++r.checked;
        if (gen.norm_ratio(mid) > family.config.c1 || chain > gen.threshold()) ++r.violations;
      }
    }
  }
  r.ok = r.violations == 0;
  return r;
}

SparseCertificate certify(const MatrixWeight& weight, const GridVector& f, const StoppingConfig& config) {
  SparseCertificate c;
  c.family = build_sparse_family(weight, f, config);
  c.sparseness = verify_sparseness(c.family, config.sparseness_target);
  c.domination = verify_domination(weight, f, c.family);
  c.trace = verify_type1_trace_bound(c.family, weight);
  c.weak_type = verify_type2_weak_bound(c.family, weight, f);
  c.maximality = verify_maximality(c.family, weight, f);
  c.all_ok = c.sparseness.ok && c.domination.ok && c.trace.ok && c.weak_type.ok && c.maximality.ok;
  return c;
}

}  // namespace matw
