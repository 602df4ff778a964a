// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

// Stopping-time construction of a sparse family dominating the weighted
// square function, plus per-instance checks of every inequality the
// construction relies on.
//
// For a generation root J' with g = <W>_{J'}^{1/2} f, a dyadic L strictly
// inside J' stops when
//   (type 1)  || <W>_L^{1/2} <W>_{J'}^{-1/2} || > C1, or
//   (type 2)  sum_{L <= I <= J'} ||<W>_{J'}^{1/2} (f,h_I)||^2 / |I| > C2 <||g||>_{J'}^2,
// and no dyadic L' with L < L' < J' stops. Every stopping interval becomes
// the root of the next generation.

#ifndef MATW_SPARSE_HPP
#define MATW_SPARSE_HPP

#include <string_view>
#include <vector>

#include "matw/dyadic.hpp"
#include "matw/square_functions.hpp"
#include "matw/weights.hpp"

namespace matw {

struct StoppingConfig {
  double c1 = 2.0;
  double c2 = 256.0;
  double sparseness_target = 0.5;
  int max_generations = kMaxDepth + 2;
  // Assumed bound for the weak (1,1) norm of the dyadic square function.
  double weak_type_budget = 4.0;

  // C1 = 2 sqrt(d), C2 = 256.
  static StoppingConfig defaults(int dim);
  void validate() const;
};

enum class Trigger { kRoot, kNorm, kSum, kBoth };

std::string_view to_string(Trigger trigger);
inline bool is_type1(Trigger t) { return t == Trigger::kNorm || t == Trigger::kBoth; }
inline bool is_type2(Trigger t) { return t == Trigger::kSum || t == Trigger::kBoth; }

struct StoppingChild {
  DyadicInterval interval;
  Trigger trigger = Trigger::kNorm;
};

// First stopping intervals below `root`, left to right. Empty for a leaf root.
std::vector<StoppingChild> stopping_children(const DyadicInterval& root, const MatrixWeight& weight,
                                             const GridVector& f, const StoppingConfig& config);

struct FamilyNode {
  DyadicInterval interval;
  int parent = -1;
  int generation = 0;
  Trigger trigger = Trigger::kRoot;
  std::vector<int> children;
  double e_ratio = 1.0;       // |E(L)| / |L|, E(L) = L minus its direct children
  double type1_fraction = 0;  // measure of type-1 children / |L|
  double type2_fraction = 0;  // measure of type-2 children / |L|
  double s3w_average = 0;     // < || <W>_L^{1/2} f || >_L
};

struct SparseFamily {
  StoppingConfig config;
  std::vector<FamilyNode> nodes;  // breadth-first by generation; nodes[0] is J
  int generations = 0;

  std::vector<DyadicInterval> intervals() const;
};

SparseFamily build_sparse_family(const MatrixWeight& weight, const GridVector& f, const StoppingConfig& config);

struct SparsenessReport {
  bool ok = true;
  double min_ratio = 1.0;
  std::vector<int> offending;  // node indices below target
};

SparsenessReport verify_sparseness(const SparseFamily& family, double target);

struct DominationReport {
  bool ok = true;
  double lhs = 0.0;    // ||S_W f||^2
  double s3w = 0.0;    // sum_L <||<W>_L^{1/2} f||>_L^2 |L|
  double rhs = 0.0;    // C1^2 C2 s3w
  double slack = 0.0;  // rhs - lhs
  // Per-generation estimate: the Haar terms owned by a node are bounded by
  // C1^2 C2 <||<W>_{J'}^{1/2} f||>^2 |J'|; count of nodes where it fails.
  int local_violations = 0;
};

DominationReport verify_domination(const MatrixWeight& weight, const GridVector& f, const SparseFamily& family);

struct TraceStep {
  int node = 0;
  double type1_mass = 0.0;  // sum |L| over type-1 children
  double norm_sum = 0.0;    // sum |L| ||<W>_L^{1/2} R||^2, R = <W>_{J'}^{-1/2}
  double hs_sum = 0.0;      // sum |L| ||<W>_L^{1/2} R||_{S2}^2
  double trace_sum = 0.0;   // sum |L| tr(R <W>_L R)
  double trace_total = 0.0; // |J'| tr(R <W>_{J'} R)
  double bound = 0.0;       // d |J'| / C1^2
  bool ok = true;
};

struct TraceReport {
  bool ok = true;
  double max_fraction = 0.0;  // max over nodes of type1_mass / |J'|
  double fraction_bound = 0.0;  // d / C1^2
  std::vector<TraceStep> steps;
};

TraceReport verify_type1_trace_bound(const SparseFamily& family, const MatrixWeight& weight);

struct WeakTypeStep {
  int node = 0;
  double type2_fraction = 0.0;     // sum |L| / |J'| over type-2 children
  double level_set_fraction = 0.0; // |{S^2 g > C2 <||g||>^2}| / |J'|
  double quotient = 0.0;           // type2_fraction * sqrt(C2)
  bool contained = true;
};

struct WeakTypeReport {
  bool ok = true;
  double max_quotient = 0.0;
  double max_level_set_quotient = 0.0;
  std::vector<WeakTypeStep> steps;
};

WeakTypeReport verify_type2_weak_bound(const SparseFamily& family, const MatrixWeight& weight,
                                       const GridVector& f);

struct MaximalityReport {
  bool ok = true;
  long checked = 0;
  long violations = 0;
};

// Every strict dyadic ancestor of a stopping child, strictly inside the
// child's generation root, satisfies both conditions with "<=".
MaximalityReport verify_maximality(const SparseFamily& family, const MatrixWeight& weight, const GridVector& f);

struct SparseCertificate {
  SparseFamily family;
  SparsenessReport sparseness;
  DominationReport domination;
  TraceReport trace;
  WeakTypeReport weak_type;
  MaximalityReport maximality;
  bool all_ok = false;
};

SparseCertificate certify(const MatrixWeight& weight, const GridVector& f, const StoppingConfig& config);

}  // namespace matw

#endif  // MATW_SPARSE_HPP
