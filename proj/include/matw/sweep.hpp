// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

// Parameter sweeps over a weight family: characteristics, operator norm,
// sparse domination at the witness, and CSV emission.

#ifndef MATW_SWEEP_HPP
#define MATW_SWEEP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "matw/operator_norm.hpp"
#include "matw/weights.hpp"

namespace matw {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentConfig {
  WeightKind kind = WeightKind::kScalarPower;
  int dim = 2;
  int depth = 12;
  std::vector<double> parameters;
  std::vector<std::uint64_t> seeds{1};
  int max_iters = 20000;
  double rel_tol = 1e-8;
  int n_directions = 64;
  double c1 = 0.0;  // 0 selects the default 2 sqrt(d)
  double c2 = 0.0;  // 0 selects the default 256
  int threads = 0;  // 0 selects hardware concurrency
  std::string output;

  void validate() const;
};

struct SweepRecord {
  double t = 0.0;
  std::uint64_t seed = 0;
  double a2 = 0.0;
  double ainfty_inv = 0.0;   // sampled lower bound of [W^-1]_{A-infinity}
  int ainfty_directions = 0;
  double a2_inv = 0.0;       // [W^-1]_{A2}, the A2-based fallback bound
  double opnorm_sq_est = 0.0;
  double opnorm_sq_lower = 0.0;
  int iters = 0;
  bool converged = false;
  double domination_rhs = 0.0;  // C1^2 C2 S3W(witness) / P(witness)
  bool domination_ok = false;
  double min_e_ratio = 0.0;
  double ratio_mixed = 0.0;   // ||S_W|| / ([W]_{A2}^{1/2} [W^-1]_{A-infinity}^{1/2})
  double ratio_linear = 0.0;  // ||S_W|| / [W]_{A2}
  double ainfty_over_a2 = 0.0;
  bool monitor_flag = false;  // ainfty_over_a2 > 10 d
  std::string error;
};

struct SweepSummary {
  std::vector<SweepRecord> records;
  double slope = 0.0;  // NaN when undefined
  int slope_points = 0;
  double mixed_ratio_spread = 0.0;  // max / min of ratio_mixed
  int monitor_flags = 0;
  std::string config_hash;
  bool all_ok = false;
};

SweepRecord run_record(const ExperimentConfig& config, double t, std::uint64_t seed);
SweepSummary run_sweep(const ExperimentConfig& config);

// Least-squares slope of log ||S_W|| against log [W]_{A2}; NaN if the A2
// values do not vary.
double loglog_slope(const std::vector<SweepRecord>& records, int* points = nullptr);

std::string csv_header();
std::string to_csv(const SweepSummary& summary);
// Writes to_csv(summary) to path; throws kIo on failure.
void emit_csv(const SweepSummary& summary, const std::string& path);

std::string config_hash(const ExperimentConfig& config);

}  // namespace matw

#endif  // MATW_SWEEP_HPP
