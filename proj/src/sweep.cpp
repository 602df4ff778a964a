// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

#include "matw/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "matw/error.hpp"
#include "matw/io.hpp"
#include "matw/sparse.hpp"
#include "matw/square_functions.hpp"

namespace matw {

void ExperimentConfig::validate() const {
  require(!parameters.empty(), ErrorCode::kInvalidArgument, "parameter grid must be nonempty");
  require(!seeds.empty(), ErrorCode::kInvalidArgument, "seed list must be nonempty");
  require(rel_tol > 0.0 && rel_tol <= 1e-3, ErrorCode::kInvalidArgument, "rel_tol must lie in (0, 1e-3]");
  require(max_iters >= 1, ErrorCode::kInvalidArgument, "max_iters must be positive");
  require(n_directions >= 2 * dim, ErrorCode::kInvalidArgument, "n_directions must be at least 2*dim");
  require(c1 == 0.0 || c1 > 1.0, ErrorCode::kInvalidArgument, "c1 must exceed 1 (or be 0 for the default)");
  require(c2 == 0.0 || c2 > 1.0, ErrorCode::kInvalidArgument, "c2 must exceed 1 (or be 0 for the default)");
  require(threads >= 0, ErrorCode::kInvalidArgument, "threads must be nonnegative");
  for (double t : parameters) matw::validate(WeightFamilySpec{kind, dim, depth, t, seeds.front()});
}

SweepRecord run_record(const ExperimentConfig& config, double t, std::uint64_t seed) {
  SweepRecord r;
  r.t = t;
  r.seed = seed;
  try {
    const MatrixWeight w = generate_weight(WeightFamilySpec{config.kind, config.dim, config.depth, t, seed});
    r.a2 = a2_characteristic(w);
    const MatrixWeight inv = w.inverse();
    const AinftyEstimate ainf = ainfty_characteristic(inv, config.n_directions, seed);
    r.ainfty_inv = ainf.value;
    r.ainfty_directions = ainf.directions;
    r.a2_inv = a2_characteristic(inv);

    const OperatorNormEstimate est =
        estimate_operator_norm(w, PowerIterationOptions{config.max_iters, config.rel_tol, seed});
    r.opnorm_sq_est = est.rayleigh;
    r.opnorm_sq_lower = est.value;
    r.iters = est.iters;
    r.converged = est.converged;

    StoppingConfig sc = StoppingConfig::defaults(config.dim);
    if (config.c1 > 0.0) sc.c1 = config.c1;
    if (config.c2 > 0.0) sc.c2 = config.c2;
    const SparseFamily family = build_sparse_family(w, est.witness, sc);
    const DominationReport dom = verify_domination(w, est.witness, family);
    const double p = weighted_norm_squared(w, est.witness);
    r.domination_rhs = dom.rhs / p;
    r.domination_ok = dom.ok && r.opnorm_sq_lower <= r.domination_rhs * (1.0 + 1e-9);
    r.min_e_ratio = verify_sparseness(family, sc.sparseness_target).min_ratio;

    const double norm = std::sqrt(std::max(r.opnorm_sq_est, 0.0));
    r.ratio_mixed = norm / std::sqrt(r.a2 * r.ainfty_inv);
    r.ratio_linear = norm / r.a2;
    r.ainfty_over_a2 = r.ainfty_inv / r.a2;
    r.monitor_flag = r.ainfty_over_a2 > 10.0 * config.dim;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

double loglog_slope(const std::vector<SweepRecord>& records, int* points) {
  std::vector<std::pair<double, double>> xy;
  for (const SweepRecord& r : records)
    if (r.error.empty() && r.a2 > 0.0 && r.opnorm_sq_est > 0.0)
      xy.emplace_back(std::log(r.a2), 0.5 * std::log(r.opnorm_sq_est));
  if (points) *points = static_cast<int>(xy.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (xy.size() < 2) return nan;
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(xy.size());
  my /= static_cast<double>(xy.size());
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [x, y] : xy) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx <= 1e-20) return nan;
  return sxy / sxx;
}

SweepSummary run_sweep(const ExperimentConfig& config) {
  config.validate();
  std::vector<double> params = config.parameters;
  std::vector<std::uint64_t> seeds = config.seeds;
  std::sort(params.begin(), params.end());
  std::sort(seeds.begin(), seeds.end());

  std::vector<std::pair<double, std::uint64_t>> jobs;
  for (double t : params)
    for (std::uint64_t s : seeds) jobs.emplace_back(t, s);

  SweepSummary out;
  out.records.resize(jobs.size());
  unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(jobs.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++)
      out.records[k] = run_record(config, jobs[k].first, jobs[k].second);
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (std::thread& th : pool) th.join();

  out.slope = loglog_slope(out.records, &out.slope_points);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  out.all_ok = true;
  for (const SweepRecord& r : out.records) {
    out.all_ok = out.all_ok && r.error.empty() && r.domination_ok;
    out.monitor_flags += r.monitor_flag ? 1 : 0;
    if (!r.error.empty()) continue;
    lo = std::min(lo, r.ratio_mixed);
    hi = std::max(hi, r.ratio_mixed);
  }
  out.mixed_ratio_spread = (hi > 0.0 && std::isfinite(lo)) ? hi / lo : std::numeric_limits<double>::quiet_NaN();
  out.config_hash = config_hash(config);
  if (!config.output.empty()) emit_csv(out, config.output);
  return out;
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string csv_header() {
  return "t,seed,a2,ainfty_inv,ainfty_directions,a2_inv,opnorm_sq_est,opnorm_sq_lower,iters,converged,"
         "domination_rhs,domination_ok,min_e_ratio,ratio_mixed,ratio_linear,ainfty_over_a2,monitor_flag,error";
}

std::string to_csv(const SweepSummary& summary) {
  std::string out = csv_header() + "\r\n";
  for (const SweepRecord& r : summary.records) {
    out += num(r.t) + "," + std::to_string(r.seed) + "," + num(r.a2) + "," + num(r.ainfty_inv) + "," +
           std::to_string(r.ainfty_directions) + "," + num(r.a2_inv) + "," + num(r.opnorm_sq_est) + "," +
           num(r.opnorm_sq_lower) + "," + std::to_string(r.iters) + "," + flag(r.converged) + "," +
           num(r.domination_rhs) + "," + flag(r.domination_ok) + "," + num(r.min_e_ratio) + "," +
           num(r.ratio_mixed) + "," + num(r.ratio_linear) + "," + num(r.ainfty_over_a2) + "," +
           flag(r.monitor_flag) + "," + quote(r.error) + "\r\n";
  }
  out += "# slope=" + (std::isnan(summary.slope) ? std::string("undefined") : num(summary.slope)) + "\r\n";
  out += "# slope_points=" + std::to_string(summary.slope_points) + "\r\n";
  out += "# mixed_ratio_max_over_min=" + num(summary.mixed_ratio_spread) + "\r\n";
  out += "# monitor_flags=" + std::to_string(summary.monitor_flags) + "\r\n";
  out += "# ainfty_inv=sampled lower bound; a2_inv is the A2 fallback bound\r\n";
  out += "# config_hash=" + summary.config_hash + "\r\n";
  out += std::string("# version=") + kVersion + "\r\n";
  return out;
}

void emit_csv(const SweepSummary& summary, const std::string& path) { write_text_file(path, to_csv(summary)); }

std::string config_hash(const ExperimentConfig& config) {
  const std::string text = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace matw
