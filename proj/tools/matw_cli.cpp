// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the library only through matw.h.
//
// Exit status: 0 when every verification in the invocation passes, 1 when
// a computation finished but a check failed (or did not converge), 2 on
// usage or runtime errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "matw/matw.h"

namespace {

using Json = nlohmann::ordered_json;

struct CallFailed {
  matw_status status;
  std::string message;
};

void check(matw_status s) {
  if (s != MATW_OK) throw CallFailed{s, matw_last_error()};
}

struct WeightDeleter {
  void operator()(matw_weight* w) const { matw_weight_free(w); }
};
struct FunctionDeleter {
  void operator()(matw_function* f) const { matw_function_free(f); }
};
struct FamilyDeleter {
  void operator()(matw_family* f) const { matw_family_free(f); }
};
using WeightPtr = std::unique_ptr<matw_weight, WeightDeleter>;
using FunctionPtr = std::unique_ptr<matw_function, FunctionDeleter>;
using FamilyPtr = std::unique_ptr<matw_family, FamilyDeleter>;

WeightPtr load_weight(const std::string& path) {
  matw_weight* w = nullptr;
  check(matw_weight_load(path.c_str(), &w));
  return WeightPtr(w);
}

FunctionPtr load_function(const std::string& path) {
  matw_function* f = nullptr;
  check(matw_function_load(path.c_str(), &f));
  return FunctionPtr(f);
}

// MATW_SEED, when set, replaces seeds the user did not pass explicitly.
std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("MATW_SEED");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end != '\0') throw CallFailed{MATW_ERR_INVALID_ARGUMENT, "MATW_SEED must be a nonnegative integer"};
  return v;
}

std::uint64_t pick_seed(const CLI::Option* opt, std::uint64_t given) {
  if (opt->count() > 0) return given;
  if (auto e = env_seed()) return *e;
  return given;
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matw: matrix-weighted dyadic square functions and sparse domination"};
  app.set_version_flag("--version", std::string(matw_version()));
  app.require_subcommand(1);

  // genweight
  std::string kind = "random_log_pd";
  int dim = 2;
  int depth = 8;
  double param = 0.5;
  std::uint64_t seed = 1;
  std::string out;
  auto* genweight = app.add_subcommand("genweight", "Generate a weight from a named family");
  genweight->add_option("--kind", kind, "identity|scalar_power|block_scalar|rotating|random_log_pd")->capture_default_str();
  genweight->add_option("--dim", dim)->capture_default_str();
  genweight->add_option("--depth", depth)->capture_default_str();
  genweight->add_option("--param", param)->capture_default_str();
  auto* genweight_seed = genweight->add_option("--seed", seed)->capture_default_str();
  genweight->add_option("--out", out, "Output JSON path")->required();

  // genfunc
  auto* genfunc = app.add_subcommand("genfunc", "Generate a random vector function with entries in [-1, 1]");
  genfunc->add_option("--dim", dim)->capture_default_str();
  genfunc->add_option("--depth", depth)->capture_default_str();
  auto* genfunc_seed = genfunc->add_option("--seed", seed)->capture_default_str();
  genfunc->add_option("--out", out)->required();

  // a2
  std::string weight_path;
  auto* a2 = app.add_subcommand("a2", "Dyadic A2 characteristic");
  a2->add_option("--weight", weight_path)->required()->check(CLI::ExistingFile);

  // ainfty
  int directions = 64;
  bool inverse = false;
  auto* ainfty = app.add_subcommand("ainfty", "Sampled lower bound of the A-infinity characteristic");
  ainfty->add_option("--weight", weight_path)->required()->check(CLI::ExistingFile);
  ainfty->add_option("--directions", directions)->capture_default_str();
  ainfty->add_flag("--inverse", inverse, "Use the inverse weight");
  auto* ainfty_seed = ainfty->add_option("--seed", seed)->capture_default_str();

  // swnorm
  std::string f_path;
  bool enumerate = false;
  std::size_t mc = 0;
  auto* swnorm = app.add_subcommand("swnorm", "Weighted square function norm squared");
  swnorm->add_option("--weight", weight_path)->required()->check(CLI::ExistingFile);
  swnorm->add_option("--f", f_path)->required()->check(CLI::ExistingFile);
  swnorm->add_flag("--enumerate", enumerate, "Also average over all sign patterns (small depth)");
  swnorm->add_option("--mc", mc, "Also estimate by Monte Carlo with this many sign patterns");
  auto* swnorm_seed = swnorm->add_option("--seed", seed)->capture_default_str();

  // opnorm
  matw_opnorm_options opts = matw_opnorm_default_options();
  std::string witness_path;
  auto* opnorm = app.add_subcommand("opnorm", "Operator norm squared of S_W from L2(W) to L2");
  opnorm->add_option("--weight", weight_path)->required()->check(CLI::ExistingFile);
  opnorm->add_option("--max-iters", opts.max_iters)->capture_default_str();
  opnorm->add_option("--rel-tol", opts.rel_tol)->capture_default_str();
  auto* opnorm_seed = opnorm->add_option("--seed", opts.seed)->capture_default_str();
  opnorm->add_option("--witness", witness_path, "Write the witness function here");

  // sparse
  std::string instance_path;
  std::string certify_path;
  double c1 = 0.0;
  double c2 = 0.0;
  auto* sparse = app.add_subcommand("sparse", "Build and verify a sparse dominating family");
  auto* sp_weight = sparse->add_option("--weight", weight_path)->check(CLI::ExistingFile);
  auto* sp_f = sparse->add_option("--f", f_path)->check(CLI::ExistingFile);
  auto* sp_instance = sparse->add_option("--instance", instance_path, "JSON with weight, function, config")
                          ->check(CLI::ExistingFile);
  sp_weight->needs(sp_f);
  sp_f->needs(sp_weight);
  sp_instance->excludes(sp_weight)->excludes(sp_f);
  auto* sp_c1 = sparse->add_option("--c1", c1, "Type-1 threshold (default 2 sqrt(d))");
  auto* sp_c2 = sparse->add_option("--c2", c2, "Type-2 threshold (default 256)");
  sparse->add_option("--certify", certify_path, "Write the certificate JSON here");

  // sweep
  std::string config_path;
  std::string csv_path;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and write CSV");
  sweep->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", csv_path, "CSV path (default: the config's output field)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*genweight) {
      matw_weight* raw = nullptr;
      check(matw_weight_generate(kind.c_str(), dim, depth, param, pick_seed(genweight_seed, seed), &raw));
      WeightPtr w(raw);
      check(matw_weight_save(w.get(), out.c_str()));
      emit(Json{{"written", out}});
      return 0;
    }
    if (*genfunc) {
      matw_function* raw = nullptr;
      check(matw_function_random(depth, dim, pick_seed(genfunc_seed, seed), &raw));
      FunctionPtr f(raw);
      check(matw_function_save(f.get(), out.c_str()));
      emit(Json{{"written", out}});
      return 0;
    }
    if (*a2) {
      WeightPtr w = load_weight(weight_path);
      double v = 0.0;
      check(matw_weight_a2(w.get(), &v));
      emit(Json{{"a2", number(v)}});
      return 0;
    }
    if (*ainfty) {
      WeightPtr w = load_weight(weight_path);
      if (inverse) {
        matw_weight* raw = nullptr;
        check(matw_weight_inverse(w.get(), &raw));
        w.reset(raw);
      }
      double v = 0.0;
      int used = 0;
      check(matw_weight_ainfty(w.get(), directions, pick_seed(ainfty_seed, seed), &v, &used));
      emit(Json{{"ainfty_lower_bound", number(v)}, {"directions", used}, {"inverse", inverse}});
      return 0;
    }
    if (*swnorm) {
      WeightPtr w = load_weight(weight_path);
      FunctionPtr f = load_function(f_path);
      double v = 0.0;
      check(matw_sw_norm_squared(w.get(), f.get(), &v));
      Json j{{"sw_norm_squared", number(v)}};
      bool ok = true;
      if (enumerate) {
        double e = 0.0;
        check(matw_sw_sign_enumeration(w.get(), f.get(), &e));
        const bool agree = std::abs(e - v) <= 1e-10 * std::max(std::abs(v), 1e-300);
        j["sign_enumeration"] = Json{{"value", number(e)}, {"agrees", agree}};
        ok = ok && agree;
      }
      if (mc > 0) {
        double mean = 0.0;
        double se = 0.0;
        check(matw_sw_monte_carlo(w.get(), f.get(), mc, pick_seed(swnorm_seed, seed), &mean, &se));
        const bool agree = std::abs(mean - v) <= 5.0 * se + 1e-12 * std::abs(v);
        j["monte_carlo"] = Json{{"samples", mc}, {"mean", number(mean)}, {"std_error", number(se)}, {"agrees", agree}};
        ok = ok && agree;
      }
      emit(j);
      return ok ? 0 : 1;
    }
    if (*opnorm) {
      WeightPtr w = load_weight(weight_path);
      opts.seed = pick_seed(opnorm_seed, opts.seed);
      matw_opnorm_result r{};
      matw_function* raw = nullptr;
      check(matw_opnorm(w.get(), &opts, &r, &raw));
      FunctionPtr witness(raw);
      if (!witness_path.empty()) check(matw_function_save(witness.get(), witness_path.c_str()));
      emit(Json{{"opnorm_squared", number(r.value)},
                {"rayleigh", number(r.rayleigh)},
                {"residual", number(r.residual)},
                {"iters", r.iters},
                {"converged", r.converged != 0}});
      return r.converged ? 0 : 1;
    }
    if (*sparse) {
      WeightPtr w;
      FunctionPtr f;
      if (!instance_path.empty()) {
        matw_weight* rw = nullptr;
        matw_function* rf = nullptr;
        double ic1 = 0.0;
        double ic2 = 0.0;
        check(matw_instance_load(instance_path.c_str(), &rw, &rf, &ic1, &ic2));
        w.reset(rw);
        f.reset(rf);
        if (sp_c1->count() == 0) c1 = ic1;
        if (sp_c2->count() == 0) c2 = ic2;
      } else if (!weight_path.empty()) {
        w = load_weight(weight_path);
        f = load_function(f_path);
      } else {
        throw CallFailed{MATW_ERR_INVALID_ARGUMENT, "sparse needs --instance or both --weight and --f"};
      }
      matw_family* raw = nullptr;
      check(matw_sparse_build(w.get(), f.get(), c1, c2, &raw));
      FamilyPtr fam(raw);
      matw_family_summary s{};
      check(matw_family_summarize(fam.get(), &s));
      if (!certify_path.empty()) check(matw_family_certify(fam.get(), certify_path.c_str()));
      emit(Json{{"nodes", s.nodes},
                {"generations", s.generations},
                {"min_e_ratio", number(s.min_e_ratio)},
                {"domination_lhs", number(s.domination_lhs)},
                {"domination_rhs", number(s.domination_rhs)},
                {"sparseness_ok", s.sparseness_ok != 0},
                {"domination_ok", s.domination_ok != 0},
                {"type1_trace_ok", s.trace_ok != 0},
                {"type2_weak_ok", s.weak_type_ok != 0},
                {"maximality_ok", s.maximality_ok != 0},
                {"all_ok", s.all_ok != 0}});
      return s.all_ok ? 0 : 1;
    }
    if (*sweep) {
      std::int64_t override_seed = -1;
      if (auto e = env_seed()) override_seed = static_cast<std::int64_t>(*e);
      matw_sweep_summary s{};
      check(matw_sweep_run(config_path.c_str(), csv_path.empty() ? nullptr : csv_path.c_str(), override_seed, &s));
      emit(Json{{"records", s.records},
                {"slope", number(s.slope)},
                {"mixed_ratio_max_over_min", number(s.mixed_ratio_spread)},
                {"monitor_flags", s.monitor_flags},
                {"all_ok", s.all_ok != 0}});
      return s.all_ok ? 0 : 1;
    }
  } catch (const CallFailed& e) {
    std::cerr << "matw: " << matw_status_name(e.status) << ": " << e.message << '\n';
    return 2;
  }
  return 2;
}
