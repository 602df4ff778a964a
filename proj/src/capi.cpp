// Copyright 2026 The matw Authors.
// SPDX-License-Identifier: Apache-2.0

#include "matw/matw.h"

#include <cmath>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "matw/error.hpp"
#include "matw/io.hpp"
#include "matw/operator_norm.hpp"
#include "matw/random.hpp"
#include "matw/sparse.hpp"
#include "matw/square_functions.hpp"
#include "matw/sweep.hpp"
#include "matw/weights.hpp"

struct matw_weight {
  std::shared_ptr<const matw::MatrixWeight> impl;
};

struct matw_function {
  matw::GridVector impl;
};

struct matw_family {
  std::shared_ptr<const matw::MatrixWeight> weight;
  matw::GridVector f;
  matw::SparseCertificate certificate;
};

namespace {

thread_local std::string g_last_error;

matw_status record(matw_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs body, translating exceptions into status codes.
template <class F>
matw_status guarded(F&& body) noexcept {
  try {
    body();
    return MATW_OK;
  } catch (const matw::Error& e) {
    return record(static_cast<matw_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(MATW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(MATW_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(MATW_ERR_INTERNAL, "unknown error");
  }
}

template <class T>
void need(const T* p, const char* name) {
  if (p == nullptr) matw::fail(matw::ErrorCode::kInvalidArgument, std::string(name) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* matw_version(void) { return matw::kVersion; }

const char* matw_last_error(void) { return g_last_error.c_str(); }

const char* matw_status_name(matw_status status) {
  switch (status) {
    case MATW_OK: return "ok";
    case MATW_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MATW_ERR_NOT_PSD: return "not positive semidefinite";
    case MATW_ERR_SINGULAR_WEIGHT: return "singular weight";
    case MATW_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case MATW_ERR_IO: return "i/o error";
    case MATW_ERR_PARSE: return "parse error";
    case MATW_ERR_LIMIT_EXCEEDED: return "limit exceeded";
    case MATW_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

matw_status matw_weight_generate(const char* kind, int dim, int depth, double parameter, uint64_t seed,
                                 matw_weight** out) {
  return guarded([&] {
    need(kind, "kind");
    need(out, "out");
    matw::WeightFamilySpec spec{matw::parse_weight_kind(kind), dim, depth, parameter, seed};
    auto w = std::make_shared<const matw::MatrixWeight>(matw::generate_weight(spec));
    *out = new matw_weight{std::move(w)};
  });
}

matw_status matw_weight_from_values(int depth, int dim, const double* values, size_t count, matw_weight** out) {
  return guarded([&] {
    need(values, "values");
    need(out, "out");
    matw::require(dim >= 1 && depth >= 0 && depth <= matw::kMaxDepth, matw::ErrorCode::kInvalidArgument,
                  "bad depth or dim");
    const std::size_t per = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
    matw::require(count == matw::leaf_count_at(depth) * per, matw::ErrorCode::kDimensionMismatch,
                  "value count must be 2^depth * dim * dim");
    std::vector<matw::Matrix> cells;
    for (std::size_t leaf = 0; leaf < matw::leaf_count_at(depth); ++leaf)
      cells.emplace_back(dim, std::vector<double>(values + leaf * per, values + (leaf + 1) * per));
    auto w = std::make_shared<const matw::MatrixWeight>(matw::GridMatrixField(depth, dim, std::move(cells)));
    *out = new matw_weight{std::move(w)};
  });
}

matw_status matw_weight_load(const char* path, matw_weight** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto w = std::make_shared<const matw::MatrixWeight>(matw::weight_from_json(matw::read_json_file(path)));
    *out = new matw_weight{std::move(w)};
  });
}

matw_status matw_weight_save(const matw_weight* weight, const char* path) {
  return guarded([&] {
    need(weight, "weight");
    need(path, "path");
    matw::write_text_file(path, matw::dump(matw::to_json(*weight->impl)));
  });
}

matw_status matw_weight_inverse(const matw_weight* weight, matw_weight** out) {
  return guarded([&] {
    need(weight, "weight");
    need(out, "out");
    *out = new matw_weight{std::make_shared<const matw::MatrixWeight>(weight->impl->inverse())};
  });
}

void matw_weight_free(matw_weight* weight) { delete weight; }

matw_status matw_weight_shape(const matw_weight* weight, int* depth, int* dim) {
  return guarded([&] {
    need(weight, "weight");
    if (depth) *depth = weight->impl->depth();
    if (dim) *dim = weight->impl->dim();
  });
}

matw_status matw_weight_a2(const matw_weight* weight, double* out) {
  return guarded([&] {
    need(weight, "weight");
    need(out, "out");
    *out = matw::a2_characteristic(*weight->impl);
  });
}

matw_status matw_weight_ainfty(const matw_weight* weight, int n_directions, uint64_t seed, double* out,
                               int* directions_used) {
  return guarded([&] {
    need(weight, "weight");
    need(out, "out");
    const matw::AinftyEstimate e = matw::ainfty_characteristic(*weight->impl, n_directions, seed);
    *out = e.value;
    if (directions_used) *directions_used = e.directions;
  });
}

matw_status matw_function_from_values(int depth, int dim, const double* values, size_t count,
                                      matw_function** out) {
  return guarded([&] {
    need(values, "values");
    need(out, "out");
    *out = new matw_function{matw::GridVector(depth, dim, std::vector<double>(values, values + count))};
  });
}

matw_status matw_function_random(int depth, int dim, uint64_t seed, matw_function** out) {
  return guarded([&] {
    need(out, "out");
    matw::require(dim >= 1 && depth >= 0 && depth <= matw::kMaxDepth, matw::ErrorCode::kInvalidArgument,
                  "bad depth or dim");
    std::vector<double> v(matw::leaf_count_at(depth) * static_cast<std::size_t>(dim));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = matw::counter_uniform(seed, 0xF00Dull, k, -1.0, 1.0);
    *out = new matw_function{matw::GridVector(depth, dim, std::move(v))};
  });
}

matw_status matw_function_load(const char* path, matw_function** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new matw_function{matw::grid_vector_from_json(matw::read_json_file(path))};
  });
}

matw_status matw_function_save(const matw_function* f, const char* path) {
  return guarded([&] {
    need(f, "f");
    need(path, "path");
    matw::write_text_file(path, matw::dump(matw::to_json(f->impl)));
  });
}

void matw_function_free(matw_function* f) { delete f; }

matw_status matw_function_shape(const matw_function* f, int* depth, int* dim) {
  return guarded([&] {
    need(f, "f");
    if (depth) *depth = f->impl.depth();
    if (dim) *dim = f->impl.dim();
  });
}

matw_status matw_function_values(const matw_function* f, double* values, size_t capacity, size_t* count) {
  return guarded([&] {
    need(f, "f");
    const auto flat = f->impl.flat();
    if (count) *count = flat.size();
    if (values) std::copy_n(flat.begin(), std::min(capacity, flat.size()), values);
  });
}

matw_status matw_sw_norm_squared(const matw_weight* weight, const matw_function* f, double* out) {
  return guarded([&] {
    need(weight, "weight");
    need(f, "f");
    need(out, "out");
    *out = matw::sw_norm_squared(*weight->impl, f->impl).total;
  });
}

matw_status matw_sw_sign_enumeration(const matw_weight* weight, const matw_function* f, double* out) {
  return guarded([&] {
    need(weight, "weight");
    need(f, "f");
    need(out, "out");
    *out = matw::sw_sign_enumeration(*weight->impl, f->impl);
  });
}

matw_status matw_sw_monte_carlo(const matw_weight* weight, const matw_function* f, size_t n_samples, uint64_t seed,
                                double* mean, double* std_error) {
  return guarded([&] {
    need(weight, "weight");
    need(f, "f");
    need(mean, "mean");
    const matw::MonteCarloEstimate e = matw::sw_monte_carlo(*weight->impl, f->impl, n_samples, seed);
    *mean = e.mean;
    if (std_error) *std_error = e.std_error;
  });
}

matw_opnorm_options matw_opnorm_default_options(void) {
  const matw::PowerIterationOptions d;
  return matw_opnorm_options{d.max_iters, d.rel_tol, d.seed};
}

matw_status matw_opnorm(const matw_weight* weight, const matw_opnorm_options* options, matw_opnorm_result* result,
                        matw_function** witness) {
  return guarded([&] {
    need(weight, "weight");
    need(result, "result");
    matw::PowerIterationOptions opts;
    if (options) opts = {options->max_iters, options->rel_tol, options->seed};
    matw::OperatorNormEstimate e = matw::estimate_operator_norm(*weight->impl, opts);
    if (witness) *witness = new matw_function{e.witness};
    *result = matw_opnorm_result{e.value, e.rayleigh, e.residual, e.iters, e.converged ? 1 : 0};
  });
}

matw_status matw_sparse_build(const matw_weight* weight, const matw_function* f, double c1, double c2,
                              matw_family** out) {
  return guarded([&] {
    need(weight, "weight");
    need(f, "f");
    need(out, "out");
    matw::StoppingConfig config = matw::StoppingConfig::defaults(weight->impl->dim());
    if (c1 > 0.0) config.c1 = c1;
    if (c2 > 0.0) config.c2 = c2;
    auto fam = std::make_unique<matw_family>();
    fam->weight = weight->impl;
    fam->f = f->impl;
    fam->certificate = matw::certify(*fam->weight, fam->f, config);
    *out = fam.release();
  });
}

void matw_family_free(matw_family* family) { delete family; }

matw_status matw_family_summarize(const matw_family* family, matw_family_summary* out) {
  return guarded([&] {
    need(family, "family");
    need(out, "out");
    const matw::SparseCertificate& c = family->certificate;
    *out = matw_family_summary{c.family.nodes.size(),
                               c.family.generations,
                               c.sparseness.min_ratio,
                               c.domination.lhs,
                               c.domination.rhs,
                               c.sparseness.ok ? 1 : 0,
                               c.domination.ok ? 1 : 0,
                               c.trace.ok ? 1 : 0,
                               c.weak_type.ok ? 1 : 0,
                               c.maximality.ok ? 1 : 0,
                               c.all_ok ? 1 : 0};
  });
}

matw_status matw_family_node(const matw_family* family, size_t node, int* level, int64_t* index, int* trigger,
                             double* e_ratio) {
  return guarded([&] {
    need(family, "family");
    const auto& nodes = family->certificate.family.nodes;
    matw::require(node < nodes.size(), matw::ErrorCode::kInvalidArgument, "node index out of range");
    const matw::FamilyNode& n = nodes[node];
    if (level) *level = n.interval.level;
    if (index) *index = n.interval.index;
    if (trigger) *trigger = static_cast<int>(n.trigger);
    if (e_ratio) *e_ratio = n.e_ratio;
  });
}

matw_status matw_family_certify(const matw_family* family, const char* path) {
  return guarded([&] {
    need(family, "family");
    need(path, "path");
    matw::write_text_file(path, matw::dump(matw::to_json(family->certificate, *family->weight, family->f)));
  });
}

matw_status matw_instance_load(const char* path, matw_weight** weight, matw_function** f, double* c1, double* c2) {
  return guarded([&] {
    need(path, "path");
    need(weight, "weight");
    need(f, "f");
    const matw::Json j = matw::read_json_file(path);
    if (!j.is_object() || !j.contains("weight") || !j.contains("function"))
      matw::fail(matw::ErrorCode::kParse, "instance needs 'weight' and 'function'");
    auto w = std::make_shared<const matw::MatrixWeight>(matw::weight_from_json(j.at("weight")));
    matw::GridVector g = matw::grid_vector_from_json(j.at("function"));
    const matw::StoppingConfig config =
        matw::stopping_config_from_json(j.contains("config") ? j.at("config") : matw::Json(), w->dim());
    *weight = new matw_weight{std::move(w)};
    *f = new matw_function{std::move(g)};
    if (c1) *c1 = config.c1;
    if (c2) *c2 = config.c2;
  });
}

matw_status matw_sweep_run(const char* config_path, const char* csv_path, int64_t seed_override,
                           matw_sweep_summary* out) {
  return guarded([&] {
    need(config_path, "config_path");
    matw::ExperimentConfig config = matw::experiment_config_from_json(matw::read_json_file(config_path));
    if (seed_override >= 0) config.seeds = {static_cast<std::uint64_t>(seed_override)};
    if (csv_path) config.output = csv_path;
    const matw::SweepSummary s = matw::run_sweep(config);
    if (out)
      *out = matw_sweep_summary{s.records.size(), s.slope, s.mixed_ratio_spread, s.monitor_flags, s.all_ok ? 1 : 0};
  });
}

}  // extern "C"
