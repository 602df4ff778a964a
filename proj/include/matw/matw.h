/*
 * Copyright 2026 The matw Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to libmatw: matrix-weighted dyadic square functions, A2 and
 * A-infinity characteristics, stopping-time sparse domination with
 * certificates, and parameter sweeps.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every call returns a matw_status; on failure matw_last_error() describes
 * the problem (thread-local, valid until the next failing call on the same
 * thread). Output pointers are written only on success.
 */

#ifndef MATW_H
#define MATW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MATW_BUILDING_LIBRARY)
#    define MATW_API __declspec(dllexport)
#  else
#    define MATW_API __declspec(dllimport)
#  endif
#else
#  define MATW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum matw_status {
  MATW_OK = 0,
  MATW_ERR_INVALID_ARGUMENT = 1,
  MATW_ERR_NOT_PSD = 2,
  MATW_ERR_SINGULAR_WEIGHT = 3,
  MATW_ERR_DIMENSION_MISMATCH = 4,
  MATW_ERR_IO = 5,
  MATW_ERR_PARSE = 6,
  MATW_ERR_LIMIT_EXCEEDED = 7,
  MATW_ERR_INTERNAL = 8
} matw_status;

typedef struct matw_weight matw_weight;
typedef struct matw_function matw_function;
typedef struct matw_family matw_family;

MATW_API const char* matw_version(void);
MATW_API const char* matw_last_error(void);
MATW_API const char* matw_status_name(matw_status status);

/* ---- weights ---------------------------------------------------------- */

/* kind: identity, scalar_power, block_scalar, rotating, random_log_pd */
MATW_API matw_status matw_weight_generate(const char* kind, int dim, int depth, double parameter, uint64_t seed,
                                          matw_weight** out);
/* values: 2^depth cells of dim*dim row-major entries. */
MATW_API matw_status matw_weight_from_values(int depth, int dim, const double* values, size_t count,
                                             matw_weight** out);
MATW_API matw_status matw_weight_load(const char* path, matw_weight** out);
MATW_API matw_status matw_weight_save(const matw_weight* weight, const char* path);
MATW_API matw_status matw_weight_inverse(const matw_weight* weight, matw_weight** out);
MATW_API void matw_weight_free(matw_weight* weight);
MATW_API matw_status matw_weight_shape(const matw_weight* weight, int* depth, int* dim);

MATW_API matw_status matw_weight_a2(const matw_weight* weight, double* out);
/* Sampled lower bound of [W]_{A-infinity}; *directions_used may be NULL. */
MATW_API matw_status matw_weight_ainfty(const matw_weight* weight, int n_directions, uint64_t seed, double* out,
                                        int* directions_used);

/* ---- vector functions ------------------------------------------------- */

/* values: 2^depth cells of dim entries. */
MATW_API matw_status matw_function_from_values(int depth, int dim, const double* values, size_t count,
                                               matw_function** out);
/* Entries uniform in [-1, 1], counter-based on seed. */
MATW_API matw_status matw_function_random(int depth, int dim, uint64_t seed, matw_function** out);
MATW_API matw_status matw_function_load(const char* path, matw_function** out);
MATW_API matw_status matw_function_save(const matw_function* f, const char* path);
MATW_API void matw_function_free(matw_function* f);
MATW_API matw_status matw_function_shape(const matw_function* f, int* depth, int* dim);
/* Copies up to `capacity` values; *count receives 2^depth * dim. */
MATW_API matw_status matw_function_values(const matw_function* f, double* values, size_t capacity, size_t* count);

/* ---- weighted square function ----------------------------------------- */

MATW_API matw_status matw_sw_norm_squared(const matw_weight* weight, const matw_function* f, double* out);
MATW_API matw_status matw_sw_sign_enumeration(const matw_weight* weight, const matw_function* f, double* out);
MATW_API matw_status matw_sw_monte_carlo(const matw_weight* weight, const matw_function* f, size_t n_samples,
                                         uint64_t seed, double* mean, double* std_error);

/* ---- operator norm ---------------------------------------------------- */

typedef struct matw_opnorm_options {
  int max_iters;
  double rel_tol;
  uint64_t seed;
} matw_opnorm_options;

typedef struct matw_opnorm_result {
  double value;    /* Q(witness)/P(witness), certified lower bound */
  double rayleigh; /* last iteration Rayleigh quotient */
  double residual;
  int iters;
  int converged;
} matw_opnorm_result;

MATW_API matw_opnorm_options matw_opnorm_default_options(void);
/* *witness may be NULL when the witness is not wanted. */
MATW_API matw_status matw_opnorm(const matw_weight* weight, const matw_opnorm_options* options,
                                 matw_opnorm_result* result, matw_function** witness);

/* ---- sparse domination ------------------------------------------------ */

typedef struct matw_family_summary {
  size_t nodes;
  int generations;
  double min_e_ratio;
  double domination_lhs;
  double domination_rhs;
  int sparseness_ok;
  int domination_ok;
  int trace_ok;
  int weak_type_ok;
  int maximality_ok;
  int all_ok;
} matw_family_summary;

/* c1 <= 0 or c2 <= 0 selects the defaults 2*sqrt(dim) and 256. */
MATW_API matw_status matw_sparse_build(const matw_weight* weight, const matw_function* f, double c1, double c2,
                                       matw_family** out);
MATW_API void matw_family_free(matw_family* family);
MATW_API matw_status matw_family_summarize(const matw_family* family, matw_family_summary* out);
/* trigger: 0 root, 1 type-1 (norm), 2 type-2 (sum), 3 both. */
MATW_API matw_status matw_family_node(const matw_family* family, size_t node, int* level, int64_t* index,
                                      int* trigger, double* e_ratio);
/* Writes the certificate JSON for the family to path. */
MATW_API matw_status matw_family_certify(const matw_family* family, const char* path);

/* Reads {"weight", "function", "config"} from an instance file. */
MATW_API matw_status matw_instance_load(const char* path, matw_weight** weight, matw_function** f, double* c1,
                                        double* c2);

/* ---- sweeps ----------------------------------------------------------- */

typedef struct matw_sweep_summary {
  size_t records;
  double slope; /* NaN when undefined */
  double mixed_ratio_spread;
  int monitor_flags;
  int all_ok;
} matw_sweep_summary;

/* seed_override < 0 keeps the config's seeds. csv_path may be NULL to use
 * the config's "output" field. */
MATW_API matw_status matw_sweep_run(const char* config_path, const char* csv_path, int64_t seed_override,
                                    matw_sweep_summary* out);

#ifdef __cplusplus
}
#endif

#endif /* MATW_H */
