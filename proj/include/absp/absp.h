/*
  Copyright (c) the absp authors.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

/* C interface of the absp shared library: scalar products of Bethe vectors in
 * the generalised SU(2)-invariant model, a brute-force Hilbert-space oracle,
 * and the semiclassical contour expansion of the log of the scalar product.
 *
 * Complex numbers cross the boundary as double pairs {re, im}; arrays of
 * complex numbers are interleaved (re0, im0, re1, im1, ...).  Functions return
 * ABSP_OK on success; on failure absp_last_error() describes the problem for
 * the calling thread.  Strings returned through char** are heap-allocated and
 * must be released with absp_string_free().
 */
#ifndef ABSP_ABSP_H
#define ABSP_ABSP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ABSP_API __declspec(dllexport)
#else
#define ABSP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum absp_status {
  ABSP_OK = 0,
  ABSP_ERR_INVALID_ARGUMENT = 1,
  ABSP_ERR_PARSE = 2,
  ABSP_ERR_ZERO_DENOMINATOR = 3,
  ABSP_ERR_POLE_HIT = 4,
  ABSP_ERR_DEGENERATE_ROOTS = 5,
  ABSP_ERR_ILL_CONDITIONED = 6,
  ABSP_ERR_TOO_LARGE = 7,
  ABSP_ERR_SERIES_DIVERGES = 8,
  ABSP_ERR_NO_CONVERGENCE = 9,
  ABSP_ERR_JACOBIAN_SINGULAR = 10,
  ABSP_ERR_OFF_SHELL = 11,
  ABSP_ERR_LOG_SINGULARITY = 12,
  ABSP_ERR_BRANCH_CUT = 13,
  ABSP_ERR_CONTOUR_INVALID = 14,
  ABSP_ERR_IO = 15,
  ABSP_ERR_INTERNAL = 16
} absp_status;

typedef enum absp_a_method {
  ABSP_A_RATIO_DET = 0,
  ABSP_A_FREDHOLM_DET = 1,
  ABSP_A_COULOMB_SUM = 2,
  ABSP_A_LOG_SERIES = 3
} absp_a_method;

typedef struct absp_model absp_model; /* opaque */

ABSP_API const char* absp_last_error(void);
ABSP_API void absp_string_free(char* s);
ABSP_API const char* absp_version(void);

/* ---- model ---- */
ABSP_API absp_status absp_model_parse(const char* json, absp_model** out);
ABSP_API absp_status absp_model_load(const char* path, absp_model** out);
ABSP_API void absp_model_free(absp_model* model);
ABSP_API absp_status absp_model_to_json(const absp_model* model, char** json);
ABSP_API absp_status absp_model_epsilon(const absp_model* model, double* epsilon);

/* ---- elementary evaluations ---- */
ABSP_API absp_status absp_baxter_eval(const double* roots, size_t n, const double v[2],
                                      double out[2]);
ABSP_API absp_status absp_f_eval(const absp_model* model, const double v[2], double out[2]);
ABSP_API absp_status absp_weight_eval(const absp_model* model, const double* w, size_t n,
                                      const double z[2], double out[2]);
ABSP_API absp_status absp_pseudo_momentum(const absp_model* model, const double* u, size_t n,
                                          const double v[2], double out[2]);
ABSP_API absp_status absp_dilog(const double z[2], double out[2]);

/* ---- Bethe equations ---- */
ABSP_API absp_status absp_bethe_residual(const absp_model* model, const double* u, size_t n,
                                         double* residual);
ABSP_API absp_status absp_transfer_eigenvalue(const absp_model* model, const double* u, size_t n,
                                              const double v[2], double out[2]);
/* guess may be NULL to use the default string-hypothesis seeds; writes a
 * state JSON {"roots": ..., "mode_numbers": ..., "residual": ...,
 * "iterations": ..., "on_shell": ...}.  Non-convergence reports
 * ABSP_ERR_NO_CONVERGENCE and still returns the best iterate. */
ABSP_API absp_status absp_solve_bethe(const absp_model* model, const int* modes, size_t n,
                                      const double* guess, double tol, int max_iter,
                                      char** state_json);

/* ---- A-functional ---- */
ABSP_API absp_status absp_a_functional(const absp_model* model, const double* w, size_t n,
                                       absp_a_method method, int n_max, double value[2],
                                       double* condition_estimate, int* n_terms);

/* Scalar product against the state in u_state_json; result JSON carries the
 * per-method values, condition estimates and pairwise deviations. */
ABSP_API absp_status absp_scalar_product(const absp_model* model, const char* u_state_json,
                                         const double* v, size_t n, char** result_json);

/* Brute-force check; the model must be of type inhomogeneous_xxx with L small
 * enough for the 2^L oracle. */
ABSP_API absp_status absp_oracle_check(const absp_model* model, const char* u_state_json,
                                       const double* v, size_t n, char** result_json);

/* ---- batch suites ---- */
ABSP_API absp_status absp_verify_identities(uint64_t seed, int instances, int inject_eps_flip,
                                            char** report_json);

/* family_json NULL selects the bundled one-cut family (M = 8, 16, 32, 64).
 * Writes the report CSV; optionally also the family definition used. */
ABSP_API absp_status absp_semiclassical_compare(const char* family_json, int nodes, char** csv,
                                                char** family_json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ABSP_ABSP_H */
