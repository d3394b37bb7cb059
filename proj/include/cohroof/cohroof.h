// Copyright 2026 The cohroof Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the cohroof library.
 *
 * States and results are opaque handles owned by the caller and released
 * with the matching *_destroy function. Every fallible call returns a
 * cohroof_status; on failure cohroof_last_error() describes the problem for
 * the calling thread. Complex matrices cross the boundary as interleaved
 * (re, im) doubles in row-major order.
 */
#ifndef COHROOF_COHROOF_H
#define COHROOF_COHROOF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32) || defined(__CYGWIN__)
#  ifdef COHROOF_BUILDING
#    define COHROOF_API __declspec(dllexport)
#  else
#    define COHROOF_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) || defined(__clang__)
#  define COHROOF_API __attribute__((visibility("default")))
#else
#  define COHROOF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define COHROOF_VERSION_MAJOR 1
#define COHROOF_VERSION_MINOR 0
#define COHROOF_VERSION_PATCH 0

typedef enum cohroof_status {
  COHROOF_OK = 0,
  COHROOF_ERR_INVALID_ARGUMENT = 1,
  COHROOF_ERR_NOT_HERMITIAN = 2,
  COHROOF_ERR_NOT_PSD = 3,
  COHROOF_ERR_TRACE_MISMATCH = 4,
  COHROOF_ERR_NOT_NORMALIZED = 5,
  COHROOF_ERR_NOT_ISOMETRY = 6,
  COHROOF_ERR_NOT_X_STATE = 7,
  COHROOF_ERR_DIMENSION_MISMATCH = 8,
  COHROOF_ERR_INTERNAL = 9,
  /* The optimizer hit its iteration cap; the result handle is still valid. */
  COHROOF_ERR_NOT_CONVERGED = 10
} cohroof_status;

typedef struct cohroof_state cohroof_state;
typedef struct cohroof_result cohroof_result;

typedef struct cohroof_config {
  size_t ensemble_size; /* 0: rank^2 */
  size_t ensemble_cap;  /* 0: rank^2 */
  size_t restarts;
  size_t max_iterations;
  double convergence_tol;
  uint64_t seed;
  size_t threads;
} cohroof_config;

typedef struct cohroof_block_info {
  size_t index_count;
  double trace_weight;
  double value;
  int analytic;       /* 1 when solved in closed form */
  int converged;
  const char* method; /* owned by the result */
} cohroof_block_info;

typedef struct cohroof_restart_info {
  double best_value;
  size_t iterations;
  double final_step;
  int converged;
} cohroof_restart_info;

COHROOF_API const char* cohroof_version(void);
COHROOF_API const char* cohroof_status_string(cohroof_status status);
/* Message of the last failure on this thread ("" if none). */
COHROOF_API const char* cohroof_last_error(void);
/* Entry (row, col) attached to the last failure, -1 when not applicable. */
COHROOF_API void cohroof_last_error_position(long* row, long* col);

COHROOF_API void cohroof_config_init(cohroof_config* cfg);

/* States ---------------------------------------------------------------- */

COHROOF_API cohroof_status cohroof_state_create(size_t dim, const double* entries,
                                                double trace_weight, cohroof_state** out);
COHROOF_API cohroof_status cohroof_state_create_bipartite(size_t dim_a, size_t dim_b,
                                                          const double* entries,
                                                          cohroof_state** out);
COHROOF_API void cohroof_state_destroy(cohroof_state* state);
COHROOF_API size_t cohroof_state_dim(const cohroof_state* state);
/* (dim, 1) for a state without a bipartite split. */
COHROOF_API void cohroof_state_dims(const cohroof_state* state, size_t* dim_a, size_t* dim_b);
/* Copies 2 * dim * dim doubles into out. */
COHROOF_API cohroof_status cohroof_state_entries(const cohroof_state* state, double* out,
                                                 size_t out_len);

/* Measures -------------------------------------------------------------- */

COHROOF_API cohroof_status cohroof_l1_coherence(const cohroof_state* state, double* out);
COHROOF_API cohroof_status cohroof_is_incoherent(const cohroof_state* state, double tol,
                                                 int* out);
COHROOF_API cohroof_status cohroof_concurrence(const cohroof_state* state,
                                               const cohroof_config* cfg, cohroof_result** out);
COHROOF_API cohroof_status cohroof_xstate_concurrence(const cohroof_state* state,
                                                      cohroof_result** out);
COHROOF_API cohroof_status cohroof_assistance(const cohroof_state* state,
                                              const cohroof_config* cfg, cohroof_result** out);

COHROOF_API cohroof_status cohroof_schmidt_lift(const cohroof_state* state, cohroof_state** out);
/* Uses the state's split; a state created without one is dim x 1. */
COHROOF_API cohroof_status cohroof_negativity(const cohroof_state* state, double* out);
COHROOF_API cohroof_status cohroof_negativity_roof_mc(const cohroof_state* state,
                                                      const cohroof_config* cfg,
                                                      cohroof_result** out);
/* Uses the state's split; a state created without one is dim x 1. */
COHROOF_API cohroof_status cohroof_negativity_roof_direct(const cohroof_state* state,
                                                          const cohroof_config* cfg,
                                                          cohroof_result** out);

/* Results --------------------------------------------------------------- */

COHROOF_API void cohroof_result_destroy(cohroof_result* result);
COHROOF_API double cohroof_result_value(const cohroof_result* result);
COHROOF_API int cohroof_result_is_analytic(const cohroof_result* result);
COHROOF_API int cohroof_result_converged(const cohroof_result* result);
/* Returns 0 and leaves *out untouched when no lower bound was computed. */
COHROOF_API int cohroof_result_lower_bound(const cohroof_result* result, double* out);

COHROOF_API size_t cohroof_result_block_count(const cohroof_result* result);
COHROOF_API cohroof_status cohroof_result_block(const cohroof_result* result, size_t block,
                                                cohroof_block_info* out);
COHROOF_API cohroof_status cohroof_result_block_indices(const cohroof_result* result,
                                                        size_t block, size_t* out,
                                                        size_t out_len);

COHROOF_API size_t cohroof_result_member_count(const cohroof_result* result);
COHROOF_API size_t cohroof_result_member_dim(const cohroof_result* result);
COHROOF_API cohroof_status cohroof_result_member(const cohroof_result* result, size_t member,
                                                 double* weight, double* amplitudes,
                                                 size_t amplitudes_len);

COHROOF_API size_t cohroof_result_restart_count(const cohroof_result* result);
COHROOF_API cohroof_status cohroof_result_restart(const cohroof_result* result, size_t restart,
                                                  cohroof_restart_info* out);
COHROOF_API size_t cohroof_result_best_restart(const cohroof_result* result);
COHROOF_API size_t cohroof_result_rank(const cohroof_result* result);
COHROOF_API size_t cohroof_result_ensemble_size(const cohroof_result* result);
COHROOF_API int cohroof_result_saturated(const cohroof_result* result);

#ifdef __cplusplus
}
#endif

#endif /* COHROOF_COHROOF_H */
