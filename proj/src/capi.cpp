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

#include "cohroof/cohroof.h"

#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "cohroof/coherence.hpp"
#include "cohroof/entangle.hpp"
#include "cohroof/xanalytic.hpp"

struct cohroof_state {
  cohroof::DensityMatrix rho;
  std::size_t dim_a;
  std::size_t dim_b;
};

struct cohroof_result {
  cohroof::RoofResult roof;
};

namespace {

struct LastError {
  std::string message;
  long row = -1;
  long col = -1;
};

thread_local LastError last_error;

void clear_error() { last_error = LastError{}; }

cohroof_status set_error(cohroof_status status, const std::string& message, long row = -1,
                         long col = -1) {
  last_error = LastError{message, row, col};
  return status;
}

cohroof_status map_code(cohroof::ErrorCode code) {
  using cohroof::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return COHROOF_ERR_INVALID_ARGUMENT;
    case ErrorCode::not_hermitian: return COHROOF_ERR_NOT_HERMITIAN;
    case ErrorCode::not_positive_semidefinite: return COHROOF_ERR_NOT_PSD;
    case ErrorCode::trace_mismatch: return COHROOF_ERR_TRACE_MISMATCH;
    case ErrorCode::not_normalized: return COHROOF_ERR_NOT_NORMALIZED;
    case ErrorCode::not_isometry: return COHROOF_ERR_NOT_ISOMETRY;
    case ErrorCode::not_x_state: return COHROOF_ERR_NOT_X_STATE;
    case ErrorCode::dimension_mismatch: return COHROOF_ERR_DIMENSION_MISMATCH;
    case ErrorCode::internal_inconsistency: return COHROOF_ERR_INTERNAL;
  }
  return COHROOF_ERR_INTERNAL;
}

// Runs body, translating exceptions into status codes.
template <typename F>
cohroof_status guarded(F&& body) {
  clear_error();
  try {
    return body();
  } catch (const cohroof::Error& e) {
    return set_error(map_code(e.code()), e.what(), e.row(), e.col());
  } catch (const std::bad_alloc&) {
    return set_error(COHROOF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(COHROOF_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(COHROOF_ERR_INTERNAL, "unknown failure");
  }
}

cohroof::RoofConfig to_config(const cohroof_config* cfg) {
  cohroof::RoofConfig out;
  if (cfg == nullptr) return out;
  out.ensemble_size = cfg->ensemble_size;
  out.ensemble_cap = cfg->ensemble_cap;
  out.restarts = cfg->restarts;
  out.max_iterations = cfg->max_iterations;
  out.convergence_tol = cfg->convergence_tol;
  out.seed = cfg->seed;
  out.threads = cfg->threads;
  return out;
}

cohroof::ComplexMatrix read_entries(std::size_t dim, const double* entries) {
  const auto n = static_cast<Eigen::Index>(dim);
  cohroof::ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::size_t at = 2 * static_cast<std::size_t>(i * n + j);
      m(i, j) = cohroof::Complex(entries[at], entries[at + 1]);
    }
  return m;
}

cohroof_status emit(cohroof::RoofResult roof, cohroof_result** out) {
  const bool converged = roof.converged();
  *out = new cohroof_result{std::move(roof)};
  if (!converged)
    return set_error(COHROOF_ERR_NOT_CONVERGED, "optimizer stopped at the iteration cap");
  return COHROOF_OK;
}

#define COHROOF_REQUIRE(cond, msg) \
  if (!(cond)) return set_error(COHROOF_ERR_INVALID_ARGUMENT, msg)

}  // namespace

extern "C" {

const char* cohroof_version(void) { return "1.0.0"; }

const char* cohroof_status_string(cohroof_status status) {
  switch (status) {
    case COHROOF_OK: return "ok";
    case COHROOF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case COHROOF_ERR_NOT_HERMITIAN: return "not Hermitian";
    case COHROOF_ERR_NOT_PSD: return "not positive semidefinite";
    case COHROOF_ERR_TRACE_MISMATCH: return "trace mismatch";
    case COHROOF_ERR_NOT_NORMALIZED: return "not normalized";
    case COHROOF_ERR_NOT_ISOMETRY: return "not an isometry";
    case COHROOF_ERR_NOT_X_STATE: return "not an X state";
    case COHROOF_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case COHROOF_ERR_INTERNAL: return "internal error";
    case COHROOF_ERR_NOT_CONVERGED: return "not converged";
  }
  return "unknown status";
}

const char* cohroof_last_error(void) { return last_error.message.c_str(); }

void cohroof_last_error_position(long* row, long* col) {
  if (row) *row = last_error.row;
  if (col) *col = last_error.col;
}

void cohroof_config_init(cohroof_config* cfg) {
  if (cfg == nullptr) return;
  const cohroof::RoofConfig d;
  cfg->ensemble_size = d.ensemble_size;
  cfg->ensemble_cap = d.ensemble_cap;
  cfg->restarts = d.restarts;
  cfg->max_iterations = d.max_iterations;
  cfg->convergence_tol = d.convergence_tol;
  cfg->seed = d.seed;
  cfg->threads = d.threads;
}

cohroof_status cohroof_state_create(size_t dim, const double* entries, double trace_weight,
                                    cohroof_state** out) {
  return guarded([&] {
    COHROOF_REQUIRE(out && entries && dim > 0, "state_create: null argument or zero dim");
    auto rho = cohroof::DensityMatrix::validate(read_entries(dim, entries), trace_weight);
    *out = new cohroof_state{std::move(rho), dim, 1};
    return COHROOF_OK;
  });
}

cohroof_status cohroof_state_create_bipartite(size_t dim_a, size_t dim_b, const double* entries,
                                              cohroof_state** out) {
  return guarded([&] {
    COHROOF_REQUIRE(out && entries && dim_a > 0 && dim_b > 0,
                    "state_create_bipartite: null argument or zero dim");
    auto rho = cohroof::DensityMatrix::validate(read_entries(dim_a * dim_b, entries), 1.0);
    *out = new cohroof_state{std::move(rho), dim_a, dim_b};
    return COHROOF_OK;
  });
}

void cohroof_state_destroy(cohroof_state* state) { delete state; }

size_t cohroof_state_dim(const cohroof_state* state) { return state ? state->rho.dim() : 0; }

void cohroof_state_dims(const cohroof_state* state, size_t* dim_a, size_t* dim_b) {
  if (dim_a) *dim_a = state ? state->dim_a : 0;
  if (dim_b) *dim_b = state ? state->dim_b : 0;
}

cohroof_status cohroof_state_entries(const cohroof_state* state, double* out, size_t out_len) {
  return guarded([&] {
    COHROOF_REQUIRE(state && out, "state_entries: null argument");
    const std::size_t n = state->rho.dim();
    COHROOF_REQUIRE(out_len >= 2 * n * n, "state_entries: output buffer too small");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        out[2 * (i * n + j)] = state->rho(i, j).real();
        out[2 * (i * n + j) + 1] = state->rho(i, j).imag();
      }
    return COHROOF_OK;
  });
}

cohroof_status cohroof_l1_coherence(const cohroof_state* state, double* out) {
  return guarded([&] {
    COHROOF_REQUIRE(state && out, "l1_coherence: null argument");
    *out = cohroof::l1_coherence(state->rho);
    return COHROOF_OK;
  });
}

cohroof_status cohroof_is_incoherent(const cohroof_state* state, double tol, int* out) {
  return guarded([&] {
    COHROOF_REQUIRE(state && out, "is_incoherent: null argument");
    *out = cohroof::is_incoherent(state->rho, tol) ? 1 : 0;
    return COHROOF_OK;
  });
}

cohroof_status cohroof_concurrence(const cohroof_state* state, const cohroof_config* cfg,
                                   cohroof_result** out) {
  return guarded([&] {
    COHROOF_REQUIRE(state && out, "concurrence: null argument");
    return emit(cohroof::concurrence(state->rho, to_config(cfg)), out);
  });
}

cohroof_status cohroof_xstate_concurrence(const cohroof_state* state, cohroof_result** out) {
  return guarded([&] {
    COHROOF_REQUIRE(state && out, "xstate_concurrence: null argument");
    cohroof::AnalyticResult a = cohroof::xstate_concurrence(state->rho);
    cohroof::RoofResult roof;
    roof.value = a.value;
    roof.ensemble = std::move(a.ensemble);
    roof.path = cohroof::RoofPath::analytic;
    roof.lower_bound = cohroof::l1_coherence(state->rho);
    return emit(std::move(roof), out);
  });
}

cohroof_status cohroof_assistance(const cohroof_state* state, const cohroof_config* cfg,
                                  cohroof_result** out) {
  return guarded([&] {
    COHROOF_REQUIRE(state && out, "assistance: null argument");
    return emit(cohroof::coherence_of_assistance(state->rho, to_config(cfg)), out);
  });
}

cohroof_status cohroof_schmidt_lift(const cohroof_state* state, cohroof_state** out) {
  return guarded([&] {
    COHROOF_REQUIRE(state && out, "schmidt_lift: null argument");
    cohroof::BipartiteState lifted = cohroof::schmidt_lift(state->rho);
    *out = new cohroof_state{lifted.state(), lifted.dim_a(), lifted.dim_b()};
    return COHROOF_OK;
  });
}

cohroof_status cohroof_negativity(const cohroof_state* state, double* out) {
  return guarded([&] {
    COHROOF_REQUIRE(state && out, "negativity: null argument");
    const cohroof::BipartiteState bi(state->rho, state->dim_a, state->dim_b);
    *out = cohroof::negativity(bi);
    return COHROOF_OK;
  });
}

cohroof_status cohroof_negativity_roof_mc(const cohroof_state* state, const cohroof_config* cfg,
                                          cohroof_result** out) {
  return guarded([&] {
    COHROOF_REQUIRE(state && out, "negativity_roof_mc: null argument");
    return emit(cohroof::negativity_convex_roof_mc(state->rho, to_config(cfg)), out);
  });
}

cohroof_status cohroof_negativity_roof_direct(const cohroof_state* state,
                                              const cohroof_config* cfg, cohroof_result** out) {
  return guarded([&] {
    COHROOF_REQUIRE(state && out, "negativity_roof_direct: null argument");
    const cohroof::BipartiteState bi(state->rho, state->dim_a, state->dim_b);
    return emit(cohroof::negativity_roof_direct(bi, to_config(cfg)), out);
  });
}

void cohroof_result_destroy(cohroof_result* result) { delete result; }

double cohroof_result_value(const cohroof_result* result) {
  return result ? result->roof.value : 0.0;
}

int cohroof_result_is_analytic(const cohroof_result* result) {
  return result && result->roof.path == cohroof::RoofPath::analytic ? 1 : 0;
}

int cohroof_result_converged(const cohroof_result* result) {
  return result && result->roof.converged() ? 1 : 0;
}

int cohroof_result_lower_bound(const cohroof_result* result, double* out) {
  if (!result || !result->roof.lower_bound) return 0;
  if (out) *out = *result->roof.lower_bound;
  return 1;
}

size_t cohroof_result_block_count(const cohroof_result* result) {
  return result ? result->roof.blocks.size() : 0;
}

cohroof_status cohroof_result_block(const cohroof_result* result, size_t block,
                                    cohroof_block_info* out) {
  return guarded([&] {
    COHROOF_REQUIRE(result && out, "result_block: null argument");
    COHROOF_REQUIRE(block < result->roof.blocks.size(), "result_block: index out of range");
    const auto& b = result->roof.blocks[block];
    out->index_count = b.indices.size();
    out->trace_weight = b.trace_weight;
    out->value = b.value;
    out->analytic = b.path == cohroof::RoofPath::analytic ? 1 : 0;
    out->converged = b.converged ? 1 : 0;
    out->method = b.method.c_str();
    return COHROOF_OK;
  });
}

cohroof_status cohroof_result_block_indices(const cohroof_result* result, size_t block,
                                            size_t* out, size_t out_len) {
  return guarded([&] {
    COHROOF_REQUIRE(result && out, "result_block_indices: null argument");
    COHROOF_REQUIRE(block < result->roof.blocks.size(), "result_block_indices: index out of range");
    const auto& idx = result->roof.blocks[block].indices;
    COHROOF_REQUIRE(out_len >= idx.size(), "result_block_indices: output buffer too small");
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = idx[i];
    return COHROOF_OK;
  });
}

size_t cohroof_result_member_count(const cohroof_result* result) {
  return result ? result->roof.ensemble.size() : 0;
}

size_t cohroof_result_member_dim(const cohroof_result* result) {
  return result ? result->roof.ensemble.dim() : 0;
}

cohroof_status cohroof_result_member(const cohroof_result* result, size_t member, double* weight,
                                     double* amplitudes, size_t amplitudes_len) {
  return guarded([&] {
    COHROOF_REQUIRE(result, "result_member: null result");
    const auto& e = result->roof.ensemble;
    COHROOF_REQUIRE(member < e.size(), "result_member: index out of range");
    const auto& m = e[member];
    if (weight) *weight = m.weight;
    if (amplitudes) {
      COHROOF_REQUIRE(amplitudes_len >= 2 * m.state.dim(),
                      "result_member: amplitude buffer too small");
      for (std::size_t i = 0; i < m.state.dim(); ++i) {
        amplitudes[2 * i] = m.state[i].real();
        amplitudes[2 * i + 1] = m.state[i].imag();
      }
    }
    return COHROOF_OK;
  });
}

size_t cohroof_result_restart_count(const cohroof_result* result) {
  return result ? result->roof.diagnostics.restarts.size() : 0;
}

cohroof_status cohroof_result_restart(const cohroof_result* result, size_t restart,
                                      cohroof_restart_info* out) {
  return guarded([&] {
    COHROOF_REQUIRE(result && out, "result_restart: null argument");
    const auto& rs = result->roof.diagnostics.restarts;
    COHROOF_REQUIRE(restart < rs.size(), "result_restart: index out of range");
    out->best_value = rs[restart].best_value;
    out->iterations = rs[restart].iterations;
    out->final_step = rs[restart].final_step;
    out->converged = rs[restart].converged ? 1 : 0;
    return COHROOF_OK;
  });
}

size_t cohroof_result_best_restart(const cohroof_result* result) {
  return result ? result->roof.diagnostics.best_restart : 0;
}

size_t cohroof_result_rank(const cohroof_result* result) {
  return result ? result->roof.diagnostics.rank : 0;
}

size_t cohroof_result_ensemble_size(const cohroof_result* result) {
  return result ? result->roof.diagnostics.ensemble_size : 0;
}

int cohroof_result_saturated(const cohroof_result* result) {
  return result && result->roof.diagnostics.saturated ? 1 : 0;
}

}  // extern "C"
