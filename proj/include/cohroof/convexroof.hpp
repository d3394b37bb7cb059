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

#pragma once

// Numerical convex / concave roofs of pure-state functionals.
//
// Every decomposition of rho is reached as hjw_transform(spectral_ensemble(rho), U)
// for some rank x m isometry U. The search starts from random isometries and
// refines them by right-multiplying with pair rotations exp(t X), where X is a
// real or imaginary off-diagonal skew-Hermitian generator of u(m). Each
// generator keeps its own step, grown on success and halved on failure, so the
// method needs no derivatives of the (nonsmooth) objective.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cohroof/statecore.hpp"

namespace cohroof {

enum class RoofDirection { minimize, maximize };
enum class RoofPath { analytic, numeric };

const char* to_string(RoofPath path) noexcept;

/// A pure-state functional f, evaluated through its homogeneous extension
/// g(w) = |w|^2 f(w / |w|) on unnormalized amplitude vectors (g(0) = 0). The
/// weighted average of f over an ensemble is then sum_k g(sqrt(p_k) psi_k).
struct PureFunctional {
  std::string name;
  std::function<double(const Complex* amplitudes, std::size_t n)> weighted;

  double operator()(const PureState& psi) const {
    return weighted(psi.amplitudes().data(), psi.dim());
  }
  double average(const Ensemble& e) const;
};

/// g(w) = (sum_i |w_i|)^2 - sum_i |w_i|^2, the l1 coherence functional.
PureFunctional l1_functional();

/// Wraps a functional given on normalized states.
PureFunctional make_functional(std::string name, std::function<double(const PureState&)> f);

struct RoofConfig {
  std::size_t ensemble_size = 0;  ///< m; 0 selects rank^2
  std::size_t ensemble_cap = 0;   ///< upper bound on m; 0 selects rank^2
  std::size_t restarts = 16;
  std::size_t max_iterations = 2000;  ///< sweeps per restart
  double convergence_tol = 1e-8;      ///< largest generator step at convergence
  std::uint64_t seed = 0;
  RoofDirection direction = RoofDirection::minimize;
  std::size_t threads = 1;  ///< restarts run on this many threads; results do not depend on it
};

struct RestartTrace {
  double best_value = 0.0;
  std::size_t iterations = 0;
  double final_step = 0.0;
  bool converged = false;
  std::vector<double> history;  ///< objective after each sweep
};

struct RoofDiagnostics {
  std::vector<RestartTrace> restarts;
  std::size_t best_restart = 0;
  std::size_t rank = 0;
  std::size_t ensemble_size = 0;
  std::size_t members_used = 0;
  /// The best decomposition gives weight to all m members; a larger m might
  /// improve on it.
  bool saturated = false;
  bool converged = true;
};

/// How one direct-sum block of a state was solved.
struct BlockReport {
  std::vector<std::size_t> indices;
  double trace_weight = 0.0;
  double value = 0.0;
  RoofPath path = RoofPath::analytic;
  std::string method;  ///< "singleton", "qubit", "x-state", "convex-roof", "empty"
  bool converged = true;
};

struct RoofResult {
  double value = 0.0;
  Ensemble ensemble = Ensemble::empty(1);
  RoofPath path = RoofPath::numeric;
  RoofDiagnostics diagnostics;
  std::vector<BlockReport> blocks;
  std::optional<double> lower_bound;

  bool converged() const noexcept { return diagnostics.converged; }
};

/// Standard complex Gaussian rows x cols matrix, orthonormalized row-wise,
/// with the QR phase ambiguity fixed so the law is unitarily invariant.
Isometry random_isometry(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

/// Independent generator stream for restart `index` of a run seeded by `seed`.
std::mt19937_64 restart_stream(std::uint64_t seed, std::size_t index);

/// Best decomposition found for the convex (minimize) or concave (maximize)
/// roof of f at rho. In minimize mode the value is an upper bound on the
/// roof. An iteration cap hit with a step above cfg.convergence_tol marks the
/// result unconverged but it is still returned.
RoofResult roof_optimize(const DensityMatrix& rho, const PureFunctional& f, const RoofConfig& cfg);

}  // namespace cohroof
