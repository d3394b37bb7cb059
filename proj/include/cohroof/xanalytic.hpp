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

// Closed-form coherence concurrence for qubits and X states, and the
// dispatcher that combines them with the numerical roof block by block.

#include <optional>
#include <utility>
#include <vector>

#include "cohroof/blocks.hpp"
#include "cohroof/convexroof.hpp"

namespace cohroof {

struct AnalyticResult {
  double value;
  Ensemble ensemble;
};

/// 2 |rho_01| together with a decomposition attaining it. The smaller
/// diagonal index a (ties go to 0) anchors the member with amplitudes
/// proportional to (sqrt(rho_aa), rho_ab* / sqrt(rho_aa)) and weight
/// rho_aa + |rho_ab|^2 / rho_aa; the remaining weight sits on the other basis
/// state b. Accepts subnormalized blocks. A block with rho_aa < 1e-12 is
/// treated as diagonal and gets its spectral ensemble.
AnalyticResult qubit_concurrence(const DensityMatrix& rho);

/// Anti-diagonal pairing (i, n-1-i) of an n-dimensional X state.
struct XPairing {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::optional<std::size_t> center;
};

/// Throws not_x_state carrying the first off-pattern entry (row-major order)
/// whose modulus exceeds tolerance.
XPairing xstate_pairing(const DensityMatrix& rho, double tolerance = tol::incoherence);

/// 2 sum_i |rho_{i,n-1-i}| and the union of the per-pair qubit
/// decompositions (plus the center projector for odd n).
AnalyticResult xstate_concurrence(const DensityMatrix& rho);

/// Coherence concurrence of a normalized state: X states and blocks of size
/// <= 2 are solved in closed form, larger blocks by roof_optimize with cfg
/// (direction is forced to minimize).
RoofResult concurrence(const DensityMatrix& rho, const RoofConfig& cfg);

}  // namespace cohroof
