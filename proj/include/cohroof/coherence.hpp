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

#include "cohroof/statecore.hpp"

namespace cohroof {

struct RoofConfig;
struct RoofResult;

/// Sum of moduli of the off-diagonal entries of any square matrix. The
/// moduli are summed in sorted order, so the result is invariant (bit for
/// bit) under simultaneous row/column permutations.
double offdiagonal_l1(const ComplexMatrix& m);

/// l1-norm coherence of a (possibly subnormalized) state.
double l1_coherence(const DensityMatrix& rho);

/// l1-norm coherence of |psi><psi|, sum_{i != j} |a_i||a_j|. Evaluates both
/// the pairwise sum and (sum_i |a_i|)^2 - 1 and throws internal_inconsistency
/// if they disagree by more than 1e-12.
double pure_l1(const PureState& psi);

/// sum_k p_k pure_l1(psi_k).
double average_l1(const Ensemble& e);

/// True iff every off-diagonal modulus is <= tolerance.
bool is_incoherent(const DensityMatrix& rho, double tolerance = tol::incoherence);

/// Maximal average l1 coherence over all decompositions (concave roof),
/// computed numerically; cfg.direction is forced to maximize.
RoofResult coherence_of_assistance(const DensityMatrix& rho, const RoofConfig& cfg);

}  // namespace cohroof
