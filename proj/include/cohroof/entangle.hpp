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

// Schmidt-correlated lifts rho -> sum_ij rho_ij |ii><jj| and negativity.
// Bipartite index convention: |i> (x) |j>  <->  i * dim_b + j.

#include "cohroof/convexroof.hpp"
#include "cohroof/statecore.hpp"

namespace cohroof {

class BipartiteState {
 public:
  BipartiteState(DensityMatrix state, std::size_t dim_a, std::size_t dim_b);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  const DensityMatrix& state() const noexcept { return state_; }
  const ComplexMatrix& matrix() const noexcept { return state_.matrix(); }

 private:
  DensityMatrix state_;
  std::size_t dim_a_;
  std::size_t dim_b_;
};

enum class Subsystem { a, b };

BipartiteState schmidt_lift(const DensityMatrix& rho);

/// Pure state sum_i a_i |ii>.
PureState schmidt_lift(const PureState& psi);

/// Transpose on one tensor factor. Works on any (d_a d_b)-square matrix.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                Subsystem which = Subsystem::a);
ComplexMatrix partial_transpose(const BipartiteState& rho, Subsystem which = Subsystem::a);

/// (||rho^T_A||_1 - tr rho) / 2 and |sum of negative eigenvalues of rho^T_A|,
/// cross-checked against each other (internal_inconsistency beyond 1e-8).
struct NegativityForms {
  double trace_norm_form;
  double eigenvalue_form;
};
NegativityForms negativity_forms(const BipartiteState& rho, Subsystem which = Subsystem::a);

/// Negativity of the partial transpose on subsystem A (eigenvalue form).
double negativity(const BipartiteState& rho);

/// Negativity of |psi><psi| from the Schmidt coefficients s of the
/// dim_a x dim_b amplitude matrix: ((sum s)^2 - 1) / 2.
double pure_negativity(const PureState& psi, std::size_t dim_a, std::size_t dim_b);

/// Negativity functional for roof_optimize on a dim_a x dim_b system.
PureFunctional negativity_functional(std::size_t dim_a, std::size_t dim_b);

/// Convex-roof negativity of the lift of rho, obtained as concurrence / 2;
/// the ensemble is the concurrence ensemble lifted member by member.
RoofResult negativity_convex_roof_mc(const DensityMatrix& rho, const RoofConfig& cfg);

/// Convex-roof negativity computed directly on the bipartite state, with no
/// assumption on the form of the ensemble members.
RoofResult negativity_roof_direct(const BipartiteState& rho, const RoofConfig& cfg);

}  // namespace cohroof
