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

#include "cohroof/entangle.hpp"

#include <cmath>
#include <sstream>

#include "cohroof/xanalytic.hpp"

namespace cohroof {

BipartiteState::BipartiteState(DensityMatrix state, std::size_t dim_a, std::size_t dim_b)
    : state_(std::move(state)), dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a == 0 || dim_b == 0 || dim_a * dim_b != state_.dim()) {
    std::ostringstream os;
    os << "dims " << dim_a << "x" << dim_b << " do not factor a " << state_.dim()
       << "-dim state";
    throw Error(ErrorCode::dimension_mismatch, os.str());
  }
}

BipartiteState schmidt_lift(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  const auto big = static_cast<Eigen::Index>(d * d);
  ComplexMatrix out = ComplexMatrix::Zero(big, big);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out(static_cast<Eigen::Index>(i * d + i), static_cast<Eigen::Index>(j * d + j)) = rho(i, j);
  return BipartiteState(DensityMatrix::validate(std::move(out), rho.trace_weight()), d, d);
}

PureState schmidt_lift(const PureState& psi) {
  const std::size_t d = psi.dim();
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d * d));
  for (std::size_t i = 0; i < d; ++i) v(static_cast<Eigen::Index>(i * d + i)) = psi[i];
  return PureState(std::move(v));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                Subsystem which) {
  const auto n = static_cast<Eigen::Index>(dim_a * dim_b);
  if (m.rows() != n || m.cols() != n)
    throw Error(ErrorCode::dimension_mismatch, "partial_transpose: matrix does not match dims");
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j)
      for (std::size_t k = 0; k < dim_a; ++k)
        for (std::size_t l = 0; l < dim_b; ++l) {
          const auto row = static_cast<Eigen::Index>(i * dim_b + j);
          const auto col = static_cast<Eigen::Index>(k * dim_b + l);
          if (which == Subsystem::a)
            out(static_cast<Eigen::Index>(k * dim_b + j), static_cast<Eigen::Index>(i * dim_b + l)) =
                m(row, col);
          else
            out(static_cast<Eigen::Index>(i * dim_b + l), static_cast<Eigen::Index>(k * dim_b + j)) =
                m(row, col);
        }
  return out;
}

ComplexMatrix partial_transpose(const BipartiteState& rho, Subsystem which) {
  return partial_transpose(rho.matrix(), rho.dim_a(), rho.dim_b(), which);
}

NegativityForms negativity_forms(const BipartiteState& rho, Subsystem which) {
  const ComplexMatrix pt = partial_transpose(rho, which);
  const ComplexMatrix herm = 0.5 * (pt + pt.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
  double trace_norm = 0.0;
  double negative = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double lam = es.eigenvalues()(k);
    trace_norm += std::abs(lam);
    if (lam < 0.0) negative += lam;
  }
  NegativityForms forms{0.5 * (trace_norm - rho.state().trace_weight()), std::abs(negative)};
  const double gap = std::abs(forms.trace_norm_form - forms.eigenvalue_form);
  if (gap > 1e-8) {
    std::ostringstream os;
    os << "negativity forms disagree by " << gap;
    throw Error(ErrorCode::internal_inconsistency, os.str(), -1, -1, gap);
  }
  return forms;
}

double negativity(const BipartiteState& rho) { return negativity_forms(rho).eigenvalue_form; }

namespace {

double weighted_negativity(const Complex* w, std::size_t dim_a, std::size_t dim_b) {
  // Row-major reshape: amplitude of |i>|j> is w[i * dim_b + j].
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      amp(w, static_cast<Eigen::Index>(dim_a), static_cast<Eigen::Index>(dim_b));
  const Eigen::JacobiSVD<ComplexMatrix> svd(amp);
  const RealVector& s = svd.singularValues();
  return 0.5 * (s.sum() * s.sum() - s.squaredNorm());
}

}  // namespace

double pure_negativity(const PureState& psi, std::size_t dim_a, std::size_t dim_b) {
  if (psi.dim() != dim_a * dim_b)
    throw Error(ErrorCode::dimension_mismatch, "pure_negativity: state does not match dims");
  return weighted_negativity(psi.amplitudes().data(), dim_a, dim_b);
}

PureFunctional negativity_functional(std::size_t dim_a, std::size_t dim_b) {
  return {"negativity", [dim_a, dim_b](const Complex* w, std::size_t n) {
            if (n != dim_a * dim_b)
              throw Error(ErrorCode::dimension_mismatch, "negativity functional: bad length");
            return weighted_negativity(w, dim_a, dim_b);
          }};
}

RoofResult negativity_convex_roof_mc(const DensityMatrix& rho, const RoofConfig& cfg) {
  RoofResult result = concurrence(rho, cfg);
  result.value *= 0.5;
  if (result.lower_bound) *result.lower_bound *= 0.5;
  for (auto& b : result.blocks) b.value *= 0.5;
  if (!result.ensemble.empty()) {
    std::vector<EnsembleMember> lifted;
    lifted.reserve(result.ensemble.size());
    for (const auto& m : result.ensemble) lifted.push_back({m.weight, schmidt_lift(m.state)});
    result.ensemble = Ensemble(std::move(lifted), result.ensemble.target_trace());
  }
  return result;
}

RoofResult negativity_roof_direct(const BipartiteState& rho, const RoofConfig& cfg) {
  RoofConfig minimize = cfg;
  minimize.direction = RoofDirection::minimize;
  return roof_optimize(rho.state(), negativity_functional(rho.dim_a(), rho.dim_b()), minimize);
}

}  // namespace cohroof
