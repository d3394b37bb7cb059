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

// Quantum state value types in a fixed reference basis |0>, ..., |n-1>.
//
// Every type validates its invariants on construction and is immutable
// afterwards, so a DensityMatrix / PureState / Ensemble / Isometry in hand is
// always a valid one.

#include <cstddef>
#include <vector>

#include "cohroof/types.hpp"

namespace cohroof {

/// Hermitian, positive semidefinite matrix with trace equal to trace_weight.
/// trace_weight == 1 is a normalized state; trace_weight < 1 marks a
/// subnormalized block of a larger state.
class DensityMatrix {
 public:
  /// Validates `raw` against trace_weight in (0, 1].
  static DensityMatrix validate(ComplexMatrix raw, double trace_weight = 1.0);

  /// Same checks, but admits trace_weight == 0 (vanishing direct-sum blocks).
  static DensityMatrix validate_block(ComplexMatrix raw, double trace_weight);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(rho_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return rho_; }
  double trace_weight() const noexcept { return trace_weight_; }
  bool normalized() const noexcept { return trace_weight_ == 1.0; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  /// The same matrix divided by its trace weight.
  DensityMatrix normalized_copy() const;

 private:
  DensityMatrix(ComplexMatrix rho, double trace_weight)
      : rho_(std::move(rho)), trace_weight_(trace_weight) {}
  static DensityMatrix checked(ComplexMatrix raw, double trace_weight, bool allow_zero);

  ComplexMatrix rho_;
  double trace_weight_;
};

/// Free-function spelling of DensityMatrix::validate.
DensityMatrix validate_density(const ComplexMatrix& raw, double trace_weight = 1.0);

/// Normalized amplitude vector.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes);
  /// Normalizes a nonzero vector instead of rejecting it.
  static PureState from_unnormalized(const ComplexVector& v);
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(amp_.size()); }
  const ComplexVector& amplitudes() const noexcept { return amp_; }
  Complex operator[](std::size_t i) const { return amp_(static_cast<Eigen::Index>(i)); }
  ComplexMatrix projector() const { return amp_ * amp_.adjoint(); }

 private:
  ComplexVector amp_;
};

struct EnsembleMember {
  double weight;
  PureState state;
};

/// Weighted pure states {(p_k, |psi_k>)} with sum p_k == target_trace.
class Ensemble {
 public:
  Ensemble(std::vector<EnsembleMember> members, double target_trace);
  /// Empty ensemble of a vanishing block.
  static Ensemble empty(std::size_t dim);

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t dim() const noexcept { return dim_; }
  double target_trace() const noexcept { return target_trace_; }
  const std::vector<EnsembleMember>& members() const noexcept { return members_; }
  const EnsembleMember& operator[](std::size_t k) const { return members_[k]; }

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  /// sum_k p_k |psi_k><psi_k| without any validation.
  ComplexMatrix reconstruct() const;

 private:
  Ensemble(std::size_t dim) : dim_(dim), target_trace_(0.0) {}

  std::vector<EnsembleMember> members_;
  std::size_t dim_ = 0;
  double target_trace_ = 0.0;
};

/// rows x cols matrix (rows <= cols) with U U^dagger = I.
class Isometry {
 public:
  explicit Isometry(ComplexMatrix u);
  static Isometry identity(std::size_t n);

  std::size_t rows() const noexcept { return static_cast<std::size_t>(u_.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(u_.cols()); }
  const ComplexMatrix& matrix() const noexcept { return u_; }

 private:
  ComplexMatrix u_;
};

/// Entrywise sum of the weighted projectors, validated at the ensemble's
/// target trace.
DensityMatrix ensemble_to_state(const Ensemble& e);

/// Eigen-decomposition of rho as an ensemble, weights nonincreasing,
/// eigenvalues below 1e-12 dropped. Each eigenvector is phased so its
/// largest amplitude is real and positive.
Ensemble spectral_ensemble(const DensityMatrix& rho);

/// sqrt(q_k)|phi_k> = sum_l U_lk sqrt(p_l)|psi_l>. Members with q_k < 1e-14
/// are dropped. Throws not_isometry / dimension_mismatch.
Ensemble hjw_transform(const Ensemble& e, const Isometry& u);

/// max_ij |a_ij - b_ij|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace cohroof
