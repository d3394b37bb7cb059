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

#include "cohroof/statecore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cohroof {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::not_hermitian: return "NotHermitian";
    case ErrorCode::not_positive_semidefinite: return "NotPositiveSemidefinite";
    case ErrorCode::trace_mismatch: return "TraceMismatch";
    case ErrorCode::not_normalized: return "NotNormalized";
    case ErrorCode::not_isometry: return "NotIsometry";
    case ErrorCode::not_x_state: return "NotXState";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::internal_inconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::dimension_mismatch, "max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix DensityMatrix::checked(ComplexMatrix raw, double trace_weight, bool allow_zero) {
  const Eigen::Index n = raw.rows();
  if (n == 0 || raw.cols() != n)
    throw Error(ErrorCode::invalid_argument, "density matrix must be square and nonempty");
  // Block weights are diagonal sums and may round just above 1.
  if (allow_zero && trace_weight > 1.0 && trace_weight - 1.0 <= tol::trace) trace_weight = 1.0;
  if (!std::isfinite(trace_weight) || trace_weight > 1.0 ||
      (allow_zero ? trace_weight < 0.0 : trace_weight <= 0.0)) {
    std::ostringstream os;
    os << "trace weight " << trace_weight << " outside " << (allow_zero ? "[0, 1]" : "(0, 1]");
    throw Error(ErrorCode::invalid_argument, os.str(), -1, -1, trace_weight);
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (!std::isfinite(raw(i, j).real()) || !std::isfinite(raw(i, j).imag()))
        throw Error(ErrorCode::invalid_argument, "non-finite entry", i, j);

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double d = std::abs(raw(i, j) - std::conj(raw(j, i)));
      if (d > tol::hermitian) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") differs from conj of (" << j << "," << i
           << ") by " << d;
        throw Error(ErrorCode::not_hermitian, os.str(), i, j, d);
      }
    }
  }

  const double tr = raw.diagonal().real().sum();
  if (std::abs(tr - trace_weight) > tol::trace) {
    std::ostringstream os;
    os << "trace " << tr << " does not match trace weight " << trace_weight;
    throw Error(ErrorCode::trace_mismatch, os.str(), -1, -1, tr);
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double minor = raw(i, i).real() * raw(j, j).real() - std::norm(raw(i, j));
      if (minor < tol::eigen_floor) {
        std::ostringstream os;
        os << "principal minor at (" << i << "," << j << ") is " << minor;
        throw Error(ErrorCode::not_positive_semidefinite, os.str(), i, j, minor);
      }
    }
  }

  const ComplexMatrix herm = 0.5 * (raw + raw.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  if (lmin < tol::eigen_floor) {
    std::ostringstream os;
    os << "smallest eigenvalue " << lmin << " below " << tol::eigen_floor;
    throw Error(ErrorCode::not_positive_semidefinite, os.str(), -1, -1, lmin);
  }
  return DensityMatrix(std::move(raw), trace_weight);
}

DensityMatrix DensityMatrix::validate(ComplexMatrix raw, double trace_weight) {
  return checked(std::move(raw), trace_weight, false);
}

DensityMatrix DensityMatrix::validate_block(ComplexMatrix raw, double trace_weight) {
  return checked(std::move(raw), trace_weight, true);
}

DensityMatrix DensityMatrix::normalized_copy() const {
  if (trace_weight_ <= 0.0)
    throw Error(ErrorCode::invalid_argument, "cannot normalize a zero-trace block");
  if (trace_weight_ == 1.0) return *this;
  return DensityMatrix(rho_ / trace_weight_, 1.0);
}

DensityMatrix validate_density(const ComplexMatrix& raw, double trace_weight) {
  return DensityMatrix::validate(raw, trace_weight);
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(ComplexVector amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.size() == 0) throw Error(ErrorCode::invalid_argument, "empty pure state");
  const double nrm = amp_.squaredNorm();
  if (!(std::abs(nrm - 1.0) <= tol::norm)) {
    std::ostringstream os;
    os << "pure state squared norm " << nrm << " is not 1";
    throw Error(ErrorCode::not_normalized, os.str(), -1, -1, nrm);
  }
}

PureState PureState::from_unnormalized(const ComplexVector& v) {
  const double nrm = v.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm))
    throw Error(ErrorCode::invalid_argument, "cannot normalize a zero vector");
  return PureState(v / nrm);
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorCode::invalid_argument, "basis index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v));
}

// ---------------------------------------------------------------------------
// Ensemble

Ensemble::Ensemble(std::vector<EnsembleMember> members, double target_trace)
    : members_(std::move(members)), target_trace_(target_trace) {
  if (members_.empty())
    throw Error(ErrorCode::invalid_argument, "ensemble needs at least one member");
  dim_ = members_.front().state.dim();
  double total = 0.0;
  for (std::size_t k = 0; k < members_.size(); ++k) {
    const auto& m = members_[k];
    if (m.state.dim() != dim_)
      throw Error(ErrorCode::dimension_mismatch, "ensemble members differ in dimension",
                  static_cast<long>(k));
    if (!(m.weight > 0.0) || !std::isfinite(m.weight))
      throw Error(ErrorCode::invalid_argument, "ensemble weights must be positive",
                  static_cast<long>(k), -1, m.weight);
    total += m.weight;
  }
  if (std::abs(total - target_trace_) > tol::trace) {
    std::ostringstream os;
    os << "ensemble weights sum to " << total << ", expected " << target_trace_;
    throw Error(ErrorCode::trace_mismatch, os.str(), -1, -1, total);
  }
}

Ensemble Ensemble::empty(std::size_t dim) { return Ensemble(dim); }

ComplexMatrix Ensemble::reconstruct() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (const auto& m : members_) {
    const ComplexVector& a = m.state.amplitudes();
    rho.noalias() += m.weight * (a * a.adjoint());
  }
  return rho;
}

DensityMatrix ensemble_to_state(const Ensemble& e) {
  if (e.empty()) throw Error(ErrorCode::invalid_argument, "empty ensemble has no state");
  return DensityMatrix::validate(e.reconstruct(), e.target_trace());
}

// ---------------------------------------------------------------------------
// Isometry

Isometry::Isometry(ComplexMatrix u) : u_(std::move(u)) {
  if (u_.rows() == 0 || u_.cols() < u_.rows())
    throw Error(ErrorCode::not_isometry, "isometry needs 0 < rows <= cols");
  const ComplexMatrix gram = u_ * u_.adjoint();
  const ComplexMatrix eye = ComplexMatrix::Identity(u_.rows(), u_.rows());
  const double dev = max_abs_diff(gram, eye);
  if (!(dev <= tol::isometry)) {
    std::ostringstream os;
    os << "U U^dagger deviates from identity by " << dev;
    throw Error(ErrorCode::not_isometry, os.str(), -1, -1, dev);
  }
}

Isometry Isometry::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return Isometry(ComplexMatrix::Identity(k, k));
}

// ---------------------------------------------------------------------------
// Decompositions

Ensemble spectral_ensemble(const DensityMatrix& rho) {
  const ComplexMatrix herm = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
  const RealVector& vals = es.eigenvalues();  // ascending
  std::vector<EnsembleMember> members;
  for (Eigen::Index k = vals.size() - 1; k >= 0; --k) {
    if (vals(k) < tol::spectral_drop) continue;
    ComplexVector v = es.eigenvectors().col(k);
    // Canonical phase: the largest amplitude is real and positive.
    Eigen::Index top = 0;
    v.cwiseAbs2().maxCoeff(&top);
    v *= std::conj(v(top)) / std::abs(v(top));
    members.push_back({vals(k), PureState::from_unnormalized(v)});
  }
  if (members.empty()) return Ensemble::empty(rho.dim());
  // Dropped eigenvalues are below the floor; rescale so the trace matches exactly.
  double total = 0.0;
  for (const auto& m : members) total += m.weight;
  const double scale = rho.trace_weight() / total;
  if (std::abs(scale - 1.0) < 1e-9)
    for (auto& m : members) m.weight *= scale;
  return Ensemble(std::move(members), rho.trace_weight());
}

Ensemble hjw_transform(const Ensemble& e, const Isometry& u) {
  if (u.rows() != e.size()) {
    std::ostringstream os;
    os << "isometry has " << u.rows() << " rows but ensemble has " << e.size() << " members";
    throw Error(ErrorCode::dimension_mismatch, os.str());
  }
  const auto n = static_cast<Eigen::Index>(e.dim());
  const auto rank = static_cast<Eigen::Index>(e.size());
  ComplexMatrix seed(n, rank);
  for (Eigen::Index l = 0; l < rank; ++l)
    seed.col(l) = std::sqrt(e[static_cast<std::size_t>(l)].weight) *
                  e[static_cast<std::size_t>(l)].state.amplitudes();

  const ComplexMatrix mixed = seed * u.matrix();
  std::vector<EnsembleMember> out;
  out.reserve(u.cols());
  for (Eigen::Index k = 0; k < mixed.cols(); ++k) {
    const double q = mixed.col(k).squaredNorm();
    if (q < tol::transform_drop) continue;
    out.push_back({q, PureState(mixed.col(k) / std::sqrt(q))});
  }
  return Ensemble(std::move(out), e.target_trace());
}

}  // namespace cohroof
