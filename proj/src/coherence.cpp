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

#include "cohroof/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "cohroof/convexroof.hpp"

namespace cohroof {

double offdiagonal_l1(const ComplexMatrix& m) {
  std::vector<double> moduli;
  moduli.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j) moduli.push_back(std::abs(m(i, j)));
  std::sort(moduli.begin(), moduli.end());
  double sum = 0.0;
  for (double v : moduli) sum += v;
  return sum;
}

double l1_coherence(const DensityMatrix& rho) { return offdiagonal_l1(rho.matrix()); }

double pure_l1(const PureState& psi) {
  const ComplexVector& a = psi.amplitudes();
  double pairwise = 0.0;
  double total = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double ai = std::abs(a(i));
    total += ai;
    for (Eigen::Index j = 0; j < a.size(); ++j)
      if (i != j) pairwise += ai * std::abs(a(j));
  }
  const double squared_form = total * total - a.squaredNorm();
  if (std::abs(pairwise - squared_form) > 1e-12) {
    std::ostringstream os;
    os << "pure_l1 forms disagree: " << pairwise << " vs " << squared_form;
    throw Error(ErrorCode::internal_inconsistency, os.str(), -1, -1, pairwise - squared_form);
  }
  return pairwise;
}

double average_l1(const Ensemble& e) {
  double sum = 0.0;
  for (const auto& m : e) sum += m.weight * pure_l1(m.state);
  return sum;
}

bool is_incoherent(const DensityMatrix& rho, double tolerance) {
  if (tolerance < 0.0) throw Error(ErrorCode::invalid_argument, "negative tolerance");
  const ComplexMatrix& m = rho.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && std::abs(m(i, j)) > tolerance) return false;
  return true;
}

RoofResult coherence_of_assistance(const DensityMatrix& rho, const RoofConfig& cfg) {
  RoofConfig maximize = cfg;
  maximize.direction = RoofDirection::maximize;
  return roof_optimize(rho, l1_functional(), maximize);
}

}  // namespace cohroof
