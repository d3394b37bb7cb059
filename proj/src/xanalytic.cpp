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

#include "cohroof/xanalytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "cohroof/coherence.hpp"

namespace cohroof {

AnalyticResult qubit_concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 2)
    throw Error(ErrorCode::dimension_mismatch, "qubit_concurrence needs a 2-dim state");
  const double value = 2.0 * std::abs(rho(0, 1));

  const std::size_t a = rho(1, 1).real() < rho(0, 0).real() ? 1 : 0;
  const std::size_t b = 1 - a;
  const double raa = rho(a, a).real();
  const double rbb = rho(b, b).real();
  const Complex rab = rho(a, b);
  if (raa < tol::spectral_drop) return {value, spectral_ensemble(rho)};

  const double ratio = std::norm(rab) / raa;
  const double p1 = raa + ratio;
  const double p2 = rbb - ratio;
  if (p2 < -tol::trace) return {value, spectral_ensemble(rho)};

  ComplexVector anchored(2);
  anchored(static_cast<Eigen::Index>(a)) = std::sqrt(raa);
  anchored(static_cast<Eigen::Index>(b)) = std::conj(rab) / std::sqrt(raa);
  std::vector<EnsembleMember> members;
  members.push_back({p1, PureState(anchored / std::sqrt(p1))});
  if (p2 >= tol::transform_drop) members.push_back({p2, PureState::basis(2, b)});
  return {value, Ensemble(std::move(members), rho.trace_weight())};
}

XPairing xstate_pairing(const DensityMatrix& rho, double tolerance) {
  if (tolerance < 0.0) throw Error(ErrorCode::invalid_argument, "negative tolerance");
  const std::size_t n = rho.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || j == n - 1 - i) continue;
      const double mod = std::abs(rho(i, j));
      if (mod > tolerance) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") with modulus " << mod << " lies off the X pattern";
        throw Error(ErrorCode::not_x_state, os.str(), static_cast<long>(i),
                    static_cast<long>(j), mod);
      }
    }
  XPairing out;
  for (std::size_t i = 0; i < n / 2; ++i) out.pairs.emplace_back(i, n - 1 - i);
  if (n % 2 == 1) out.center = n / 2;
  return out;
}

namespace {

// The xstate decomposition pieces, kept per pair so the dispatcher can report them.
struct XPiece {
  std::vector<std::size_t> indices;
  double trace_weight;
  double value;
  std::vector<EnsembleMember> members;
};

std::vector<XPiece> xstate_pieces(const DensityMatrix& rho) {
  const XPairing pairing = xstate_pairing(rho);
  const std::size_t n = rho.dim();
  std::vector<XPiece> pieces;
  for (const auto& [i, j] : pairing.pairs) {
    ComplexMatrix sub(2, 2);
    sub << rho(i, i), rho(i, j), rho(j, i), rho(j, j);
    const double weight = sub(0, 0).real() + sub(1, 1).real();
    XPiece piece{{i, j}, weight, 2.0 * std::abs(rho(i, j)), {}};
    if (!(rho(i, i).real() <= tol::block_link && rho(j, j).real() <= tol::block_link)) {
      const AnalyticResult local = qubit_concurrence(DensityMatrix::validate_block(sub, weight));
      piece.members = embed_members(local.ensemble, piece.indices, n);
    }
    pieces.push_back(std::move(piece));
  }
  if (pairing.center) {
    const std::size_t c = *pairing.center;
    const double w = rho(c, c).real();
    XPiece piece{{c}, w, 0.0, {}};
    if (w >= tol::transform_drop) piece.members.push_back({w, PureState::basis(n, c)});
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

Ensemble merge_pieces(std::vector<XPiece>& pieces, std::size_t dim, double trace) {
  std::vector<EnsembleMember> members;
  for (auto& p : pieces)
    members.insert(members.end(), std::make_move_iterator(p.members.begin()),
                   std::make_move_iterator(p.members.end()));
  return members.empty() ? Ensemble::empty(dim) : Ensemble(std::move(members), trace);
}

// Local indices sorted by diagonal entry (descending), then by the sorted
// moduli of their row; ties keep the original order.
std::vector<std::size_t> canonical_order(const DensityMatrix& block) {
  const std::size_t n = block.dim();
  std::vector<std::vector<double>> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    keys[i].push_back(block(i, i).real());
    std::vector<double> row;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) row.push_back(std::abs(block(i, j)));
    std::sort(row.begin(), row.end(), std::greater<>());
    keys[i].insert(keys[i].end(), row.begin(), row.end());
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
  return order;
}

BlockSolution solve_block(const DensityMatrix& block, const RoofConfig& cfg) {
  BlockSolution sol;
  if (block.dim() == 1) {
    sol.ensemble = Ensemble({{block.trace_weight(), PureState::basis(1, 0)}}, block.trace_weight());
    sol.method = "singleton";
    return sol;
  }
  if (block.dim() == 2) {
    AnalyticResult r = qubit_concurrence(block);
    sol.value = r.value;
    sol.ensemble = std::move(r.ensemble);
    sol.method = "qubit";
    return sol;
  }
  // The search runs in a canonical basis order so that relabeled copies of a
  // block are solved identically.
  const std::vector<std::size_t> order = canonical_order(block);
  const auto k = static_cast<Eigen::Index>(order.size());
  ComplexMatrix sorted(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c)
      sorted(r, c) = block(order[static_cast<std::size_t>(r)], order[static_cast<std::size_t>(c)]);
  const double sigma = block.trace_weight();
  RoofResult roof = roof_optimize(DensityMatrix::validate_block(std::move(sorted), sigma).normalized_copy(),
                                  l1_functional(), cfg);
  std::vector<EnsembleMember> scaled;
  for (const auto& m : roof.ensemble) {
    ComplexVector amp(k);
    for (Eigen::Index r = 0; r < k; ++r) amp(static_cast<Eigen::Index>(order[static_cast<std::size_t>(r)])) = m.state[static_cast<std::size_t>(r)];
    scaled.push_back({sigma * m.weight, PureState(std::move(amp))});
  }
  sol.value = sigma * roof.value;
  sol.ensemble = Ensemble(std::move(scaled), sigma);
  sol.path = RoofPath::numeric;
  sol.method = "convex-roof";
  sol.diagnostics = std::move(roof.diagnostics);
  return sol;
}

}  // namespace

AnalyticResult xstate_concurrence(const DensityMatrix& rho) {
  std::vector<XPiece> pieces = xstate_pieces(rho);
  double value = 0.0;
  for (const auto& p : pieces) value += p.value;
  return {value, merge_pieces(pieces, rho.dim(), rho.trace_weight())};
}

RoofResult concurrence(const DensityMatrix& rho, const RoofConfig& cfg) {
  if (!rho.normalized())
    throw Error(ErrorCode::invalid_argument, "concurrence expects a normalized state");
  RoofConfig minimize = cfg;
  minimize.direction = RoofDirection::minimize;

  RoofResult result;
  result.lower_bound = l1_coherence(rho);
  result.path = RoofPath::analytic;

  bool x_shaped = true;
  try {
    xstate_pairing(rho);
  } catch (const Error&) {
    x_shaped = false;
  }

  if (x_shaped) {
    std::vector<XPiece> pieces = xstate_pieces(rho);
    for (const auto& p : pieces) {
      result.value += p.value;
      result.blocks.push_back({p.indices, p.trace_weight, p.value, RoofPath::analytic,
                               p.indices.size() == 1 ? "singleton" : "x-state", true});
    }
    result.ensemble = merge_pieces(pieces, rho.dim(), rho.trace_weight());
    return result;
  }

  const BlockDecomposition bd = block_split(rho);
  AdditiveResult add = additive_concurrence(
      bd, [&](const DensityMatrix& block) { return solve_block(block, minimize); });

  result.value = add.value;
  result.ensemble = std::move(add.ensemble);
  auto& diag = result.diagnostics;
  for (std::size_t b = 0; b < bd.blocks.size(); ++b) {
    const BlockSolution& sol = add.per_block[b];
    BlockReport report{bd.blocks[b].indices, bd.blocks[b].state.trace_weight(), sol.value,
                       sol.path, sol.method, true};
    if (sol.diagnostics) {
      result.path = RoofPath::numeric;
      report.converged = sol.diagnostics->converged;
      diag.converged = diag.converged && sol.diagnostics->converged;
      if (sol.diagnostics->rank > diag.rank) {
        diag.rank = sol.diagnostics->rank;
        diag.ensemble_size = sol.diagnostics->ensemble_size;
        diag.members_used = sol.diagnostics->members_used;
        diag.saturated = sol.diagnostics->saturated;
        diag.best_restart = sol.diagnostics->best_restart + diag.restarts.size();
      }
      diag.restarts.insert(diag.restarts.end(), sol.diagnostics->restarts.begin(),
                           sol.diagnostics->restarts.end());
    }
    result.blocks.push_back(std::move(report));
  }
  return result;
}

}  // namespace cohroof
