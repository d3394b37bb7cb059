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

#include "cohroof/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cohroof {

ComplexMatrix BlockDecomposition::reassemble() const {
  const auto n = static_cast<Eigen::Index>(dim);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& b : blocks)
    for (std::size_t r = 0; r < b.indices.size(); ++r)
      for (std::size_t c = 0; c < b.indices.size(); ++c)
        out(static_cast<Eigen::Index>(b.indices[r]), static_cast<Eigen::Index>(b.indices[c])) =
            b.state(r, c);
  return out;
}

BlockDecomposition block_split(const DensityMatrix& rho, double link_tol) {
  if (link_tol < 0.0) throw Error(ErrorCode::invalid_argument, "negative link tolerance");
  const std::size_t n = rho.dim();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(rho(i, j)) > link_tol || std::abs(rho(j, i)) > link_tol) {
        const std::size_t a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

  // Roots are the smallest index of their component, so scanning i upward
  // yields blocks ordered by smallest index with sorted members.
  std::vector<std::vector<std::size_t>> groups;
  std::vector<long> group_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    if (group_of[root] < 0) {
      group_of[root] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(group_of[root])].push_back(i);
  }

  BlockDecomposition bd;
  bd.dim = n;
  const bool single = groups.size() == 1;
  for (auto& idx : groups) {
    const auto k = static_cast<Eigen::Index>(idx.size());
    ComplexMatrix sub(k, k);
    bool vanishing = true;
    double sigma = 0.0;
    for (Eigen::Index r = 0; r < k; ++r) {
      for (Eigen::Index c = 0; c < k; ++c)
        sub(r, c) = rho(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
      sigma += sub(r, r).real();
      if (sub(r, r).real() > link_tol) vanishing = false;
    }
    bd.permutation.insert(bd.permutation.end(), idx.begin(), idx.end());
    bd.blocks.push_back({std::move(idx), DensityMatrix::validate_block(
                                              std::move(sub), vanishing ? 0.0 : single ? rho.trace_weight() : sigma)});
  }
  return bd;
}

std::vector<EnsembleMember> embed_members(const Ensemble& local,
                                          const std::vector<std::size_t>& indices,
                                          std::size_t dim) {
  if (!local.empty() && local.dim() != indices.size())
    throw Error(ErrorCode::dimension_mismatch, "block ensemble does not match its index set");
  std::vector<EnsembleMember> out;
  out.reserve(local.size());
  for (const auto& m : local) {
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < indices.size(); ++r)
      v(static_cast<Eigen::Index>(indices[r])) = m.state[r];
    out.push_back({m.weight, PureState(std::move(v))});
  }
  return out;
}

AdditiveResult additive_concurrence(const BlockDecomposition& bd, const BlockSolver& solver) {
  AdditiveResult result;
  std::vector<EnsembleMember> members;
  double total_trace = 0.0;
  for (const auto& b : bd.blocks) {
    BlockSolution sol;
    if (b.state.trace_weight() == 0.0) {
      sol.ensemble = Ensemble::empty(b.indices.size());
      sol.method = "empty";
    } else {
      sol = solver(b.state);
      auto embedded = embed_members(sol.ensemble, b.indices, bd.dim);
      members.insert(members.end(), std::make_move_iterator(embedded.begin()),
                     std::make_move_iterator(embedded.end()));
      total_trace += b.state.trace_weight();
    }
    result.value += sol.value;
    result.per_block.push_back(std::move(sol));
  }
  result.ensemble = members.empty() ? Ensemble::empty(bd.dim)
                                    : Ensemble(std::move(members), total_trace);
  return result;
}

}  // namespace cohroof
