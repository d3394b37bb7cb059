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

// Direct-sum structure of a density matrix in the reference basis.

#include <functional>
#include <string>
#include <vector>

#include "cohroof/convexroof.hpp"
#include "cohroof/statecore.hpp"

namespace cohroof {

struct Block {
  std::vector<std::size_t> indices;  ///< sorted basis indices of the block
  DensityMatrix state;               ///< subnormalized, trace_weight = sigma_i
};

/// rho = sigma_1 rho_1 (+) ... (+) sigma_K rho_K up to a basis permutation.
/// Blocks are ordered by their smallest index; `permutation` lists the
/// original indices in block order, so rho restricted to it is block diagonal.
struct BlockDecomposition {
  std::size_t dim = 0;
  std::vector<Block> blocks;
  std::vector<std::size_t> permutation;

  /// The full n x n matrix rebuilt from the blocks.
  ComplexMatrix reassemble() const;
};

/// Connected components of the graph linking i and j whenever |rho_ij| > link_tol.
BlockDecomposition block_split(const DensityMatrix& rho, double link_tol = tol::block_link);

/// Solution of one block, expressed in the block's local basis.
struct BlockSolution {
  double value = 0.0;
  Ensemble ensemble = Ensemble::empty(1);
  RoofPath path = RoofPath::analytic;
  std::string method;
  std::optional<RoofDiagnostics> diagnostics;
};

using BlockSolver = std::function<BlockSolution(const DensityMatrix& block)>;

struct AdditiveResult {
  double value = 0.0;
  Ensemble ensemble = Ensemble::empty(1);  ///< in the full basis
  std::vector<BlockSolution> per_block;
};

/// Sums block values in block order and embeds the union of block ensembles
/// back into the full basis. Zero-trace blocks are not passed to the solver;
/// they contribute 0 and no members.
AdditiveResult additive_concurrence(const BlockDecomposition& bd, const BlockSolver& solver);

/// Ensemble on `dim` basis states whose members are those of `local`
/// placed at `indices`.
std::vector<EnsembleMember> embed_members(const Ensemble& local,
                                          const std::vector<std::size_t>& indices,
                                          std::size_t dim);

}  // namespace cohroof
