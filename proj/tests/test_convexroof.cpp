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

#include <doctest.h>

#include <cmath>

#include "cohroof/coherence.hpp"
#include "cohroof/convexroof.hpp"
#include "cohroof/xanalytic.hpp"
#include "test_support.hpp"

using namespace cohroof;
using namespace cohroof::testing;

namespace {

// Rank-2 mixture of two fixed complex qutrit states with all coherences nonzero.
DensityMatrix phased_qutrit() {
  ComplexVector a(3), b(3);
  a << 1.0, Complex(0.0, 2.0), 0.5;
  b << 0.3, -1.0, Complex(1.0, 1.0);
  a.normalize();
  b.normalize();
  return validate_density(0.6 * a * a.adjoint() + 0.4 * b * b.adjoint());
}

bool same_result(const RoofResult& x, const RoofResult& y) {
  if (x.value != y.value || x.ensemble.size() != y.ensemble.size()) return false;
  if (x.diagnostics.best_restart != y.diagnostics.best_restart) return false;
  for (std::size_t k = 0; k < x.ensemble.size(); ++k) {
    if (x.ensemble[k].weight != y.ensemble[k].weight) return false;
    if (x.ensemble[k].state.amplitudes() != y.ensemble[k].state.amplitudes()) return false;
  }
  for (std::size_t r = 0; r < x.diagnostics.restarts.size(); ++r)
    if (x.diagnostics.restarts[r].history != y.diagnostics.restarts[r].history) return false;
  return true;
}

}  // namespace

TEST_SUITE("convexroof") {

TEST_CASE("random_isometry examples") {
  std::mt19937_64 rng(1);
  const Isometry s = random_isometry(1, 1, rng);
  CHECK(std::abs(std::abs(s.matrix()(0, 0)) - 1.0) < 1e-15);

  for (std::size_t rows = 1; rows <= 6; ++rows)
    for (std::size_t cols = rows; cols <= 12; cols += 3) {
      const Isometry u = random_isometry(rows, cols, rng);
      CHECK(u.rows() == rows);
      CHECK(u.cols() == cols);
      const ComplexMatrix g = u.matrix() * u.matrix().adjoint();
      CHECK(max_abs_diff(g, ComplexMatrix::Identity(g.rows(), g.cols())) <= 1e-10);
    }

  std::mt19937_64 r1(42), r2(42);
  CHECK(random_isometry(3, 7, r1).matrix() == random_isometry(3, 7, r2).matrix());
  CHECK_THROWS(random_isometry(3, 2, r1));
}

TEST_CASE("random_isometry entries have the unitarily invariant second moment") {
  // For a Haar row of length m, E|u_ij|^2 = 1/m and E arg(u_00) is uniform.
  std::mt19937_64 rng(9);
  const int trials = 4000;
  double second = 0.0, mean_re = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Isometry u = random_isometry(2, 4, rng);
    second += std::norm(u.matrix()(1, 2));
    mean_re += u.matrix()(0, 0).real();
  }
  CHECK(second / trials == doctest::Approx(0.25).epsilon(0.05));
  CHECK(std::abs(mean_re / trials) < 0.03);
}

TEST_CASE("restart streams are deterministic and distinct") {
  std::mt19937_64 a = restart_stream(7, 3), b = restart_stream(7, 3), c = restart_stream(7, 4),
                  d = restart_stream(8, 3);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}

TEST_CASE("rank-one input returns the unique decomposition") {
  ComplexVector v(3);
  v << 0.6, Complex(0.0, 0.64), 0.48;
  const PureState psi(v);
  RoofConfig cfg;
  cfg.restarts = 1;
  cfg.ensemble_size = 7;
  cfg.ensemble_cap = 7;
  const RoofResult r = roof_optimize(validate_density(psi.projector()), l1_functional(), cfg);
  CHECK(r.value == doctest::Approx(pure_l1(psi)).epsilon(1e-14));
  REQUIRE(r.ensemble.size() == 1);
  CHECK(r.path == RoofPath::numeric);
}

TEST_CASE("random qubits reach 2|rho_01|") {
  std::mt19937_64 rng(12);
  RoofConfig cfg;
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = random_state(2, rng);
    cfg.seed = static_cast<std::uint64_t>(t);
    const RoofResult r = roof_optimize(rho, l1_functional(), cfg);
    CHECK(r.value >= 2.0 * std::abs(rho(0, 1)) - 1e-12);
    CHECK(r.value <= 2.0 * std::abs(rho(0, 1)) + 1e-6);
    CHECK(r.diagnostics.rank == 2);
    CHECK(r.diagnostics.ensemble_size == 4);
    CHECK(max_abs_diff(r.ensemble.reconstruct(), rho.matrix()) <= 1e-10);
  }
}

TEST_CASE("the reported value is the average of the reported ensemble") {
  std::mt19937_64 rng(14);
  RoofConfig cfg;
  cfg.restarts = 3;
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix rho = random_state(3 + static_cast<std::size_t>(t % 2), rng);
    const RoofResult r = roof_optimize(rho, l1_functional(), cfg);
    CHECK(std::abs(average_l1(r.ensemble) - r.value) <= 1e-12);
    CHECK(max_abs_diff(r.ensemble.reconstruct(), rho.matrix()) <= 1e-10);
    CHECK(r.value >= l1_coherence(rho) - 1e-12);
  }
}

TEST_CASE("history is monotone in the search direction") {
  std::mt19937_64 rng(15);
  for (const RoofDirection dir : {RoofDirection::minimize, RoofDirection::maximize}) {
    RoofConfig cfg;
    cfg.direction = dir;
    cfg.restarts = 4;
    for (int t = 0; t < 5; ++t) {
      const RoofResult r = roof_optimize(random_state(4, rng), l1_functional(), cfg);
      for (const RestartTrace& tr : r.diagnostics.restarts) {
        REQUIRE(!tr.history.empty());
        for (std::size_t k = 1; k < tr.history.size(); ++k) {
          if (dir == RoofDirection::minimize)
            CHECK(tr.history[k] <= tr.history[k - 1]);
          else
            CHECK(tr.history[k] >= tr.history[k - 1]);
        }
        CHECK(tr.history.back() == tr.best_value);
      }
    }
  }
}

TEST_CASE("results depend only on the seed, not on the thread count") {
  std::mt19937_64 rng(16);
  const DensityMatrix rho = random_state(4, rng);
  RoofConfig cfg;
  cfg.seed = 123;
  cfg.restarts = 6;
  const RoofResult one = roof_optimize(rho, l1_functional(), cfg);
  cfg.threads = 3;
  const RoofResult three = roof_optimize(rho, l1_functional(), cfg);
  cfg.threads = 8;
  const RoofResult eight = roof_optimize(rho, l1_functional(), cfg);
  CHECK(same_result(one, three));
  CHECK(same_result(one, eight));
  cfg.seed = 124;
  CHECK_FALSE(same_result(one, roof_optimize(rho, l1_functional(), cfg)));
}

TEST_CASE("best restart is the lowest-index minimum") {
  std::mt19937_64 rng(17);
  RoofConfig cfg;
  cfg.restarts = 8;
  const RoofResult r = roof_optimize(random_state(3, rng), l1_functional(), cfg);
  const auto& rs = r.diagnostics.restarts;
  REQUIRE(rs.size() == 8);
  for (std::size_t k = 0; k < rs.size(); ++k) {
    CHECK(rs[k].best_value >= rs[r.diagnostics.best_restart].best_value);
    if (k < r.diagnostics.best_restart) CHECK(rs[k].best_value > rs[r.diagnostics.best_restart].best_value);
  }
}

TEST_CASE("iteration cap marks the result unconverged") {
  std::mt19937_64 rng(18);
  RoofConfig cfg;
  cfg.max_iterations = 2;
  cfg.restarts = 2;
  const DensityMatrix rho = random_state(4, rng);
  const RoofResult r = roof_optimize(rho, l1_functional(), cfg);
  CHECK_FALSE(r.converged());
  for (const auto& tr : r.diagnostics.restarts) {
    CHECK(tr.iterations == 2);
    CHECK_FALSE(tr.converged);
  }
  CHECK(max_abs_diff(r.ensemble.reconstruct(), rho.matrix()) <= 1e-10);
}

TEST_CASE("configuration errors") {
  std::mt19937_64 rng(19);
  const DensityMatrix rho = random_state(3, rng);
  RoofConfig cfg;
  cfg.ensemble_size = 2;  // below the rank
  CHECK_THROWS_AS(roof_optimize(rho, l1_functional(), cfg), Error);
  cfg = RoofConfig{};
  cfg.ensemble_size = 20;  // above the default cap rank^2
  CHECK_THROWS_AS(roof_optimize(rho, l1_functional(), cfg), Error);
  cfg.ensemble_cap = 20;
  CHECK_NOTHROW(roof_optimize(rho, l1_functional(), cfg));
  cfg = RoofConfig{};
  cfg.restarts = 0;
  CHECK_THROWS(roof_optimize(rho, l1_functional(), cfg));
  cfg = RoofConfig{};
  cfg.convergence_tol = 0.0;
  CHECK_THROWS(roof_optimize(rho, l1_functional(), cfg));
  CHECK_THROWS(roof_optimize(validate_density(ComplexMatrix::Identity(2, 2) / 4.0, 0.5), l1_functional(), RoofConfig{}));
}

TEST_CASE("numeric roof agrees with the closed form on X states") {
  std::mt19937_64 rng(20);
  RoofConfig cfg;
  for (std::size_t n : {3, 4}) {
    for (int t = 0; t < 3; ++t) {
      const DensityMatrix rho = random_xstate(n, rng);
      const double exact = xstate_concurrence(rho).value;
      const RoofResult r = roof_optimize(rho, l1_functional(), cfg);
      CHECK(r.value >= exact - 1e-9);
      CHECK(r.value <= exact + 1e-4);
    }
  }
}

TEST_CASE("make_functional agrees with the built-in l1 functional") {
  const PureFunctional generic = make_functional("l1-generic", [](const PureState& p) { return pure_l1(p); });
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const Ensemble e = random_ensemble(4, 5, rng);
    CHECK(std::abs(generic.average(e) - l1_functional().average(e)) < 1e-12);
    CHECK(std::abs(l1_functional().average(e) - average_l1(e)) < 1e-12);
  }
}

TEST_CASE("observed gap above l1 on a coherent qutrit") {
  // Numerical upper bounds only: the gap is observed, not certified.
  const DensityMatrix rho = phased_qutrit();
  const double l1 = l1_coherence(rho);
  std::vector<double> values;
  for (std::size_t m : {4, 9, 16}) {
    RoofConfig cfg;
    cfg.seed = 1;
    cfg.ensemble_size = m;
    cfg.ensemble_cap = m;
    const RoofResult r = roof_optimize(rho, l1_functional(), cfg);
    CHECK(r.converged());
    for (const auto& tr : r.diagnostics.restarts) CHECK(tr.best_value >= l1 + 1e-3);
    values.push_back(r.value);
  }
  CHECK(values[0] - l1 >= 1e-3);
  CHECK(std::abs(values[1] - values[0]) < 1e-6);
  CHECK(std::abs(values[2] - values[0]) < 1e-6);
}

}  // TEST_SUITE
