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

// Acceptance checks. Usage: cohroof_acceptance [criterion...]; prints one
// PASS/FAIL line per criterion and exits nonzero if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>

#include <json.hpp>

#include "cohroof/blocks.hpp"
#include "cohroof/coherence.hpp"
#include "cohroof/convexroof.hpp"
#include "cohroof/entangle.hpp"
#include "cohroof/xanalytic.hpp"
#include "test_support.hpp"

using namespace cohroof;
using namespace cohroof::testing;

namespace {

// Pinned tolerances and limits.
constexpr double kQubitReconstructTol = 1e-12;
constexpr double kQubitAverageTol = 1e-12;
constexpr double kXBelowTol = 1e-9;
constexpr double kXAboveTol = 1e-4;
constexpr double kAdditiveNumericTol = 1e-4;
constexpr double kGapMargin = 1e-3;
constexpr double kWitnessTol = 1e-12;
constexpr double kLiftIdentityTol = 1e-10;
constexpr double kNegativityRouteTol = 1e-4;
constexpr double kReconstructionTol = 1e-10;
constexpr double kPermutationNumericTol = 1e-12;
constexpr double kPermutationAnalyticTol = 1e-14;
constexpr double kTwoFormTol = 1e-10;

constexpr double kLimit1 = 1.0;
constexpr double kLimit2 = 120.0;
constexpr double kLimit3 = 120.0;
constexpr double kLimit4 = 30.0;
constexpr double kLimit5 = 10.0;
constexpr double kLimit6 = 300.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void fail(const std::string& what) {
    ++violations_;
    if (first_.empty()) first_ = what;
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
  std::size_t violations() const { return violations_; }
  const std::string& first() const { return first_; }

 private:
  std::size_t violations_ = 0;
  std::string first_;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::size_t worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome finish(const Checker& c, double seconds, double limit, const std::string& summary) {
  Outcome o;
  o.pass = c.violations() == 0 && (limit <= 0.0 || seconds < limit);
  std::ostringstream os;
  os << summary << "; " << c.violations() << " violations";
  if (!c.first().empty()) os << " (first: " << c.first() << ")";
  os << "; " << num(seconds) << " s";
  if (limit > 0.0) os << " (limit " << num(limit) << " s)";
  o.detail = os.str();
  return o;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

BlockSolution qubit_block(const DensityMatrix& b) {
  if (b.dim() == 1)
    return {0.0, Ensemble({{b.trace_weight(), PureState::basis(1, 0)}}, b.trace_weight()),
            RoofPath::analytic, "singleton", std::nullopt};
  const AnalyticResult a = qubit_concurrence(b);
  return {a.value, a.ensemble, RoofPath::analytic, "qubit", std::nullopt};
}

// 1. Qubit closed form.
Outcome criterion1() {
  Timer t;
  Checker c;
  std::mt19937_64 rng(1001);
  for (int k = 0; k < 200; ++k) {
    const DensityMatrix rho = random_state(2, rng);
    const AnalyticResult r = qubit_concurrence(rho);
    const double expected = 2.0 * std::abs(rho.matrix()(0, 1));
    c.expect(r.value == expected, "value != 2|rho_01| at state " + std::to_string(k));
    const double rec = max_abs_diff(oracle_reconstruct([&] {
                                      std::vector<std::pair<double, std::vector<Complex>>> e;
                                      for (const auto& m : r.ensemble)
                                        e.push_back({m.weight, {m.state[0], m.state[1]}});
                                      return e;
                                    }()),
                                    rho.matrix());
    c.expect(rec <= kQubitReconstructTol, "reconstruction error " + num(rec));
    double avg = 0.0;
    for (const auto& m : r.ensemble) avg += m.weight * oracle_pure_l1(m.state.amplitudes());
    c.expect(std::abs(avg - r.value) <= kQubitAverageTol, "average l1 off by " + num(std::abs(avg - r.value)));
  }
  return finish(c, t.seconds(), kLimit1, "200 random qubits");
}

// 2. Numeric roof against the X-state closed form.
Outcome criterion2() {
  Timer t;
  Checker c;
  std::mt19937_64 rng(2002);
  RoofConfig cfg;
  cfg.restarts = 16;
  cfg.threads = worker_count();
  double worst_above = 0.0, worst_below = 0.0;
  for (std::size_t n : {3, 4, 5, 6}) {
    for (int k = 0; k < 50; ++k) {
      const DensityMatrix rho = random_xstate(n, rng);
      double exact = 0.0;
      for (std::size_t i = 0; i < n / 2; ++i) exact += 2.0 * std::abs(rho.matrix()(i, n - 1 - i));
      cfg.seed = 100 * n + static_cast<std::uint64_t>(k);
      const RoofResult r = roof_optimize(rho, l1_functional(), cfg);
      worst_above = std::max(worst_above, r.value - exact);
      worst_below = std::max(worst_below, exact - r.value);
      c.expect(r.value >= exact - kXBelowTol && r.value <= exact + kXAboveTol,
               "n=" + std::to_string(n) + " state " + std::to_string(k) + " gap " + num(r.value - exact));
    }
  }
  return finish(c, t.seconds(), kLimit2,
                "200 X states, max excess " + num(worst_above) + ", max deficit " + num(worst_below));
}

// 3. Additivity over direct sums.
Outcome criterion3() {
  Timer t;
  Checker c;
  std::mt19937_64 rng(3003);
  RoofConfig cfg;
  cfg.restarts = 16;
  cfg.threads = worker_count();
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t blocks = 2 + static_cast<std::size_t>(k % 3);
    const DirectSum ds = random_qubit_direct_sum(blocks, rng, true);
    const AdditiveResult add = additive_concurrence(block_split(ds.state), qubit_block);
    double sum = 0.0;
    for (const auto& b : add.per_block) sum += b.value;
    c.expect(add.value == sum, "additive value differs from block sum at " + std::to_string(k));
    double oracle = 0.0;
    for (const auto& [i, j] : ds.pairs) oracle += 2.0 * std::abs(ds.state.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    c.expect(std::abs(add.value - oracle) <= 1e-15, "additive value differs from pairwise oracle");
    cfg.seed = static_cast<std::uint64_t>(k);
    const RoofResult r = roof_optimize(ds.state, l1_functional(), cfg);
    worst = std::max(worst, std::abs(r.value - add.value));
    c.expect(std::abs(r.value - add.value) <= kAdditiveNumericTol,
             "numeric roof off by " + num(r.value - add.value) + " at " + std::to_string(k));
  }
  return finish(c, t.seconds(), kLimit3, "100 direct sums, max numeric gap " + num(worst));
}

// 4. The three-dimensional counterexample family.
Outcome criterion4() {
  Timer t;
  Checker c;
  std::string summary;
  for (const double x : {0.5, 1.0}) {
    ComplexMatrix m(3, 3);
    m << 1, 0, 1, 0, 1, x, 1, x, 1;
    m /= 3.0;
    const double cl1 = (2.0 + 2.0 * std::abs(x)) / 3.0;
    try {
      const DensityMatrix rho = validate_density(m);
      RoofConfig cfg;
      cfg.ensemble_size = 9;
      cfg.ensemble_cap = 9;
      cfg.restarts = 16;
      cfg.seed = 4;
      cfg.threads = worker_count();
      const RoofResult r = roof_optimize(rho, l1_functional(), cfg);
      for (const auto& tr : r.diagnostics.restarts)
        c.expect(tr.best_value >= cl1 + kGapMargin, "x=" + num(x) + " restart value " + num(tr.best_value));
      c.expect(average_l1(r.ensemble) >= cl1 - kWitnessTol, "convexity witness violated");
      summary += "x=" + num(x) + " observed gap " + num(r.value - cl1) + " (not certified); ";
    } catch (const Error& e) {
      c.fail("x=" + num(x) + " input rejected: " + e.what());
      summary += "x=" + num(x) + " not a valid state; ";
    }
  }
  return finish(c, t.seconds(), kLimit4, summary + "C_l1 = (2+2|x|)/3");
}

// 5. l1 coherence versus negativity of the lift.
Outcome criterion5() {
  Timer t;
  Checker c;
  std::mt19937_64 rng(5005);
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(k % 4);
    const DensityMatrix rho = random_state(n, rng);
    const BipartiteState mc = schmidt_lift(rho);
    const double neg = oracle_negativity(mc.matrix(), n, n);
    const double diff = std::max(std::abs(l1_coherence(rho) - 2.0 * negativity(mc)),
                                 std::abs(l1_coherence(rho) - 2.0 * neg));
    worst = std::max(worst, diff);
    c.expect(diff <= kLiftIdentityTol, "state " + std::to_string(k) + " off by " + num(diff));
  }
  return finish(c, t.seconds(), kLimit5, "500 states, max deviation " + num(worst));
}

// 6. Two routes to the convex-roof negativity.
Outcome criterion6() {
  Timer t;
  Checker c;
  std::mt19937_64 rng(6006);
  RoofConfig cfg;
  cfg.threads = worker_count();
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const DensityMatrix rho = k % 2 == 0 ? random_state(2, rng) : random_xstate(3, rng);
    cfg.seed = static_cast<std::uint64_t>(k);
    const double half = concurrence(rho, cfg).value / 2.0;
    const RoofResult direct = negativity_roof_direct(schmidt_lift(rho), cfg);
    // The direct route searches all decompositions of the 2-party state.
    c.expect(direct.diagnostics.ensemble_size == direct.diagnostics.rank * direct.diagnostics.rank,
             "direct route search space restricted");
    const double diff = std::abs(half - direct.value);
    worst = std::max(worst, diff);
    c.expect(diff <= kNegativityRouteTol, "state " + std::to_string(k) + " off by " + num(diff));
  }
  return finish(c, t.seconds(), kLimit6, "25 qubits + 25 qutrit X states, max discrepancy " + num(worst));
}

// 7. Invariants.
Outcome criterion7() {
  Timer t;
  Checker c;
  std::mt19937_64 rng(7007);

  // Reconstruction under random ensemble / isometry pairs.
  for (int k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + static_cast<std::size_t>(k % 6);
    const std::size_t members = 1 + static_cast<std::size_t>((k / 6) % 5);
    const std::size_t m = members + static_cast<std::size_t>(k % 4);
    const Ensemble e = random_ensemble(n, members, rng);
    const Ensemble out = hjw_transform(e, random_isometry(members, m, rng));
    const double d = max_abs_diff(out.reconstruct(), e.reconstruct());
    c.expect(d <= kReconstructionTol, "reconstruction moved by " + num(d));
  }

  // Permutation covariance.
  RoofConfig cfg;
  cfg.threads = worker_count();
  for (int k = 0; k < 60; ++k) {
    // Dense states (n = 3, 4), X states (n = 3..6) and shuffled qubit direct sums.
    const std::size_t n = k % 3 == 0 ? 3 + static_cast<std::size_t>(k % 2) : 3 + static_cast<std::size_t>(k % 4);
    const DensityMatrix rho = k % 3 == 0   ? random_state(n, rng)
                              : k % 3 == 1 ? random_xstate(n, rng)
                                           : random_qubit_direct_sum(2 + static_cast<std::size_t>(k % 2), rng, true).state;
    const ComplexMatrix p = permutation_matrix(random_permutation(rho.dim(), rng));
    const ComplexMatrix pm = p * rho.matrix() * p.transpose();
    const DensityMatrix prho = validate_density(0.5 * (pm + pm.adjoint()));
    c.expect(l1_coherence(prho) == l1_coherence(rho), "l1 not permutation invariant");
    cfg.seed = static_cast<std::uint64_t>(k);
    const RoofResult a = concurrence(rho, cfg), b = concurrence(prho, cfg);
    const double tol = a.path == RoofPath::analytic ? kPermutationAnalyticTol : kPermutationNumericTol;
    c.expect(std::abs(a.value - b.value) <= tol, "concurrence changed by " + num(a.value - b.value) +
                                                    " under permutation");
  }

  // Partial transpose and negativity forms.
  for (int k = 0; k < 300; ++k) {
    const std::size_t da = 2 + static_cast<std::size_t>(k % 2), db = 2 + static_cast<std::size_t>((k / 2) % 3);
    const DensityMatrix rho = random_state(da * db, rng, 1 + static_cast<std::size_t>(k % 3));
    const ComplexMatrix pt = partial_transpose(rho.matrix(), da, db);
    c.expect(partial_transpose(pt, da, db) == rho.matrix(), "partial transpose not an involution");
    const NegativityForms f = negativity_forms(BipartiteState(rho, da, db));
    c.expect(std::abs(f.trace_norm_form - f.eigenvalue_form) <= kTwoFormTol, "negativity forms disagree");
  }

  // Monotone descent and seed / thread determinism.
  for (int k = 0; k < 10; ++k) {
    const DensityMatrix rho = random_state(3 + static_cast<std::size_t>(k % 2), rng);
    RoofConfig rc;
    rc.restarts = 4;
    rc.seed = static_cast<std::uint64_t>(k);
    const RoofResult first = roof_optimize(rho, l1_functional(), rc);
    for (const auto& tr : first.diagnostics.restarts)
      for (std::size_t s = 1; s < tr.history.size(); ++s)
        c.expect(tr.history[s] <= tr.history[s - 1], "objective increased during descent");
    rc.threads = 4;
    const RoofResult second = roof_optimize(rho, l1_functional(), rc);
    bool same = first.value == second.value && first.ensemble.size() == second.ensemble.size();
    for (std::size_t m = 0; same && m < first.ensemble.size(); ++m)
      same = first.ensemble[m].weight == second.ensemble[m].weight &&
             first.ensemble[m].state.amplitudes() == second.ensemble[m].state.amplitudes();
    c.expect(same, "same seed gave a different result");
  }
  return finish(c, t.seconds(), 0.0, "reconstruction, permutation, transpose, negativity, descent, determinism");
}

// 8. CLI contract.
struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string("'") + COHROOF_CLI_PATH + "' " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome criterion8() {
  Timer t;
  Checker c;
  const std::string dir = COHROOF_TEST_DATA;
  const auto file = [&](const std::string& name) { return "'" + dir + "/" + name + "'"; };
  try {
    // Checked-in 5-dim X state.
    const Run x = run_cli("coherence concurrence " + file("xstate5.json") + " --format json");
    c.expect(x.code == 0, "xstate5 exit code " + std::to_string(x.code));
    const auto j = nlohmann::json::parse(x.out);
    const double expected = 2.0 * (std::abs(Complex(0.1, 0.05)) + 0.12);
    c.expect(std::abs(j["value"].get<double>() - expected) <= 1e-15, "xstate5 value " + num(j["value"].get<double>()));
    c.expect(j["path"] == "analytic", "xstate5 path not analytic");

    // Round trip through lift.
    const std::filesystem::path tmp = std::filesystem::temp_directory_path() / "cohroof_acceptance_lift.json";
    c.expect(run_cli("entangle lift " + file("xstate5.json") + " --output '" + tmp.string() + "'").code == 0,
             "lift failed");
    const Run relift = run_cli("coherence l1 '" + tmp.string() + "' --format json");
    c.expect(relift.code == 0, "lifted file not accepted");
    std::ifstream in(tmp);
    const auto lifted = nlohmann::json::parse(in)["matrix"];
    std::ifstream src_in(dir + "/xstate5.json");
    const auto src = nlohmann::json::parse(src_in)["matrix"];
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t k = 0; k < 5; ++k)
        c.expect(lifted[6 * i][6 * k] == src[i][k], "lift entry changed on round trip");
    std::filesystem::remove(tmp);

    // Determinism.
    const std::string numeric = "coherence concurrence " + file("qutrit.json") + " --format json --emit-ensemble --seed 11";
    c.expect(run_cli(numeric).out == run_cli(numeric).out, "report not byte-identical");

    // Exit codes.
    c.expect(run_cli("coherence l1 " + file("diagonal3.json")).code == 0, "exit 0");
    c.expect(run_cli("coherence l1 '" + dir + "/missing.json'").code == 2, "exit 2 on missing file");
    c.expect(run_cli("coherence concurrence " + file("rho_x1.json")).code == 2, "exit 2 on invalid state");
    c.expect(run_cli("coherence concurrence " + file("qutrit.json") + " --max-iterations 1").code == 3,
             "exit 3 on unconverged");
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
  return finish(c, t.seconds(), 0.0, "CLI round-trip, determinism, exit codes, stored X state");
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::function<Outcome()>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8}};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (const auto& [k, f] : criteria) selected.push_back(k);

  bool all = true;
  for (const int k : selected) {
    const auto it = criteria.find(k);
    if (it == criteria.end()) {
      std::printf("criterion %d: FAIL unknown criterion\n", k);
      all = false;
      continue;
    }
    Outcome o;
    try {
      o = it->second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %d: %s %s\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
