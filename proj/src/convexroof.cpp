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

#include "cohroof/convexroof.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace cohroof {

const char* to_string(RoofPath path) noexcept {
  return path == RoofPath::analytic ? "analytic" : "numeric";
}

double PureFunctional::average(const Ensemble& e) const {
  double sum = 0.0;
  for (const auto& m : e) sum += m.weight * (*this)(m.state);
  return sum;
}

PureFunctional l1_functional() {
  return {"l1", [](const Complex* w, std::size_t n) {
            double s = 0.0;
            double q = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
              const double a2 = std::norm(w[i]);
              s += std::sqrt(a2);
              q += a2;
            }
            return s * s - q;
          }};
}

PureFunctional make_functional(std::string name, std::function<double(const PureState&)> f) {
  return {std::move(name), [f = std::move(f)](const Complex* w, std::size_t n) {
            const Eigen::Map<const ComplexVector> v(w, static_cast<Eigen::Index>(n));
            const double q = v.squaredNorm();
            if (q == 0.0) return 0.0;
            return q * f(PureState(v / std::sqrt(q)));
          }};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Rows of u made exactly orthonormal again (modified Gram-Schmidt).
void reorthonormalize_rows(ComplexMatrix& u) {
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index p = 0; p < r; ++p) {
      const Complex proj = u.row(p).conjugate().cwiseProduct(u.row(r)).sum();
      u.row(r) -= proj * u.row(p);
    }
    u.row(r) /= u.row(r).norm();
  }
}

struct RestartOutcome {
  RestartTrace trace;
  ComplexMatrix unitary;  // rank x m
};

class LocalSearch {
 public:
  LocalSearch(const ComplexMatrix& seed, const PureFunctional& f, const RoofConfig& cfg,
              std::size_t m)
      : seed_(seed), f_(f), cfg_(cfg), m_(m),
        sign_(cfg.direction == RoofDirection::minimize ? 1.0 : -1.0) {}

  RestartOutcome run(ComplexMatrix u) const {
    const auto n = static_cast<std::size_t>(seed_.rows());
    ComplexMatrix w = seed_ * u;
    std::vector<double> contrib(m_);
    double total = 0.0;
    for (std::size_t k = 0; k < m_; ++k) {
      contrib[k] = f_.weighted(w.col(static_cast<Eigen::Index>(k)).data(), n);
      total += contrib[k];
    }
    double objective = sign_ * total;

    constexpr double initial_step = 0.25;
    constexpr double max_step = 0.7853981633974483;  // pi/4
    const std::size_t pairs = m_ * (m_ - 1) / 2;
    std::vector<double> step(2 * pairs, initial_step);

    RestartTrace trace;
    trace.history.reserve(64);
    ComplexVector a(static_cast<Eigen::Index>(n)), b(static_cast<Eigen::Index>(n));

    std::size_t sweep = 0;
    double largest = initial_step;
    while (sweep < cfg_.max_iterations && largest >= cfg_.convergence_tol) {
      std::size_t coord = 0;
      for (std::size_t k = 0; k + 1 < m_; ++k) {
        for (std::size_t l = k + 1; l < m_; ++l) {
          const auto ck = static_cast<Eigen::Index>(k);
          const auto cl = static_cast<Eigen::Index>(l);
          for (int gen = 0; gen < 2; ++gen, ++coord) {
            const double h = step[coord];
            bool accepted = false;
            const double c = std::cos(h);
            for (const double s : {std::sin(h), -std::sin(h)}) {
              // Real generator: [[c, -s], [s, c]]; imaginary: [[c, is], [is, c]].
              const Complex off_kl = gen == 0 ? Complex(-s, 0.0) : Complex(0.0, s);
              const Complex off_lk = gen == 0 ? Complex(s, 0.0) : Complex(0.0, s);
              a = c * w.col(ck) + off_lk * w.col(cl);
              b = off_kl * w.col(ck) + c * w.col(cl);
              const double ga = f_.weighted(a.data(), n);
              const double gb = f_.weighted(b.data(), n);
              const double delta = sign_ * ((ga + gb) - (contrib[k] + contrib[l]));
              if (delta < -1e-15 * (1.0 + std::abs(objective))) {
                w.col(ck) = a;
                w.col(cl) = b;
                const ComplexVector uk = u.col(ck);
                u.col(ck) = c * uk + off_lk * u.col(cl);
                u.col(cl) = off_kl * uk + c * u.col(cl);
                contrib[k] = ga;
                contrib[l] = gb;
                objective += delta;
                accepted = true;
                break;
              }
            }
            step[coord] = accepted ? std::min(2.0 * h, max_step) : 0.5 * h;
          }
        }
      }
      ++sweep;
      trace.history.push_back(sign_ * objective);
      largest = step.empty() ? 0.0 : *std::max_element(step.begin(), step.end());
    }

    trace.iterations = sweep;
    trace.final_step = largest;
    trace.converged = largest < cfg_.convergence_tol;
    trace.best_value = sign_ * objective;
    return {std::move(trace), std::move(u)};
  }

 private:
  const ComplexMatrix& seed_;
  const PureFunctional& f_;
  const RoofConfig& cfg_;
  std::size_t m_;
  double sign_;
};

}  // namespace

std::mt19937_64 restart_stream(std::uint64_t seed, std::size_t index) {
  const std::uint64_t mixed =
      splitmix64(seed ^ splitmix64(0xC0FFEE0000000000ULL + static_cast<std::uint64_t>(index)));
  std::seed_seq seq{static_cast<std::uint32_t>(mixed), static_cast<std::uint32_t>(mixed >> 32)};
  return std::mt19937_64(seq);
}

Isometry random_isometry(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  if (rows == 0 || cols < rows)
    throw Error(ErrorCode::invalid_argument, "random_isometry needs 0 < rows <= cols");
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto r = static_cast<Eigen::Index>(rows);
  const auto c = static_cast<Eigen::Index>(cols);
  ComplexMatrix g(c, r);
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index i = 0; i < c; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(c, r);
  const ComplexMatrix& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < r; ++j) {
    const Complex d = packed(j, j);
    const double ad = std::abs(d);
    if (ad > 0.0) q.col(j) *= d / ad;
  }
  ComplexMatrix u = q.transpose();
  reorthonormalize_rows(u);
  return Isometry(std::move(u));
}

RoofResult roof_optimize(const DensityMatrix& rho, const PureFunctional& f, const RoofConfig& cfg) {
  if (!rho.normalized())
    throw Error(ErrorCode::invalid_argument, "roof_optimize expects a normalized state");
  if (cfg.restarts == 0 || cfg.max_iterations == 0 || !(cfg.convergence_tol > 0.0))
    throw Error(ErrorCode::invalid_argument, "roof config counts and tolerance must be positive");

  const Ensemble spectral = spectral_ensemble(rho);
  const std::size_t rank = spectral.size();

  RoofResult result;
  result.path = RoofPath::numeric;
  result.diagnostics.rank = rank;

  if (rank == 1) {
    result.ensemble = spectral;
    result.value = f.average(spectral);
    result.diagnostics.ensemble_size = 1;
    result.diagnostics.members_used = 1;
    return result;
  }

  const std::size_t cap = cfg.ensemble_cap == 0 ? rank * rank : cfg.ensemble_cap;
  const std::size_t m = cfg.ensemble_size == 0 ? rank * rank : cfg.ensemble_size;
  if (m < rank || m > cap) {
    std::ostringstream os;
    os << "ensemble size " << m << " outside [" << rank << ", " << cap << "]";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  result.diagnostics.ensemble_size = m;

  const auto n = static_cast<Eigen::Index>(rho.dim());
  ComplexMatrix seed(n, static_cast<Eigen::Index>(rank));
  for (std::size_t l = 0; l < rank; ++l)
    seed.col(static_cast<Eigen::Index>(l)) =
        std::sqrt(spectral[l].weight) * spectral[l].state.amplitudes();

  const LocalSearch search(seed, f, cfg, m);
  std::vector<RestartOutcome> outcomes(cfg.restarts);
  auto run_one = [&](std::size_t r) {
    std::mt19937_64 rng = restart_stream(cfg.seed, r);
    outcomes[r] = search.run(random_isometry(rank, m, rng).matrix());
  };

  const std::size_t workers = std::clamp<std::size_t>(cfg.threads, 1, cfg.restarts);
  if (workers == 1) {
    for (std::size_t r = 0; r < cfg.restarts; ++r) run_one(r);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t r = t; r < cfg.restarts; r += workers) run_one(r);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  const double sign = cfg.direction == RoofDirection::minimize ? 1.0 : -1.0;
  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r)
    if (sign * outcomes[r].trace.best_value < sign * outcomes[best].trace.best_value) best = r;

  ComplexMatrix u = outcomes[best].unitary;
  reorthonormalize_rows(u);
  result.ensemble = hjw_transform(spectral, Isometry(std::move(u)));
  result.value = f.average(result.ensemble);

  auto& diag = result.diagnostics;
  diag.best_restart = best;
  diag.members_used = result.ensemble.size();
  diag.saturated = diag.members_used == m;
  diag.converged = outcomes[best].trace.converged;
  diag.restarts.reserve(outcomes.size());
  for (auto& o : outcomes) diag.restarts.push_back(std::move(o.trace));
  return result;
}

}  // namespace cohroof
