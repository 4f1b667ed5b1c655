// Copyright 2026 The qlin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlin/entanglement.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <limits>
#include <thread>

#include "qlin/error.hpp"

namespace qlin {
namespace {

// Cross-check slack between the LMI and E_N verdicts. Near the boundary the
// two criteria scale differently with the state's squeezing, so a
// disagreement only counts once either side is clearly off the boundary.
constexpr double kCrossCheck = 1e-6;

// Steady-state draws need this much spectral margin; barely damped loops
// have covariances of order 1e8 where a 1e-8 absolute LMI test is noise.
constexpr double kSteadyMargin = 1e-3;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 with a portable uniform mapping; std distributions are
// implementation defined and would break cross-platform reproducibility.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t bits() { return gen_(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * n); }

  Matrix matrix(Eigen::Index rows, Eigen::Index cols, double lo = -1.0, double hi = 1.0) {
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = uniform(lo, hi);
    return m;
  }

 private:
  std::mt19937_64 gen_;
};

Matrix rotation(double phi) {
  Matrix r(2, 2);
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}

Matrix squeezer(double r) {
  Matrix s = Matrix::Zero(2, 2);
  s(0, 0) = std::exp(r);
  s(1, 1) = std::exp(-r);
  return s;
}

// Random single-mode symplectic: rotation · squeezer · rotation.
Matrix local_symplectic(Rng& rng, double max_squeeze) {
  const double two_pi = 2.0 * std::numbers::pi;
  return rotation(rng.uniform(0.0, two_pi)) * squeezer(rng.uniform(-max_squeeze, max_squeeze)) *
         rotation(rng.uniform(0.0, two_pi));
}

// Valid single-mode state ν·S·Sᵀ, ν >= 1.01.
Matrix single_mode_state(Rng& rng) {
  const Matrix s = local_symplectic(rng, 0.7);
  return rng.uniform(1.01, 2.0) * s * s.transpose();
}

Matrix hamiltonian_frame(bool partial_transpose) {
  return block_diag({J2(), partial_transpose ? Matrix(-J2()) : J2()});
}

void require_two_mode(const Matrix& p11, const char* who) {
  if (p11.rows() != 4 || p11.cols() != 4) {
    throw DomainError(std::string(who) + ": expected a 4x4 covariance, got " +
                      std::to_string(p11.rows()) + "x" + std::to_string(p11.cols()));
  }
  if (!p11.allFinite()) throw DomainError(std::string(who) + ": covariance is not finite");
  if (!is_symmetric(p11)) throw DomainError(std::string(who) + ": covariance is not symmetric");
}

void require_physical(const Matrix& p11) {
  const double lam = min_eig_hermitian(symmetrize(p11), hamiltonian_frame(false));
  if (lam < -tol::kHeisenberg) {
    throw InvalidCovarianceError("not a valid quantum covariance: λ_min(P + iΘ) = " +
                                 std::to_string(lam));
  }
}

std::string dump_system(const ClosedLoop& cl, const Matrix& p0) {
  const Eigen::IOFormat fmt(Eigen::FullPrecision, 0, ", ", "\n", "  [", "]");
  std::ostringstream os;
  os << "A~ =\n" << cl.a.format(fmt) << "\nB~ =\n" << cl.b.format(fmt) << "\nS_w =\n"
     << cl.s_w.format(fmt) << "\nP0 =\n" << p0.format(fmt) << "\n";
  return os.str();
}

QuadratureSystem draw_stable_plant(Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const RandomSystemOptions opts{1, static_cast<Eigen::Index>(1 + rng.below(2)), false};
    const auto spec = random_realizable_system(rng.bits(), opts);
    auto sys = to_quadrature(spec, vacuum_field(spec.fields()));
    if (is_hurwitz(sys.a).abscissa <= -kSteadyMargin) return sys;
  }
  throw SolverError("could not draw a stable random plant");
}

PlantWiring draw_wiring(Rng& rng, Eigen::Index fields) {
  PlantWiring w;
  for (Eigen::Index f = 0; f < fields; ++f) {
    switch (rng.below(4)) {
      case 0: break;
      case 1: w.measured.push_back(2 * f); break;
      case 2: w.measured.push_back(2 * f + 1); break;
      default: w.modulated.push_back(f); break;
    }
  }
  if (rng.uniform() < 0.5) w.hamiltonian = rng.matrix(2, 2);
  return w;
}

ControllerSpec draw_controller(Rng& rng, Eigen::Index nc, const WiringSpec& wiring) {
  ControllerSpec c;
  c.a = rng.matrix(nc, nc);
  c.b = rng.matrix(nc, wiring.measurements());
  for (std::size_t k = 0; k < 2; ++k) {
    if (wiring.plants[k].hamiltonian) c.c_ham[k] = rng.matrix(2, nc);
    if (!wiring.plants[k].modulated.empty()) {
      c.c_mod[k] = rng.matrix(static_cast<Eigen::Index>(2 * wiring.plants[k].modulated.size()), nc);
    }
  }
  return c;
}

void inject_fault(ClosedLoop& cl) {
  const Eigen::Index nc = cl.partition.classical;
  cl.b.bottomRows(nc) *= -1.0;
}

TrialRecord run_trial(std::uint64_t trial_seed, const VerifyOptions& opts) {
  Rng rng(trial_seed);
  auto g1 = draw_stable_plant(rng);
  auto g2 = draw_stable_plant(rng);
  WiringSpec wiring;
  wiring.plants[0] = draw_wiring(rng, g1.m);
  wiring.plants[1] = draw_wiring(rng, g2.m);
  const auto nc = static_cast<Eigen::Index>(1 + rng.below(2));

  // The first controller draw drives the finite-time leg whether or not it
  // stabilizes the loop.
  auto transient = compose_closed_loop(g1, g2, draw_controller(rng, nc, wiring), wiring);
  auto damped = [](const ClosedLoop& cl) {
    return is_hurwitz(cl.a).abscissa <= -kSteadyMargin;
  };
  std::optional<ClosedLoop> steady;
  if (damped(transient)) {
    steady = transient;
  } else {
    for (std::size_t d = 1; d < opts.max_controller_draws && !steady; ++d) {
      auto cl = compose_closed_loop(g1, g2, draw_controller(rng, nc, wiring), wiring);
      if (damped(cl)) steady = std::move(cl);
    }
  }

  Matrix p0 = Matrix::Zero(transient.partition.total(), transient.partition.total());
  p0.topLeftCorner(4, 4) = random_separable_covariance(rng.bits());
  const Matrix g = rng.matrix(nc, nc);
  p0.bottomRightCorner(nc, nc) = g * g.transpose();

  if (opts.inject_sign_flip_fault) {
    inject_fault(transient);
    if (steady) inject_fault(*steady);
  }
  auto rec = check_no_go(steady ? &*steady : nullptr, transient, p0, opts);
  rec.seed = trial_seed;
  return rec;
}

}  // namespace

Matrix from_half_vacuum_units(const Matrix& p) { return 2.0 * p; }

Matrix quantum_block(const Matrix& p) {
  if (p.rows() < 4 || p.cols() < 4) {
    throw DomainError("covariance has no two-mode quantum block");
  }
  return p.topLeftCorner(4, 4);
}

const char* to_string(Verdict v) {
  return v == Verdict::kSeparable ? "separable" : "entangled";
}

double separability_lmi(const Matrix& p11) {
  require_two_mode(p11, "separability_lmi");
  require_physical(p11);
  return min_eig_hermitian(symmetrize(p11), hamiltonian_frame(true));
}

EntanglementReport log_negativity(const Matrix& p11) {
  require_two_mode(p11, "log_negativity");
  require_physical(p11);

  const Matrix half = 0.5 * symmetrize(p11);
  const double det_a = half.topLeftCorner(2, 2).determinant();
  const double det_b = half.bottomRightCorner(2, 2).determinant();
  const double det_c = half.topRightCorner(2, 2).determinant();
  const double det_p = half.determinant();

  EntanglementReport rep;
  rep.delta_tilde = det_a + det_b - 2.0 * det_c;
  double inner = rep.delta_tilde * rep.delta_tilde - 4.0 * det_p;
  if (inner < 0.0) {
    if (inner < -tol::kStructural) {
      throw DomainError("log_negativity: negative inner radicand " + std::to_string(inner));
    }
    inner = 0.0;
  }
  // Δ̃ − √(Δ̃² − 4 det) cancels badly once the state is noisy, so use the
  // conjugate form 4 det / (Δ̃ + √(Δ̃² − 4 det)) of the same radicand.
  const double sum = rep.delta_tilde + std::sqrt(inner);
  double outer = sum > 0.0 ? 4.0 * det_p / sum : rep.delta_tilde - std::sqrt(inner);
  if (outer < 0.0) {
    if (outer < -tol::kStructural) {
      throw DomainError("log_negativity: negative outer radicand " + std::to_string(outer));
    }
    outer = 0.0;
  }
  rep.nu = std::sqrt(outer) / std::numbers::sqrt2;
  rep.log_negativity = std::max(0.0, -std::log(2.0 * rep.nu));
  rep.sep_min_eig = min_eig_hermitian(symmetrize(p11), hamiltonian_frame(true));
  rep.verdict = rep.sep_min_eig >= -tol::kVerdict ? Verdict::kSeparable : Verdict::kEntangled;

  const bool en_separable = rep.log_negativity <= tol::kVerdict;
  if (en_separable != (rep.verdict == Verdict::kSeparable) &&
      std::max(rep.log_negativity, -rep.sep_min_eig) > kCrossCheck) {
    std::ostringstream os;
    os << "internal error: LMI verdict (min eig " << rep.sep_min_eig
       << ") disagrees with log-negativity " << rep.log_negativity;
    throw Error(os.str());
  }
  return rep;
}

std::optional<SuddenDeath> sudden_death_time(const CovarianceTrajectory& traj) {
  if (traj.times.empty()) return std::nullopt;
  const std::size_t n = traj.size();
  std::vector<EntanglementReport> reports;
  reports.reserve(n);
  for (const auto& p : traj.covariances) reports.push_back(log_negativity(quantum_block(p)));

  std::size_t last_entangled = n;
  for (std::size_t k = n; k-- > 0;) {
    if (reports[k].log_negativity > tol::kVerdict) {
      last_entangled = k;
      break;
    }
  }
  if (last_entangled == n) return SuddenDeath{traj.times.front(), traj.times.front()};
  if (last_entangled + 1 == n) return std::nullopt;

  const std::size_t k = last_entangled;
  const double t0 = traj.times[k];
  const double t1 = traj.times[k + 1];
  // Signed −ln 2ν is smooth through the crossing, unlike max(0, ·).
  const double g0 = -std::log(2.0 * reports[k].nu);
  const double g1 = -std::log(2.0 * reports[k + 1].nu);
  double t = t1;
  if (g0 > g1 && std::isfinite(g0) && std::isfinite(g1)) {
    t = std::clamp(t0 + (t1 - t0) * g0 / (g0 - g1), t0, t1);
  }
  return SuddenDeath{t1, t};
}

OscillatorSpec random_realizable_system(std::uint64_t seed, const RandomSystemOptions& opts) {
  if (opts.modes < 1 || opts.fields < 1) {
    throw ModelError("random system needs at least one mode and one field");
  }
  Rng rng(seed);
  const Eigen::Index dim = 2 * opts.modes;
  Matrix r(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i; j < dim; ++j) {
      r(i, j) = rng.uniform(-1.0, 1.0);
      r(j, i) = r(i, j);
    }
  }
  CMatrix k = CMatrix::Zero(opts.fields, dim);
  for (Eigen::Index i = 0; i < opts.fields; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double radius = std::sqrt(rng.uniform());
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      if (!opts.decoupled) k(i, j) = std::polar(radius, phase);
    }
  }
  return OscillatorSpec(std::move(r), std::move(k),
                        CMatrix::Identity(opts.fields, opts.fields));
}

Matrix random_separable_covariance(std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Matrix g = rng.matrix(4, 4, -0.5, 0.5);
    Matrix p = block_diag({single_mode_state(rng), single_mode_state(rng)}) + g * g.transpose();
    p = symmetrize(p);
    if (min_eig_hermitian(p, hamiltonian_frame(false)) >= 0.0 &&
        min_eig_hermitian(p, hamiltonian_frame(true)) >= 0.0) {
      return p;
    }
  }
  throw SolverError("random_separable_covariance: no acceptable sample in 10^4 draws");
}

Matrix random_quantum_covariance(std::uint64_t seed) {
  Rng rng(seed);
  const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double r = rng.uniform(0.0, 1.0);
  const Matrix i2 = Matrix::Identity(2, 2);
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;

  Matrix splitter(4, 4);
  splitter << std::cos(theta) * i2, std::sin(theta) * i2, -std::sin(theta) * i2,
      std::cos(theta) * i2;
  Matrix two_mode(4, 4);
  two_mode << std::cosh(r) * i2, std::sinh(r) * z, std::sinh(r) * z, std::cosh(r) * i2;

  const Matrix outer = block_diag({local_symplectic(rng, 0.5), local_symplectic(rng, 0.5)});
  const Matrix inner = block_diag({local_symplectic(rng, 0.5), local_symplectic(rng, 0.5)});
  const Matrix s = outer * splitter * two_mode * inner;

  Vector nu(4);
  nu(0) = nu(1) = rng.uniform(1.0, 2.0);
  nu(2) = nu(3) = rng.uniform(1.0, 2.0);
  return symmetrize(s * nu.asDiagonal() * s.transpose());
}

TrialRecord check_no_go(const ClosedLoop* steady_loop, const ClosedLoop& transient_loop,
                        const Matrix& p0, const VerifyOptions& opts) {
  TrialRecord rec;
  auto fail = [&](const std::string& why, const ClosedLoop& cl) {
    if (rec.failure.empty()) {
      rec.failure = why;
      rec.dump = dump_system(cl, p0);
    }
  };

  if (steady_loop != nullptr) {
    rec.steady_checked = true;
    try {
      partial_transpose_frame(*steady_loop);
      const Matrix q = symmetrize(steady_loop->b * steady_loop->s_w * steady_loop->b.transpose());
      const Matrix p = solve_steady_state(steady_loop->a, q);
      rec.steady_margin = separability_lmi(quantum_block(p));
      rec.steady_ok = rec.steady_margin >= -tol::kHeisenberg;
      if (!rec.steady_ok) {
        fail("steady state entangled: λ_min = " + std::to_string(rec.steady_margin), *steady_loop);
      }
    } catch (const Error& e) {
      fail(std::string("steady-state leg: ") + e.what(), *steady_loop);
    }
  }

  try {
    partial_transpose_frame(transient_loop);
    const auto hz = is_hurwitz(transient_loop.a);
    double horizon = 0.0;
    if (hz.hurwitz) {
      horizon = std::min(20.0 / -hz.abscissa, 1e4);
    } else {
      horizon = hz.abscissa > 0.0 ? std::min(10.0, 5.0 / hz.abscissa) : 10.0;
    }
    const auto grid = uniform_grid(horizon, opts.transient_steps);
    const Matrix q =
        symmetrize(transient_loop.b * transient_loop.s_w * transient_loop.b.transpose());
    const auto traj = propagate(transient_loop.a, q, p0, grid);
    rec.transient_min_sep_eig = std::numeric_limits<double>::infinity();
    for (const auto& p : traj.covariances) {
      const auto rep = log_negativity(quantum_block(p));
      rec.transient_max_log_negativity = std::max(rec.transient_max_log_negativity, rep.log_negativity);
      rec.transient_min_sep_eig = std::min(rec.transient_min_sep_eig, rep.sep_min_eig);
    }
    rec.transient_ok = rec.transient_max_log_negativity <= tol::kHeisenberg &&
                       rec.transient_min_sep_eig >= -tol::kHeisenberg;
    if (!rec.transient_ok) {
      fail("separable initial state became entangled: E_N = " +
               std::to_string(rec.transient_max_log_negativity) + ", λ_min = " +
               std::to_string(rec.transient_min_sep_eig),
           transient_loop);
    }
  } catch (const Error& e) {
    fail(std::string("finite-time leg: ") + e.what(), transient_loop);
  }
  return rec;
}

bool VerificationReport::passed() const {
  return std::all_of(records.begin(), records.end(), [](const TrialRecord& r) { return r.ok(); }) &&
         records.size() == trials;
}

VerificationReport verify_no_go(std::uint64_t seed, std::size_t trials, const VerifyOptions& opts) {
  if (trials == 0) throw DomainError("verify_no_go requires trials >= 1");
  VerificationReport report;
  report.seed = seed;
  report.trials = trials;
  report.records.resize(trials);

  // Each trial owns a seed-derived stream, so scheduling cannot change results.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      const std::uint64_t trial_seed = splitmix64(seed ^ splitmix64(i));
      try {
        report.records[i] = run_trial(trial_seed, opts);
      } catch (const Error& e) {
        report.records[i].seed = trial_seed;
        report.records[i].failure = std::string("trial setup: ") + e.what();
      }
    }
  };
  unsigned threads = opts.threads != 0 ? opts.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::min<std::size_t>(trials, 64)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  report.worst_steady_margin = std::numeric_limits<double>::infinity();
  report.worst_transient_sep_eig = std::numeric_limits<double>::infinity();
  for (const auto& r : report.records) {
    if (!r.steady_checked) {
      ++report.steady_skipped;
    } else {
      if (r.steady_ok) ++report.steady_pass;
      report.worst_steady_margin = std::min(report.worst_steady_margin, r.steady_margin);
    }
    if (r.transient_ok) ++report.transient_pass;
    report.worst_transient_sep_eig = std::min(report.worst_transient_sep_eig, r.transient_min_sep_eig);
    report.worst_transient_log_negativity =
        std::max(report.worst_transient_log_negativity, r.transient_max_log_negativity);
  }
  return report;
}

}  // namespace qlin
