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

#include "qlin/covariance.hpp"

#include <Eigen/LU>
#include <cmath>
#include <map>
#include <string>

#include "qlin/error.hpp"

namespace qlin {
namespace {

struct StepMaps {
  Matrix phi;
  Matrix gram;
};

// Van Loan: exp([[-A, Q], [0, Aᵀ]] h) = [[*, Φ⁻¹G], [0, Φᵀ]]. The upper
// right block grows like exp(‖A‖h), so the construction is applied on
// h / 2^k with ‖A‖h / 2^k <= 1 and doubled back with
// Φ_{2h} = Φ_h², G_{2h} = Φ_h G_h Φ_hᵀ + G_h.
StepMaps step_maps(const Matrix& a, const Matrix& q, double h) {
  const Eigen::Index d = a.rows();
  const double reach = a.cwiseAbs().colwise().sum().maxCoeff() * h;
  const int doublings = reach > 1.0 ? static_cast<int>(std::ceil(std::log2(reach))) : 0;
  const double h0 = std::ldexp(h, -doublings);

  Matrix block = Matrix::Zero(2 * d, 2 * d);
  block.topLeftCorner(d, d) = -a;
  block.topRightCorner(d, d) = q;
  block.bottomRightCorner(d, d) = a.transpose();
  const Matrix e = matrix_exponential(block * h0);
  Matrix phi = e.bottomRightCorner(d, d).transpose();
  Matrix gram = symmetrize(phi * e.topRightCorner(d, d));
  for (int i = 0; i < doublings; ++i) {
    gram = symmetrize(phi * gram * phi.transpose() + gram);
    phi = phi * phi;
  }
  return {std::move(phi), std::move(gram)};
}

void check_dynamics(const Matrix& a, const Matrix& q) {
  if (a.rows() != a.cols() || q.rows() != a.rows() || q.cols() != a.cols()) {
    throw DomainError("A and Q must be square and the same size");
  }
  if (!a.allFinite() || !q.allFinite()) {
    throw DomainError("A and Q must be finite");
  }
  if (!is_symmetric(q)) throw DomainError("Q must be symmetric");
}

void check_grid(std::span<const double> times) {
  if (times.empty()) throw DomainError("time grid is empty");
  if (times.front() != 0.0) throw DomainError("time grid must start at 0");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(times[k])) throw DomainError("time grid is not finite");
    if (k > 0 && !(times[k] > times[k - 1])) {
      throw DomainError("time grid must be strictly increasing (index " +
                        std::to_string(k) + ")");
    }
  }
}

}  // namespace

Matrix solve_steady_state(const Matrix& a, const Matrix& q) {
  check_dynamics(a, q);
  const auto hz = is_hurwitz(a);
  if (!hz.hurwitz) {
    throw SolverError("steady state undefined: A is not Hurwitz (abscissa " +
                      std::to_string(hz.abscissa) + ")");
  }
  const double q_scale = q.norm();
  if (min_eig_symmetric(q) < -tol::kRealizable * (1.0 + q_scale)) {
    throw DomainError("Q must be positive semidefinite");
  }

  // (I ⊗ A + A ⊗ I) vec(P) = -vec(Q), column-major vec.
  const Eigen::Index d = a.rows();
  Matrix kron = Matrix::Zero(d * d, d * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index l = 0; l < d; ++l) {
      // Block (j, l) of I ⊗ A is δ_jl A; of A ⊗ I is a_jl I.
      auto blk = kron.block(j * d, l * d, d, d);
      if (j == l) blk += a;
      blk.diagonal().array() += a(j, l);
    }
  }
  const Eigen::FullPivLU<Matrix> lu(kron);
  if (!lu.isInvertible() || lu.rcond() < 1e-14) {
    throw SolverError("Lyapunov operator is singular (rcond " +
                      std::to_string(lu.rcond()) + ")");
  }
  const Vector rhs = -Eigen::Map<const Vector>(q.data(), q.size());
  Vector x = lu.solve(rhs);
  Matrix p = symmetrize(Eigen::Map<const Matrix>(x.data(), d, d));
  double residual = (a * p + p * a.transpose() + q).norm();
  // Iterative refinement for poorly damped loops.
  for (int it = 0; it < 3 && residual > tol::kStructural * (1.0 + q_scale); ++it) {
    const Matrix r = a * p + p * a.transpose() + q;
    const Vector dx = lu.solve(Vector(-Eigen::Map<const Vector>(r.data(), r.size())));
    const Matrix candidate = symmetrize(p + Eigen::Map<const Matrix>(dx.data(), d, d));
    const double next = (a * candidate + candidate * a.transpose() + q).norm();
    if (!(next < residual)) break;
    p = candidate;
    residual = next;
  }

  // Backward-error bound: for well-damped A this is 1e-10 (1 + |Q|).
  if (residual > tol::kRealizable * (1.0 + q_scale + a.norm() * p.norm())) {
    throw SolverError("Lyapunov residual too large: " + std::to_string(residual) +
                      " (|P|_F = " + std::to_string(p.norm()) + ")");
  }
  return p;
}

CovarianceTrajectory propagate(const Matrix& a, const Matrix& q,
                               const Matrix& p0,
                               std::span<const double> times) {
  const DynamicsSegment only{0.0, a, q};
  return propagate(std::span<const DynamicsSegment>(&only, 1), p0, times);
}

CovarianceTrajectory propagate(std::span<const DynamicsSegment> segments,
                               const Matrix& p0,
                               std::span<const double> times) {
  if (segments.empty()) throw DomainError("no dynamics segments");
  if (segments.front().start != 0.0) {
    throw DomainError("first dynamics segment must start at t = 0");
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    check_dynamics(segments[s].a, segments[s].q);
    if (segments[s].a.rows() != segments.front().a.rows()) {
      throw DomainError("dynamics segments differ in dimension");
    }
    if (s > 0 && !(segments[s].start > segments[s - 1].start)) {
      throw DomainError("dynamics segments must have increasing start times");
    }
  }
  check_grid(times);
  const Eigen::Index d = segments.front().a.rows();
  if (p0.rows() != d || p0.cols() != d) {
    throw DomainError("P0 must be " + std::to_string(d) + "x" +
                      std::to_string(d));
  }
  if (!p0.allFinite()) throw DomainError("P0 must be finite");
  if (!is_symmetric(p0)) throw DomainError("P0 must be symmetric");

  // Uniform grids reuse one (Φ, G) pair per segment.
  std::vector<std::map<double, StepMaps>> cache(segments.size());
  auto maps_for = [&](std::size_t seg, double h) -> const StepMaps& {
    auto& c = cache[seg];
    auto it = c.find(h);
    if (it == c.end()) {
      it = c.emplace(h, step_maps(segments[seg].a, segments[seg].q, h)).first;
    }
    return it->second;
  };

  CovarianceTrajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.covariances.reserve(times.size());
  Matrix p = symmetrize(p0);
  traj.covariances.push_back(p);

  std::size_t seg = 0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    double t = times[k - 1];
    const double t_next = times[k];
    while (t < t_next) {
      while (seg + 1 < segments.size() && segments[seg + 1].start <= t) ++seg;
      double stop = t_next;
      if (seg + 1 < segments.size() && segments[seg + 1].start < stop) {
        stop = segments[seg + 1].start;
      }
      const auto& m = maps_for(seg, stop - t);
      p = symmetrize(m.phi * p * m.phi.transpose() + m.gram);
      t = stop;
    }
    if (!p.allFinite()) {
      throw SolverError("covariance overflow at t = " + std::to_string(t_next));
    }
    traj.covariances.push_back(p);
  }
  return traj;
}

std::vector<double> uniform_grid(double t_end, std::size_t steps) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw DomainError("t_end must be finite and nonnegative");
  }
  if (t_end == 0.0) return {0.0};
  if (steps == 0) throw DomainError("a positive horizon needs steps >= 1");
  std::vector<double> grid(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    grid[k] = t_end * static_cast<double>(k) / static_cast<double>(steps);
  }
  return grid;
}

}  // namespace qlin
