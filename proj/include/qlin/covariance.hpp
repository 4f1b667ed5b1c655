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

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qlin/linalg.hpp"

namespace qlin {

// State partition (plant 1 quadratures, plant 2 quadratures, classical
// controller states).
struct Partition {
  Eigen::Index plant1 = 2;
  Eigen::Index plant2 = 2;
  Eigen::Index classical = 0;

  Eigen::Index quantum() const { return plant1 + plant2; }
  Eigen::Index total() const { return plant1 + plant2 + classical; }

  friend bool operator==(const Partition&, const Partition&) = default;
};

struct CovarianceTrajectory {
  std::vector<double> times;
  std::vector<Matrix> covariances;
  // Set when the trajectory belongs to a composed closed loop.
  std::optional<Partition> partition;

  std::size_t size() const { return times.size(); }
};

// Unique symmetric P with A P + P Aᵀ + Q = 0. A must be Hurwitz and Q
// symmetric positive semidefinite.
Matrix solve_steady_state(const Matrix& a, const Matrix& q);

// Exact discretization of dP/dt = A P + P Aᵀ + Q over the given grid:
// P_{k+1} = Φ P_k Φᵀ + G_h with Φ = exp(A h) and G_h from the augmented
// exponential of [[-A, Q], [0, Aᵀ]] h.
CovarianceTrajectory propagate(const Matrix& a, const Matrix& q,
                               const Matrix& p0, std::span<const double> times);

// One piece of a piecewise-constant drift/diffusion schedule, active from
// `start` until the next segment's start.
struct DynamicsSegment {
  double start = 0.0;
  Matrix a;
  Matrix q;
};

CovarianceTrajectory propagate(std::span<const DynamicsSegment> segments,
                               const Matrix& p0, std::span<const double> times);

// Uniform grid 0, t_end/steps, ..., t_end (steps + 1 points; a single point
// when t_end == 0).
std::vector<double> uniform_grid(double t_end, std::size_t steps);

}  // namespace qlin
