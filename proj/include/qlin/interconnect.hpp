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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qlin/covariance.hpp"
#include "qlin/model.hpp"

namespace qlin {

// Classical linear controller dz = A_c z dt + B_c dm with actuation outputs
// u_{1,k} = C_ham[k] z (Hamiltonian modulation of plant k) and
// u_{2,k} = C_mod[k] z (displacement of plant k's modulated input fields).
// Empty C_ham/C_mod entries mean "no such actuation on that plant".
struct ControllerSpec {
  Matrix a;
  Matrix b;
  std::array<Matrix, 2> c_ham;
  std::array<Matrix, 2> c_mod;

  Eigen::Index states() const { return a.rows(); }

  friend bool operator==(const ControllerSpec& x, const ControllerSpec& y) {
    return identical(x.a, y.a) && identical(x.b, y.b) && identical(x.c_ham[0], y.c_ham[0]) &&
           identical(x.c_ham[1], y.c_ham[1]) && identical(x.c_mod[0], y.c_mod[0]) &&
           identical(x.c_mod[1], y.c_mod[1]);
  }
};

// How the controller is attached to one plant.
struct PlantWiring {
  // Output quadrature rows of y_k fed to the controller (0-based; row 2j is
  // the amplitude quadrature of field j, 2j+1 the phase quadrature).
  std::vector<Eigen::Index> measured;
  // Input field indices displaced by u_{2,k}.
  std::vector<Eigen::Index> modulated;
  // 2x2 Hamiltonian modulation matrix M_k (H_{l,k} = u_{1,k}ᵀ M_k x_k).
  std::optional<Matrix> hamiltonian;

  friend bool operator==(const PlantWiring& x, const PlantWiring& y) {
    if (x.measured != y.measured || x.modulated != y.modulated) return false;
    if (x.hamiltonian.has_value() != y.hamiltonian.has_value()) return false;
    return !x.hamiltonian || identical(*x.hamiltonian, *y.hamiltonian);
  }
};

struct WiringSpec {
  std::array<PlantWiring, 2> plants;

  Eigen::Index measurements() const {
    return static_cast<Eigen::Index>(plants[0].measured.size() +
                                     plants[1].measured.size());
  }

  friend bool operator==(const WiringSpec&, const WiringSpec&) = default;
};

// Mixed quantum-classical closed loop dx = Ã x dt + B̃ dw over
// x = (x1, x2, z), w = (w1, w2).
struct ClosedLoop {
  Matrix a;
  Matrix b;
  Partition partition;
  Eigen::Index fields1 = 0;
  Eigen::Index fields2 = 0;
  // diag(J, J, 0): degenerate canonical commutation matrix.
  Matrix theta;
  Matrix s_w;
  // Imaginary part of T_w = diag(T_w1, T_w2).
  Matrix t_w;
};

// Plant row-selection matrix for the measured quadratures.
Matrix measurement_selector(const PlantWiring& wiring, Eigen::Index fields);
// Column selection of B_k for the modulated field pairs.
Matrix modulation_selector(const PlantWiring& wiring, Eigen::Index fields);

ClosedLoop compose_closed_loop(const QuadratureSystem& g1,
                               const QuadratureSystem& g2,
                               const ControllerSpec& ctrl,
                               const WiringSpec& wiring);

struct BlockCheck {
  std::string name;
  double max_abs = 0.0;
};

struct StructureReport {
  std::vector<BlockCheck> blocks;
  bool pass = false;

  // Names of the blocks that are not exactly zero, comma separated.
  std::string violations() const;
};

// Forbidden blocks: Ã(1,2), Ã(2,1), B̃(plant 1, w2), B̃(plant 2, w1).
StructureReport validate_block_structure(const ClosedLoop& cl);

// ‖ÃΘ + ΘÃᵀ − iB̃T_wB̃ᵀ‖_F for the closed loop.
double closed_loop_residual(const ClosedLoop& cl);

struct PartialTransposeFrame {
  // diag(J, −J, 0_{n_c}).
  Matrix theta_hat;
  // Imaginary part of T̂_w = diag(T_w1, −T_w2).
  Matrix t_w_hat;
  double residual = 0.0;
};

// Builds the partially transposed commutation frame and checks
// ÃΘ̂ + Θ̂Ãᵀ − iB̃T̂_wB̃ᵀ = 0. Throws CompositionError when it does not hold.
PartialTransposeFrame partial_transpose_frame(const ClosedLoop& cl);

// Piecewise-constant controller: entry i is active from starts[i] onward.
struct ControllerSchedule {
  std::vector<double> starts;
  std::vector<ControllerSpec> controllers;
};

std::vector<DynamicsSegment> compose_schedule(const QuadratureSystem& g1,
                                              const QuadratureSystem& g2,
                                              const ControllerSchedule& schedule,
                                              const WiringSpec& wiring);

}  // namespace qlin
