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

#include "qlin/interconnect.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "qlin/error.hpp"

namespace qlin {
namespace {

std::string plant_name(std::size_t k) { return "plant " + std::to_string(k + 1); }

void check_plant(const QuadratureSystem& g, std::size_t k) {
  if (g.n != 1) {
    throw CompositionError(plant_name(k) + " must be a single oscillator (n = 1), got n = " +
                           std::to_string(g.n));
  }
  const double res = realizability_residual(g);
  if (res > tol::kRealizable) {
    throw CompositionError(plant_name(k) + " is not physically realizable (residual " +
                           std::to_string(res) + ")");
  }
}

void check_wiring(const PlantWiring& w, Eigen::Index fields, std::size_t k) {
  std::set<Eigen::Index> measured_fields;
  for (Eigen::Index row : w.measured) {
    if (row < 0 || row >= 2 * fields) {
      throw CompositionError(plant_name(k) + ": measured row " + std::to_string(row) +
                             " out of range [0, " + std::to_string(2 * fields) + ")");
    }
    if (!measured_fields.insert(row / 2).second) {
      throw CompositionError(plant_name(k) + ": field " + std::to_string(row / 2) +
                             " is measured in more than one quadrature");
    }
  }
  std::set<Eigen::Index> modulated;
  for (Eigen::Index f : w.modulated) {
    if (f < 0 || f >= fields) {
      throw CompositionError(plant_name(k) + ": modulated field " + std::to_string(f) +
                             " out of range [0, " + std::to_string(fields) + ")");
    }
    if (!modulated.insert(f).second) {
      throw CompositionError(plant_name(k) + ": field " + std::to_string(f) +
                             " listed twice as modulated");
    }
    if (measured_fields.count(f) != 0) {
      throw CompositionError(plant_name(k) + ": field " + std::to_string(f) +
                             " is both measured and modulated (selector overlap)");
    }
  }
  if (w.hamiltonian && (w.hamiltonian->rows() != 2 || w.hamiltonian->cols() != 2)) {
    throw CompositionError(plant_name(k) + ": Hamiltonian modulation M must be 2x2");
  }
}

void check_controller(const ControllerSpec& c, const WiringSpec& w) {
  const Eigen::Index nc = c.a.rows();
  if (c.a.cols() != nc) throw CompositionError("controller A must be square");
  if (c.b.rows() != nc || c.b.cols() != w.measurements()) {
    throw CompositionError("controller B must be " + std::to_string(nc) + "x" +
                           std::to_string(w.measurements()) + " (states x measurements), got " +
                           std::to_string(c.b.rows()) + "x" + std::to_string(c.b.cols()));
  }
  if (!c.a.allFinite() || !c.b.allFinite()) {
    throw CompositionError("controller matrices must be finite");
  }
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& ham = c.c_ham[k];
    if (ham.rows() != 0) {
      if (ham.rows() != 2 || ham.cols() != nc) {
        throw CompositionError("C_ham for " + plant_name(k) + " must be 2x" +
                               std::to_string(nc));
      }
      if (!w.plants[k].hamiltonian) {
        throw CompositionError("C_ham given for " + plant_name(k) +
                               " but wiring has no Hamiltonian modulation matrix M");
      }
    }
    const auto& mod = c.c_mod[k];
    if (mod.rows() != 0) {
      const auto expected = static_cast<Eigen::Index>(2 * w.plants[k].modulated.size());
      if (expected == 0) {
        throw CompositionError("C_mod given for " + plant_name(k) +
                               " but no input field is modulated");
      }
      if (mod.rows() != expected || mod.cols() != nc) {
        throw CompositionError("C_mod for " + plant_name(k) + " must be " +
                               std::to_string(expected) + "x" + std::to_string(nc));
      }
    }
    if (!ham.allFinite() || !mod.allFinite()) {
      throw CompositionError("controller output maps must be finite");
    }
  }
}

}  // namespace

Matrix measurement_selector(const PlantWiring& wiring, Eigen::Index fields) {
  Matrix sel = Matrix::Zero(static_cast<Eigen::Index>(wiring.measured.size()), 2 * fields);
  for (std::size_t r = 0; r < wiring.measured.size(); ++r) {
    sel(static_cast<Eigen::Index>(r), wiring.measured[r]) = 1.0;
  }
  return sel;
}

Matrix modulation_selector(const PlantWiring& wiring, Eigen::Index fields) {
  Matrix sel = Matrix::Zero(2 * fields, static_cast<Eigen::Index>(2 * wiring.modulated.size()));
  for (std::size_t c = 0; c < wiring.modulated.size(); ++c) {
    const auto col = static_cast<Eigen::Index>(2 * c);
    sel(2 * wiring.modulated[c], col) = 1.0;
    sel(2 * wiring.modulated[c] + 1, col + 1) = 1.0;
  }
  return sel;
}

ClosedLoop compose_closed_loop(const QuadratureSystem& g1, const QuadratureSystem& g2,
                               const ControllerSpec& ctrl, const WiringSpec& wiring) {
  const std::array<const QuadratureSystem*, 2> plants{&g1, &g2};
  for (std::size_t k = 0; k < 2; ++k) {
    check_plant(*plants[k], k);
    check_wiring(wiring.plants[k], plants[k]->m, k);
  }
  check_controller(ctrl, wiring);

  const Eigen::Index nc = ctrl.states();
  const Partition part{2, 2, nc};
  const Eigen::Index dim = part.total();
  const std::array<Eigen::Index, 2> row0{0, 2};
  const std::array<Eigen::Index, 2> col0{0, 2 * g1.m};

  ClosedLoop cl;
  cl.partition = part;
  cl.fields1 = g1.m;
  cl.fields2 = g2.m;
  cl.a = Matrix::Zero(dim, dim);
  cl.b = Matrix::Zero(dim, 2 * (g1.m + g2.m));

  Eigen::Index meas0 = 0;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& g = *plants[k];
    const auto& w = wiring.plants[k];
    cl.a.block(row0[k], row0[k], 2, 2) = g.a;
    cl.b.block(row0[k], col0[k], 2, 2 * g.m) = g.b;

    // Controller -> plant k.
    Matrix a_k3 = Matrix::Zero(2, nc);
    if (ctrl.c_mod[k].rows() != 0) {
      a_k3 += g.b * modulation_selector(w, g.m) * ctrl.c_mod[k];
    }
    if (ctrl.c_ham[k].rows() != 0) {
      a_k3 += 2.0 * g.theta * w.hamiltonian->transpose() * ctrl.c_ham[k];
    }
    cl.a.block(row0[k], 4, 2, nc) = a_k3;

    // Plant k -> controller through dm = E_k (C_k x_k dt + D_k dw_k).
    const auto nm = static_cast<Eigen::Index>(w.measured.size());
    if (nm > 0 && nc > 0) {
      const Matrix gain = ctrl.b.middleCols(meas0, nm) * measurement_selector(w, g.m);
      cl.a.block(4, row0[k], nc, 2) = gain * g.c;
      cl.b.block(4, col0[k], nc, 2 * g.m) = gain * g.d;
    }
    meas0 += nm;
  }
  if (nc > 0) cl.a.bottomRightCorner(nc, nc) = ctrl.a;

  cl.theta = block_diag({J2(), J2(), Matrix::Zero(nc, nc)});
  cl.s_w = block_diag({g1.field.statistics(), g2.field.statistics()});
  cl.t_w = block_diag({g1.field.commutator(), g2.field.commutator()});

  const auto structure = validate_block_structure(cl);
  if (!structure.pass) {
    throw CompositionError("closed loop couples the plants directly: " + structure.violations());
  }
  const double res = closed_loop_residual(cl);
  if (res > tol::kRealizable) {
    throw CompositionError("closed loop violates commutation preservation (residual " +
                           std::to_string(res) + ")");
  }
  return cl;
}

std::string StructureReport::violations() const {
  std::string out;
  for (const auto& b : blocks) {
    if (b.max_abs != 0.0) {
      if (!out.empty()) out += ", ";
      out += b.name;
    }
  }
  return out;
}

StructureReport validate_block_structure(const ClosedLoop& cl) {
  const auto& p = cl.partition;
  StructureReport rep;
  rep.blocks.push_back({"A(1,2)", max_abs(cl.a.block(0, p.plant1, p.plant1, p.plant2))});
  rep.blocks.push_back({"A(2,1)", max_abs(cl.a.block(p.plant1, 0, p.plant2, p.plant1))});
  rep.blocks.push_back(
      {"B(1,2)", max_abs(cl.b.block(0, 2 * cl.fields1, p.plant1, 2 * cl.fields2))});
  rep.blocks.push_back({"B(2,1)", max_abs(cl.b.block(p.plant1, 0, p.plant2, 2 * cl.fields1))});
  rep.pass = std::all_of(rep.blocks.begin(), rep.blocks.end(),
                         [](const BlockCheck& b) { return b.max_abs == 0.0; });
  return rep;
}

double closed_loop_residual(const ClosedLoop& cl) {
  return realizability_residual(cl.a, cl.b, cl.theta, cl.t_w);
}

PartialTransposeFrame partial_transpose_frame(const ClosedLoop& cl) {
  const Eigen::Index nc = cl.partition.classical;
  PartialTransposeFrame frame;
  frame.theta_hat = block_diag({J2(), -J2(), Matrix::Zero(nc, nc)});
  frame.t_w_hat = block_diag({symplectic_form(cl.fields1), -symplectic_form(cl.fields2)});
  frame.residual = realizability_residual(cl.a, cl.b, frame.theta_hat, frame.t_w_hat);
  if (frame.residual > tol::kRealizable) {
    throw CompositionError(
        "partially transposed commutation identity violated (residual " +
        std::to_string(frame.residual) + "): composition is not physical");
  }
  return frame;
}

std::vector<DynamicsSegment> compose_schedule(const QuadratureSystem& g1,
                                              const QuadratureSystem& g2,
                                              const ControllerSchedule& schedule,
                                              const WiringSpec& wiring) {
  if (schedule.starts.size() != schedule.controllers.size() || schedule.starts.empty()) {
    throw CompositionError("controller schedule needs one start time per controller");
  }
  std::vector<DynamicsSegment> segments;
  for (std::size_t i = 0; i < schedule.starts.size(); ++i) {
    const auto cl = compose_closed_loop(g1, g2, schedule.controllers[i], wiring);
    if (!segments.empty() && cl.a.rows() != segments.front().a.rows()) {
      throw CompositionError("scheduled controllers must share the state dimension");
    }
    segments.push_back({schedule.starts[i], cl.a, symmetrize(cl.b * cl.s_w * cl.b.transpose())});
  }
  return segments;
}

}  // namespace qlin
