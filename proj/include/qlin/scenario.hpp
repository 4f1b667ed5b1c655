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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qlin/covariance.hpp"
#include "qlin/entanglement.hpp"
#include "qlin/error.hpp"
#include "qlin/interconnect.hpp"
#include "qlin/model.hpp"

namespace qlin {

struct PlantConfig {
  OscillatorSpec spec;
  ItoFieldSpec field;

  friend bool operator==(const PlantConfig&, const PlantConfig&) = default;
};

struct ScheduledController {
  double start = 0.0;
  ControllerSpec controller;

  friend bool operator==(const ScheduledController&, const ScheduledController&) = default;
};

struct InitialCovariance {
  Matrix quantum;
  // Classical controller block; zero when absent.
  std::optional<Matrix> classical;
  // Quantum block given in vacuum = I/2 units.
  bool half_vacuum_units = false;

  friend bool operator==(const InitialCovariance& x, const InitialCovariance& y) {
    if (x.half_vacuum_units != y.half_vacuum_units || !identical(x.quantum, y.quantum)) return false;
    if (x.classical.has_value() != y.classical.has_value()) return false;
    return !x.classical || identical(*x.classical, *y.classical);
  }
};

struct TimeGrid {
  double t_end = 0.0;
  std::size_t steps = 0;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

struct Tolerances {
  double separability = tol::kVerdict;
  double heisenberg = tol::kHeisenberg;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct ScenarioConfig {
  std::vector<PlantConfig> plants;  // exactly two
  ControllerSpec controller;
  // Later controller segments; `controller` is active from t = 0.
  std::vector<ScheduledController> schedule;
  WiringSpec wiring;
  std::optional<InitialCovariance> initial;
  std::optional<TimeGrid> time_grid;
  Tolerances tolerances;
  std::string output;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Parses the YAML scenario format. Errors carry "<source>:<line>:<col>" and
// the offending field path.
ScenarioConfig parse_scenario(const std::string& text, const std::string& source = "<config>");
ScenarioConfig load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const ScenarioConfig& cfg);

// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

class NotHurwitzError : public SolverError {
 public:
  explicit NotHurwitzError(double abscissa);
  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

ClosedLoop build_closed_loop(const ScenarioConfig& cfg);

struct AnalysisSummary {
  ClosedLoop loop;
  HurwitzReport hurwitz;
  Matrix steady_state;
  EntanglementReport entanglement;
  // λ_min(P11 + i·diag(J, J)).
  double heisenberg_margin = 0.0;
};

// Steady-state leg. Uses the controller active as t → ∞ (last schedule
// entry). Throws NotHurwitzError when the loop has no steady state.
AnalysisSummary analyze(const ScenarioConfig& cfg);

struct SimulationResult {
  CovarianceTrajectory trajectory;
  std::vector<EntanglementReport> reports;
  std::vector<double> heisenberg;
  std::optional<SuddenDeath> sudden_death;
};

// Full initial covariance (quantum block converted to vacuum = I units,
// classical block zero unless given). Throws InvalidCovarianceError when the
// quantum block violates the uncertainty relation.
Matrix initial_covariance(const ScenarioConfig& cfg, Eigen::Index classical_states);

// Transient leg over the configured grid (default: 2000 steps over
// [0, 10/|abscissa|] for a Hurwitz loop).
SimulationResult simulate(const ScenarioConfig& cfg);

inline constexpr const char* kTrajectoryHeader =
    "t,E_N,sep_min_eig,heisenberg_min_eig,P11_11,P11_12,P11_13,P11_14,P11_22,P11_23,P11_24,"
    "P11_33,P11_34,P11_44";

std::string trajectory_csv(const SimulationResult& result);

// Built-in two-cavity scenario (initially entangled state).
const std::string& example_paper_config();
// Same scenario started from the initially separable state.
ScenarioConfig example_paper_separable(const ScenarioConfig& entangled);

// Ã and B̃ of the two-cavity example as printed (A_c = -1, B_c = C1 = C2 = 1).
Matrix example_paper_printed_a();
Matrix example_paper_printed_b();

}  // namespace qlin
