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

#include <gtest/gtest.h>

#include <cmath>

#include "qlin/error.hpp"
#include "qlin/scenario.hpp"

namespace qlin {
namespace {

constexpr const char* kRich = R"yaml(
plants:
  - R: [[0.25, -0.1], [-0.1, 1.5]]
    K: [[[0.3, 0.1], [0, -0.2]], [[0.05, 0], [0, 0.05]]]
    S: [[[0, 1], [0, 0]], [[0, 0], [1, 0]]]
  - R: [[0, 0], [0, 0]]
    K: [[[0.05, 0], [0, 0.05]]]
fields:
  - [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
  - vacuum
wiring:
  - measure: [1]
    modulate: [1]
    M: [[0.5, 0], [0, -0.5]]
  - measure: [0]
controller:
  A: [[-1, 0.5], [0, -2]]
  B: [[1, 0], [0.3, 1e-3]]
  C_ham: [[[1, 0], [0, 1]], []]
  C_mod: [[[0.1, 0.2], [0.3, 0.4]], []]
  schedule:
    - start: 12.5
      A: [[-3, 0], [0, -2]]
      B: [[1, 1], [1, 1]]
initial_covariance:
  quantum:
    - [2, 0, 0.1, 0]
    - [0, 2, 0, -0.1]
    - [0.1, 0, 1.5, 0]
    - [0, -0.1, 0, 1.5]
  classical: [[0.5, 0.125], [0.125, 0.25]]
time_grid:
  t_end: 40
  steps: 80
tolerances:
  separability: 1e-10
output: rich
)yaml";

std::string config_error(const std::string& text) {
  try {
    parse_scenario(text, "cfg.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(Scenario, ParsesEverySection) {
  const ScenarioConfig cfg = parse_scenario(kRich);
  ASSERT_EQ(cfg.plants.size(), 2u);
  EXPECT_EQ(cfg.plants[0].spec.fields(), 2);
  EXPECT_EQ(cfg.plants[0].spec.coupling()(0, 0), std::complex<double>(0.3, 0.1));
  EXPECT_EQ(cfg.plants[0].field.statistics()(0, 0), 2.0);
  EXPECT_EQ(cfg.wiring.plants[0].measured, std::vector<Eigen::Index>{1});
  ASSERT_TRUE(cfg.wiring.plants[0].hamiltonian.has_value());
  EXPECT_EQ(cfg.controller.b(1, 1), 1e-3);
  ASSERT_EQ(cfg.schedule.size(), 1u);
  EXPECT_EQ(cfg.schedule[0].start, 12.5);
  EXPECT_EQ(cfg.schedule[0].controller.c_mod[0].rows(), 0);
  ASSERT_TRUE(cfg.initial && cfg.initial->classical);
  EXPECT_FALSE(cfg.initial->half_vacuum_units);
  EXPECT_EQ(cfg.time_grid->steps, 80u);
  EXPECT_EQ(cfg.tolerances.separability, 1e-10);
  EXPECT_EQ(cfg.tolerances.heisenberg, 1e-8);
  EXPECT_EQ(cfg.output, "rich");
}

TEST(Scenario, RoundTripIsIdentical) {
  for (const std::string& text : {std::string(kRich), example_paper_config()}) {
    const ScenarioConfig cfg = parse_scenario(text);
    const std::string once = serialize_scenario(cfg);
    const ScenarioConfig again = parse_scenario(once);
    EXPECT_EQ(again, cfg);
    EXPECT_EQ(serialize_scenario(again), once);
  }
}

TEST(Scenario, RoundTripKeepsAwkwardDoubles) {
  ScenarioConfig cfg = parse_scenario(example_paper_config());
  cfg.controller.a(0, 0) = -0.1 - 0.2;
  cfg.controller.b(0, 0) = std::nextafter(1.0, 2.0);
  cfg.initial->quantum(0, 0) = 1.0 / 3.0 + 0.2;
  const ScenarioConfig again = parse_scenario(serialize_scenario(cfg));
  EXPECT_EQ(again, cfg);
}

TEST(Scenario, FormatDoubleIsShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-0.005), "-0.005");
  EXPECT_EQ(format_double(2000.0), "2000");
  EXPECT_EQ(format_double(1e-300), "1e-300");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Scenario, ErrorsCarryLineAndPath) {
  const std::string bad_number = "plants:\n  - R: [[0, 0], [0, zero]]\n    K: [[0, 0]]\n"
                                 "  - R: [[0, 0], [0, 0]]\n    K: [[0, 0]]\n";
  EXPECT_EQ(config_error(bad_number).rfind("cfg.yaml:2:", 0), 0u) << config_error(bad_number);
  EXPECT_NE(config_error(bad_number).find("plants[0].R[1][1]"), std::string::npos);

  const std::string asymmetric = "plants:\n  - R: [[0, 1], [0, 0]]\n    K: [[0, 0]]\n"
                                 "  - R: [[0, 0], [0, 0]]\n    K: [[0, 0]]\n";
  EXPECT_NE(config_error(asymmetric).find("symmetric"), std::string::npos);
  EXPECT_NE(config_error(asymmetric).find("cfg.yaml:2:"), std::string::npos);

  EXPECT_NE(config_error("plants: [1]\n").find("exactly two plants"), std::string::npos);
  EXPECT_NE(config_error("{}").find("plants"), std::string::npos);
  EXPECT_NE(config_error("plants: [\n").find("cfg.yaml:"), std::string::npos);

  std::string ragged = example_paper_config();
  ragged.replace(ragged.find("[0, 0.5028, 0, 0.0528]"), 22, "[0, 0.5028, 0]");
  const std::string msg = config_error(ragged);
  EXPECT_NE(msg.find("initial_covariance.quantum[1]"), std::string::npos) << msg;
  EXPECT_NE(msg.find(":23:"), std::string::npos) << msg;

  std::string norm = example_paper_config();
  norm.replace(norm.find("half-vacuum"), 11, "halfway");
  EXPECT_NE(config_error(norm).find("normalization"), std::string::npos);
}

TEST(Scenario, AnalyzeExampleIsSeparable) {
  const AnalysisSummary s = analyze(parse_scenario(example_paper_config()));
  EXPECT_TRUE(s.hurwitz.hurwitz);
  EXPECT_NEAR(s.hurwitz.abscissa, -0.005, 1e-12);
  EXPECT_GE(s.entanglement.sep_min_eig, -1e-8);
  EXPECT_EQ(s.entanglement.verdict, Verdict::kSeparable);
  EXPECT_GE(s.heisenberg_margin, -1e-8);
  // Reference values from an independent Bartels-Stewart solve: the
  // modulated cavity picks up the controller noise, the measured one stays
  // at vacuum.
  const Matrix& p = s.steady_state;
  EXPECT_NEAR(p(0, 0), 1.9950248756218905, 1e-9);
  EXPECT_NEAR(p(0, 1), 0.9950248756218905, 1e-9);
  EXPECT_NEAR(p(1, 1), 1.9950248756218905, 1e-9);
  EXPECT_NEAR(p(2, 2), 1.0, 1e-9);
  EXPECT_NEAR(p(3, 3), 1.0, 1e-9);
  EXPECT_NEAR(p(0, 2), 0.0, 1e-9);
}

TEST(Scenario, AnalyzeZeroControllerIsVacuum) {
  std::string text = example_paper_config();
  text = text.substr(0, text.find("wiring:")) + text.substr(text.find("initial_covariance:"));
  const AnalysisSummary s = analyze(parse_scenario(text));
  EXPECT_EQ(s.loop.partition.classical, 0);
  EXPECT_LE(max_abs(s.steady_state - Matrix::Identity(4, 4)), 1e-10);
  EXPECT_EQ(s.entanglement.log_negativity, 0.0);
}

TEST(Scenario, AnalyzeUnstableLoopReportsAbscissa) {
  ScenarioConfig cfg = parse_scenario(example_paper_config());
  cfg.controller.a(0, 0) = 1.0;
  try {
    analyze(cfg);
    FAIL() << "expected NotHurwitzError";
  } catch (const NotHurwitzError& e) {
    EXPECT_GT(e.abscissa(), 0.0);
  }
}

TEST(Scenario, SimulationIsDeterministic) {
  ScenarioConfig cfg = parse_scenario(kRich);
  const std::string a = trajectory_csv(simulate(cfg));
  const std::string b = trajectory_csv(simulate(parse_scenario(serialize_scenario(cfg))));
  EXPECT_EQ(a, b);
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 82);
  EXPECT_EQ(a.substr(0, a.find('\n')), kTrajectoryHeader);
}

TEST(Scenario, ZeroHorizonGivesInitialRow) {
  ScenarioConfig cfg = parse_scenario(example_paper_config());
  cfg.time_grid = TimeGrid{0.0, 0};
  const SimulationResult r = simulate(cfg);
  ASSERT_EQ(r.trajectory.size(), 1u);
  const EntanglementReport direct = log_negativity(from_half_vacuum_units(cfg.initial->quantum));
  EXPECT_EQ(r.reports[0].log_negativity, direct.log_negativity);
  EXPECT_EQ(r.reports[0].sep_min_eig, direct.sep_min_eig);
  const std::string csv = trajectory_csv(r);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(Scenario, DefaultGridFollowsAbscissa) {
  ScenarioConfig cfg = parse_scenario(example_paper_config());
  cfg.time_grid.reset();
  const SimulationResult r = simulate(cfg);
  EXPECT_EQ(r.trajectory.size(), 2001u);
  EXPECT_NEAR(r.trajectory.times.back(), 2000.0, 1e-9);
  cfg.controller.a(0, 0) = 0.0;
  EXPECT_THROW(simulate(cfg), ConfigError);
}

TEST(Scenario, InvalidInitialCovariance) {
  ScenarioConfig cfg = parse_scenario(example_paper_config());
  cfg.initial->half_vacuum_units = false;
  EXPECT_THROW(simulate(cfg), InvalidCovarianceError);
  cfg.initial->half_vacuum_units = true;
  cfg.initial->classical = Matrix::Identity(2, 2);
  EXPECT_THROW(simulate(cfg), ConfigError);
}

TEST(Scenario, TrajectoryRespectsHeisenberg) {
  const SimulationResult r = simulate(parse_scenario(example_paper_config()));
  for (std::size_t k = 0; k < r.trajectory.size(); ++k) {
    EXPECT_GE(r.heisenberg[k], -1e-8);
    const Matrix& p = r.trajectory.covariances[k];
    EXPECT_EQ(p, p.transpose());
  }
}

TEST(Scenario, ScheduleSwitchesDynamics) {
  const ScenarioConfig cfg = parse_scenario(kRich);
  const SimulationResult r = simulate(cfg);
  ScenarioConfig fixed = cfg;
  fixed.schedule.clear();
  const SimulationResult s = simulate(fixed);
  // Identical up to the switch at t = 12.5 (grid spacing 0.5), different after.
  EXPECT_TRUE(identical(r.trajectory.covariances[25], s.trajectory.covariances[25]));
  EXPECT_GT(max_abs(r.trajectory.covariances[40] - s.trajectory.covariances[40]), 1e-6);
}

TEST(Scenario, ExampleSeparableVariant) {
  const ScenarioConfig ent = parse_scenario(example_paper_config());
  const ScenarioConfig sep = example_paper_separable(ent);
  EXPECT_TRUE(sep.initial->half_vacuum_units);
  EXPECT_EQ(sep.initial->quantum(2, 3), 0.0499);
  EXPECT_TRUE(identical(sep.controller.a, ent.controller.a));
}

}  // namespace
}  // namespace qlin
