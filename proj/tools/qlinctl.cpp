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

// qlinctl: covariance-level analysis of two quantum plants coupled through a
// classical linear controller.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "qlin/entanglement.hpp"
#include "qlin/scenario.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitNotHurwitz = 2;
constexpr int kExitBadCovariance = 3;
constexpr int kExitConfig = 4;
constexpr int kExitUsage = 64;

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("qlinctl");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("QLINCTL_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

json matrix_json(const qlin::Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json report_json(const qlin::EntanglementReport& r) {
  return {{"delta_tilde", r.delta_tilde},
          {"nu", r.nu},
          {"E_N", r.log_negativity},
          {"sep_min_eig", r.sep_min_eig},
          {"verdict", qlin::to_string(r.verdict)}};
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qlin::Error("cannot write " + path.string());
  out << content;
  spdlog::info("wrote {}", path.string());
}

bool non_increasing(const qlin::SimulationResult& r, double slack) {
  for (std::size_t k = 1; k < r.reports.size(); ++k) {
    if (r.reports[k].log_negativity > r.reports[k - 1].log_negativity + slack) return false;
  }
  return true;
}

json simulation_json(const qlin::SimulationResult& r) {
  json j;
  j["samples"] = r.trajectory.size();
  j["t_end"] = r.trajectory.times.back();
  j["initial"] = report_json(r.reports.front());
  j["final"] = report_json(r.reports.back());
  double max_en = 0.0;
  double min_heis = r.heisenberg.front();
  for (std::size_t k = 0; k < r.reports.size(); ++k) {
    max_en = std::max(max_en, r.reports[k].log_negativity);
    min_heis = std::min(min_heis, r.heisenberg[k]);
  }
  j["max_E_N"] = max_en;
  j["min_heisenberg_eig"] = min_heis;
  j["E_N_non_increasing"] = non_increasing(r, qlin::tol::kVerdict);
  if (r.sudden_death) {
    j["sudden_death"] = {{"grid_time", r.sudden_death->grid_time},
                         {"time", r.sudden_death->time}};
  } else {
    j["sudden_death"] = nullptr;
  }
  return j;
}

int cmd_analyze(const std::string& path, bool as_json) {
  const auto cfg = qlin::load_scenario(path);
  const auto s = qlin::analyze(cfg);
  json j;
  j["spectral_abscissa"] = s.hurwitz.abscissa;
  j["steady_state"] = matrix_json(s.steady_state);
  j["heisenberg_margin"] = s.heisenberg_margin;
  j["entanglement"] = report_json(s.entanglement);
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "spectral abscissa   " << qlin::format_double(s.hurwitz.abscissa) << "\n"
              << "steady-state P\n" << s.steady_state << "\n"
              << "heisenberg margin   " << qlin::format_double(s.heisenberg_margin) << "\n"
              << "separability LMI    " << qlin::format_double(s.entanglement.sep_min_eig) << "\n"
              << "E_N                 " << qlin::format_double(s.entanglement.log_negativity) << "\n"
              << "verdict             " << qlin::to_string(s.entanglement.verdict) << "\n";
  }
  if (!cfg.output.empty()) write_file(cfg.output + "_analysis.json", j.dump(2) + "\n");
  return kExitOk;
}

int cmd_simulate(const std::string& path, const std::string& out_prefix) {
  const auto cfg = qlin::load_scenario(path);
  const auto r = qlin::simulate(cfg);
  std::string prefix = out_prefix;
  if (prefix.empty()) prefix = cfg.output;
  if (prefix.empty()) prefix = fs::path(path).stem().string();
  write_file(prefix + ".csv", qlin::trajectory_csv(r));
  const json j = simulation_json(r);
  write_file(prefix + "_summary.json", j.dump(2) + "\n");
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(std::uint64_t seed, std::size_t trials, unsigned threads, bool inject) {
  qlin::VerifyOptions opts;
  opts.threads = threads;
  opts.inject_sign_flip_fault = inject;
  const auto rep = qlin::verify_no_go(seed, trials, opts);
  std::cout << "seed " << rep.seed << ", trials " << rep.trials << "\n"
            << "steady-state leg   " << rep.steady_pass << "/" << rep.trials - rep.steady_skipped
            << " separable (skipped " << rep.steady_skipped << "), worst margin "
            << qlin::format_double(rep.worst_steady_margin) << "\n"
            << "finite-time leg    " << rep.transient_pass << "/" << rep.trials
            << " separable, worst E_N " << qlin::format_double(rep.worst_transient_log_negativity)
            << ", worst margin " << qlin::format_double(rep.worst_transient_sep_eig) << "\n";
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    const auto& r = rep.records[i];
    if (r.ok()) continue;
    std::cout << "trial " << i << " (seed " << r.seed << ") FAILED: " << r.failure << "\n"
              << r.dump;
  }
  std::cout << (rep.passed() ? "PASS" : "FAIL") << "\n";
  return rep.passed() ? kExitOk : kExitFailed;
}

int cmd_example_paper(const fs::path& dir) {
  const auto entangled_cfg = qlin::parse_scenario(qlin::example_paper_config(), "<example-paper>");
  const auto separable_cfg = qlin::example_paper_separable(entangled_cfg);

  struct Check {
    std::string name;
    bool ok;
  };
  std::vector<Check> checks;
  const auto loop = qlin::build_closed_loop(entangled_cfg);
  const qlin::Matrix printed_a = qlin::example_paper_printed_a();
  const qlin::Matrix printed_b = qlin::example_paper_printed_b();
  // Entries agree with the printed decimals to the precision of their
  // double representation (0.05² is not exact in binary).
  const double ulp_tol = 4.0 * std::numeric_limits<double>::epsilon();
  auto close = [&](const qlin::Matrix& x, const qlin::Matrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
    return ((x - y).array().abs() <= ulp_tol * y.array().abs()).all();
  };
  checks.push_back({"closed-loop A matches printed matrix", close(loop.a, printed_a)});
  checks.push_back({"closed-loop B matches printed matrix", close(loop.b, printed_b)});

  const auto steady = qlin::analyze(entangled_cfg);
  checks.push_back({"steady state separable", steady.entanglement.sep_min_eig >= -1e-8});

  const auto ent = qlin::simulate(entangled_cfg);
  const auto sep = qlin::simulate(separable_cfg);
  const double en0 = ent.reports.front().log_negativity;
  checks.push_back({"E_N(0) = 0.1054 on entangled curve", std::abs(en0 - 0.1054) <= 1e-3});
  checks.push_back({"entangled curve non-increasing", non_increasing(ent, qlin::tol::kVerdict)});
  checks.push_back({"entangled curve reaches zero and stays", ent.sudden_death.has_value()});
  bool sep_zero = true;
  for (const auto& r : sep.reports) sep_zero = sep_zero && r.log_negativity <= qlin::tol::kVerdict;
  checks.push_back({"separable curve stays at zero", sep_zero});

  write_file(dir / "fig3_entangled.csv", qlin::trajectory_csv(ent));
  write_file(dir / "fig3_separable.csv", qlin::trajectory_csv(sep));

  json j;
  j["entangled"] = simulation_json(ent);
  j["separable"] = simulation_json(sep);
  j["steady_state"] = {{"P", matrix_json(steady.steady_state)},
                       {"entanglement", report_json(steady.entanglement)}};
  bool all = true;
  for (const auto& c : checks) {
    j["checks"][c.name] = c.ok;
    all = all && c.ok;
    std::cout << (c.ok ? "[pass] " : "[FAIL] ") << c.name << "\n";
  }
  if (ent.sudden_death) {
    std::cout << "sudden death at t = " << qlin::format_double(ent.sudden_death->time)
              << " (grid " << qlin::format_double(ent.sudden_death->grid_time) << ")\n";
  }
  write_file(dir / "summary.json", j.dump(2) + "\n");
  return all ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Covariance-level analysis of quantum plants under classical linear control"};
  app.require_subcommand(1);

  std::string config;
  bool as_json = false;
  auto* analyze = app.add_subcommand("analyze", "steady-state separability of a scenario");
  analyze->add_option("config", config, "scenario YAML file")->required();
  analyze->add_flag("--json", as_json, "print the summary as JSON");

  std::string out_prefix;
  auto* simulate = app.add_subcommand("simulate", "propagate the covariance and write a CSV");
  simulate->add_option("config", config, "scenario YAML file")->required();
  simulate->add_option("--out", out_prefix, "output path prefix (default: config 'output')");

  std::uint64_t seed = 42;
  std::size_t trials = 100;
  unsigned threads = 0;
  bool inject = false;
  auto* verify = app.add_subcommand("verify", "randomized check of the no-entanglement results");
  verify->add_option("--seed", seed, "ensemble seed");
  verify->add_option("--trials", trials, "number of random closed loops")
      ->check(CLI::PositiveNumber);
  verify->add_option("--threads", threads, "worker threads (0 = all cores)");
  verify->add_flag("--inject-sign-flip-fault", inject)->group("");

  std::string out_dir = ".";
  auto* example = app.add_subcommand("example-paper", "reproduce the two-cavity example");
  example->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return cmd_analyze(config, as_json);
    if (*simulate) return cmd_simulate(config, out_prefix);
    if (*verify) return cmd_verify(seed, trials, threads, inject);
    if (*example) return cmd_example_paper(out_dir);
  } catch (const qlin::NotHurwitzError& e) {
    spdlog::error("{}", e.what());
    std::cerr << "spectral abscissa: " << qlin::format_double(e.abscissa()) << "\n";
    return kExitNotHurwitz;
  } catch (const qlin::InvalidCovarianceError& e) {
    spdlog::error("{}", e.what());
    return kExitBadCovariance;
  } catch (const qlin::ConfigError& e) {
    spdlog::error("{}", e.what());
    return kExitConfig;
  } catch (const qlin::Error& e) {
    spdlog::error("{}", e.what());
    return kExitFailed;
  }
  return kExitUsage;
}
