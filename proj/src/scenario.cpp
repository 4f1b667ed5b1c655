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

#include "qlin/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace qlin {
namespace {

using cd = std::complex<double>;

std::string where(const std::string& source, const YAML::Node& node, const std::string& path) {
  std::ostringstream os;
  os << source;
  if (node.IsDefined() && node.Mark().line >= 0) {
    os << ":" << node.Mark().line + 1 << ":" << node.Mark().column + 1;
  }
  os << ": " << path;
  return os.str();
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& path,
                         const std::string& msg) const {
    throw ConfigError(where(source_, node, path) + ": " + msg);
  }

  YAML::Node require(const YAML::Node& parent, const std::string& key,
                     const std::string& path) const {
    const YAML::Node child = parent[key];
    if (!child.IsDefined() || child.IsNull()) fail(parent, path + key, "missing required field");
    return child;
  }

  double number(const YAML::Node& node, const std::string& path) const {
    if (!node.IsScalar()) fail(node, path, "expected a number");
    const std::string& s = node.Scalar();
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      fail(node, path, "'" + s + "' is not a finite number");
    }
    return value;
  }

  Eigen::Index index(const YAML::Node& node, const std::string& path) const {
    const double v = number(node, path);
    if (v < 0 || v != std::floor(v)) fail(node, path, "expected a nonnegative integer");
    return static_cast<Eigen::Index>(v);
  }

  std::vector<Eigen::Index> indices(const YAML::Node& node, const std::string& path) const {
    std::vector<Eigen::Index> out;
    if (!node.IsDefined() || node.IsNull()) return out;
    if (!node.IsSequence()) fail(node, path, "expected a list of indices");
    for (std::size_t i = 0; i < node.size(); ++i) {
      out.push_back(index(node[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  template <typename Scalar, typename Cell>
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> grid(const YAML::Node& node,
                                                            const std::string& path,
                                                            Cell cell) const {
    using M = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (!node.IsDefined() || node.IsNull()) return M(0, 0);
    if (!node.IsSequence()) fail(node, path, "expected a matrix (list of rows)");
    const auto rows = static_cast<Eigen::Index>(node.size());
    if (rows == 0) return M(0, 0);
    if (!node[0].IsSequence()) fail(node[0], path + "[0]", "expected a row (list)");
    const auto cols = static_cast<Eigen::Index>(node[0].size());
    M m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      const YAML::Node row = node[static_cast<std::size_t>(i)];
      const std::string rp = path + "[" + std::to_string(i) + "]";
      if (!row.IsSequence() || static_cast<Eigen::Index>(row.size()) != cols) {
        fail(row, rp, "row must be a list of " + std::to_string(cols) + " entries");
      }
      for (Eigen::Index j = 0; j < cols; ++j) {
        m(i, j) = cell(row[static_cast<std::size_t>(j)], rp + "[" + std::to_string(j) + "]");
      }
    }
    return m;
  }

  Matrix real_matrix(const YAML::Node& node, const std::string& path) const {
    return grid<double>(node, path,
                        [&](const YAML::Node& n, const std::string& p) { return number(n, p); });
  }

  // Complex entries are [re, im] pairs; a bare number is real.
  CMatrix complex_matrix(const YAML::Node& node, const std::string& path) const {
    return grid<cd>(node, path, [&](const YAML::Node& n, const std::string& p) {
      if (n.IsScalar()) return cd(number(n, p), 0.0);
      if (!n.IsSequence() || n.size() != 2) fail(n, p, "complex entry must be [re, im]");
      return cd(number(n[0], p + "[0]"), number(n[1], p + "[1]"));
    });
  }

  template <typename F>
  auto guarded(const YAML::Node& node, const std::string& path, F&& f) const {
    try {
      return f();
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail(node, path, e.what());
    }
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

ControllerSpec read_controller(const Reader& rd, const YAML::Node& node, const std::string& path,
                               Eigen::Index measurements) {
  ControllerSpec c;
  c.a = rd.real_matrix(node["A"], path + "A");
  c.b = rd.real_matrix(node["B"], path + "B");
  if (c.a.rows() == 0 && c.b.size() == 0) c.b = Matrix(0, measurements);
  for (const char* key : {"C_ham", "C_mod"}) {
    const YAML::Node list = node[key];
    if (!list.IsDefined() || list.IsNull()) continue;
    if (!list.IsSequence() || list.size() != 2) {
      rd.fail(list, path + key, "expected one matrix per plant (two entries)");
    }
    auto& target = std::string(key) == "C_ham" ? c.c_ham : c.c_mod;
    for (std::size_t k = 0; k < 2; ++k) {
      target[k] = rd.real_matrix(list[k], path + key + "[" + std::to_string(k) + "]");
    }
  }
  return c;
}

void emit_matrix(YAML::Emitter& out, const Matrix& m) {
  out << YAML::Flow << YAML::BeginSeq;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << YAML::Flow << YAML::BeginSeq;
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << format_double(m(i, j));
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq;
}

void emit_complex(YAML::Emitter& out, const CMatrix& m) {
  out << YAML::Flow << YAML::BeginSeq;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << YAML::BeginSeq;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out << YAML::BeginSeq << format_double(m(i, j).real()) << format_double(m(i, j).imag())
          << YAML::EndSeq;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq;
}

void emit_indices(YAML::Emitter& out, const std::vector<Eigen::Index>& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (auto i : v) out << i;
  out << YAML::EndSeq;
}

void emit_controller_body(YAML::Emitter& out, const ControllerSpec& c) {
  out << YAML::Key << "A" << YAML::Value;
  emit_matrix(out, c.a);
  out << YAML::Key << "B" << YAML::Value;
  emit_matrix(out, c.b);
  for (const auto& [key, maps] : {std::pair{"C_ham", &c.c_ham}, std::pair{"C_mod", &c.c_mod}}) {
    out << YAML::Key << key << YAML::Value << YAML::BeginSeq;
    for (const auto& m : *maps) emit_matrix(out, m);
    out << YAML::EndSeq;
  }
}

Matrix quantum_frame() { return block_diag({J2(), J2()}); }

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

ScenarioConfig parse_scenario(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" +
                      std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  const Reader rd(source);
  if (!root.IsMap()) rd.fail(root, "<root>", "scenario must be a mapping");

  ScenarioConfig cfg;
  const YAML::Node plants = rd.require(root, "plants", "");
  if (!plants.IsSequence() || plants.size() != 2) {
    rd.fail(plants, "plants", "expected exactly two plants");
  }
  const YAML::Node fields = root["fields"];
  if (fields.IsDefined() && !fields.IsNull() && (!fields.IsSequence() || fields.size() != 2)) {
    rd.fail(fields, "fields", "expected one entry per plant");
  }
  for (std::size_t k = 0; k < 2; ++k) {
    const std::string p = "plants[" + std::to_string(k) + "].";
    const YAML::Node pn = plants[k];
    if (!pn.IsMap()) rd.fail(pn, p, "plant must be a mapping");
    const Matrix r = rd.real_matrix(rd.require(pn, "R", p), p + "R");
    const CMatrix kk = rd.complex_matrix(rd.require(pn, "K", p), p + "K");
    CMatrix s = CMatrix::Identity(kk.rows(), kk.rows());
    if (pn["S"].IsDefined() && !pn["S"].IsNull()) s = rd.complex_matrix(pn["S"], p + "S");
    auto spec = rd.guarded(pn, p.substr(0, p.size() - 1),
                           [&] { return OscillatorSpec(r, kk, s); });

    const std::string fp = "fields[" + std::to_string(k) + "]";
    YAML::Node fnode = (fields.IsDefined() && !fields.IsNull()) ? fields[k] : YAML::Node();
    ItoFieldSpec field = rd.guarded(fnode, fp, [&] {
      if (!fnode.IsDefined() || fnode.IsNull() ||
          (fnode.IsScalar() && fnode.Scalar() == "vacuum")) {
        return vacuum_field(spec.fields());
      }
      return ItoFieldSpec(rd.real_matrix(fnode, fp));
    });
    if (field.fields() != spec.fields()) {
      rd.fail(fnode.IsDefined() ? fnode : pn, fp,
              "field has " + std::to_string(field.fields()) + " channels, plant couples to " +
                  std::to_string(spec.fields()));
    }
    cfg.plants.push_back({std::move(spec), std::move(field)});
  }

  const YAML::Node wiring = root["wiring"];
  if (wiring.IsDefined() && !wiring.IsNull()) {
    if (!wiring.IsSequence() || wiring.size() != 2) {
      rd.fail(wiring, "wiring", "expected one entry per plant");
    }
    for (std::size_t k = 0; k < 2; ++k) {
      const std::string p = "wiring[" + std::to_string(k) + "].";
      const YAML::Node wn = wiring[k];
      auto& w = cfg.wiring.plants[k];
      w.measured = rd.indices(wn["measure"], p + "measure");
      w.modulated = rd.indices(wn["modulate"], p + "modulate");
      if (wn["M"].IsDefined() && !wn["M"].IsNull()) w.hamiltonian = rd.real_matrix(wn["M"], p + "M");
    }
  }

  const YAML::Node ctrl = root["controller"];
  const Eigen::Index meas = cfg.wiring.measurements();
  if (ctrl.IsDefined() && !ctrl.IsNull()) {
    cfg.controller = read_controller(rd, ctrl, "controller.", meas);
    const YAML::Node sched = ctrl["schedule"];
    if (sched.IsDefined() && !sched.IsNull()) {
      if (!sched.IsSequence()) rd.fail(sched, "controller.schedule", "expected a list of segments");
      double prev = 0.0;
      for (std::size_t i = 0; i < sched.size(); ++i) {
        const std::string p = "controller.schedule[" + std::to_string(i) + "].";
        const double start = rd.number(rd.require(sched[i], "start", p), p + "start");
        if (!(start > prev)) rd.fail(sched[i], p + "start", "segment starts must increase and be > 0");
        prev = start;
        cfg.schedule.push_back({start, read_controller(rd, sched[i], p, meas)});
      }
    }
  } else {
    cfg.controller.b = Matrix(0, meas);
  }

  const YAML::Node init = root["initial_covariance"];
  if (init.IsDefined() && !init.IsNull()) {
    InitialCovariance ic;
    ic.quantum = rd.real_matrix(rd.require(init, "quantum", "initial_covariance."),
                                "initial_covariance.quantum");
    if (ic.quantum.rows() != 4 || ic.quantum.cols() != 4) {
      rd.fail(init["quantum"], "initial_covariance.quantum", "must be 4x4");
    }
    if (!is_symmetric(ic.quantum)) {
      rd.fail(init["quantum"], "initial_covariance.quantum", "must be symmetric");
    }
    if (init["classical"].IsDefined() && !init["classical"].IsNull()) {
      ic.classical = rd.real_matrix(init["classical"], "initial_covariance.classical");
    }
    if (init["normalization"].IsDefined()) {
      const std::string norm = init["normalization"].Scalar();
      if (norm == "half-vacuum") {
        ic.half_vacuum_units = true;
      } else if (norm != "vacuum") {
        rd.fail(init["normalization"], "initial_covariance.normalization",
                "expected 'vacuum' or 'half-vacuum'");
      }
    }
    cfg.initial = std::move(ic);
  }

  const YAML::Node grid = root["time_grid"];
  if (grid.IsDefined() && !grid.IsNull()) {
    TimeGrid tg;
    tg.t_end = rd.number(rd.require(grid, "t_end", "time_grid."), "time_grid.t_end");
    if (tg.t_end < 0) rd.fail(grid["t_end"], "time_grid.t_end", "must be >= 0");
    tg.steps = static_cast<std::size_t>(rd.index(rd.require(grid, "steps", "time_grid."), "time_grid.steps"));
    if (tg.t_end > 0 && tg.steps == 0) rd.fail(grid["steps"], "time_grid.steps", "must be >= 1");
    cfg.time_grid = tg;
  }

  const YAML::Node tols = root["tolerances"];
  if (tols.IsDefined() && !tols.IsNull()) {
    if (tols["separability"].IsDefined()) {
      cfg.tolerances.separability = rd.number(tols["separability"], "tolerances.separability");
    }
    if (tols["heisenberg"].IsDefined()) {
      cfg.tolerances.heisenberg = rd.number(tols["heisenberg"], "tolerances.heisenberg");
    }
  }
  if (root["output"].IsDefined() && !root["output"].IsNull()) {
    cfg.output = root["output"].Scalar();
  }

  // Catch wiring/controller inconsistencies at load time.
  rd.guarded(ctrl.IsDefined() ? ctrl : root, "controller", [&] {
    build_closed_loop(cfg);
    return 0;
  });
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "plants" << YAML::Value << YAML::BeginSeq;
  for (const auto& p : cfg.plants) {
    out << YAML::BeginMap;
    out << YAML::Key << "R" << YAML::Value;
    emit_matrix(out, p.spec.hamiltonian());
    out << YAML::Key << "K" << YAML::Value;
    emit_complex(out, p.spec.coupling());
    out << YAML::Key << "S" << YAML::Value;
    emit_complex(out, p.spec.scattering());
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "fields" << YAML::Value << YAML::BeginSeq;
  for (const auto& p : cfg.plants) emit_matrix(out, p.field.statistics());
  out << YAML::EndSeq;

  out << YAML::Key << "wiring" << YAML::Value << YAML::BeginSeq;
  for (const auto& w : cfg.wiring.plants) {
    out << YAML::BeginMap;
    out << YAML::Key << "measure" << YAML::Value;
    emit_indices(out, w.measured);
    out << YAML::Key << "modulate" << YAML::Value;
    emit_indices(out, w.modulated);
    if (w.hamiltonian) {
      out << YAML::Key << "M" << YAML::Value;
      emit_matrix(out, *w.hamiltonian);
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "controller" << YAML::Value << YAML::BeginMap;
  emit_controller_body(out, cfg.controller);
  if (!cfg.schedule.empty()) {
    out << YAML::Key << "schedule" << YAML::Value << YAML::BeginSeq;
    for (const auto& s : cfg.schedule) {
      out << YAML::BeginMap << YAML::Key << "start" << YAML::Value << format_double(s.start);
      emit_controller_body(out, s.controller);
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;

  if (cfg.initial) {
    out << YAML::Key << "initial_covariance" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "normalization" << YAML::Value
        << (cfg.initial->half_vacuum_units ? "half-vacuum" : "vacuum");
    out << YAML::Key << "quantum" << YAML::Value;
    emit_matrix(out, cfg.initial->quantum);
    if (cfg.initial->classical) {
      out << YAML::Key << "classical" << YAML::Value;
      emit_matrix(out, *cfg.initial->classical);
    }
    out << YAML::EndMap;
  }
  if (cfg.time_grid) {
    out << YAML::Key << "time_grid" << YAML::Value << YAML::BeginMap << YAML::Key << "t_end"
        << YAML::Value << format_double(cfg.time_grid->t_end) << YAML::Key << "steps"
        << YAML::Value << cfg.time_grid->steps << YAML::EndMap;
  }
  out << YAML::Key << "tolerances" << YAML::Value << YAML::BeginMap << YAML::Key
      << "separability" << YAML::Value << format_double(cfg.tolerances.separability)
      << YAML::Key << "heisenberg" << YAML::Value << format_double(cfg.tolerances.heisenberg)
      << YAML::EndMap;
  if (!cfg.output.empty()) out << YAML::Key << "output" << YAML::Value << cfg.output;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

NotHurwitzError::NotHurwitzError(double abscissa)
    : SolverError("closed loop is not Hurwitz (spectral abscissa " + format_double(abscissa) + ")"),
      abscissa_(abscissa) {}

namespace {

std::pair<QuadratureSystem, QuadratureSystem> plants_of(const ScenarioConfig& cfg) {
  if (cfg.plants.size() != 2) throw ConfigError("scenario needs exactly two plants");
  return {to_quadrature(cfg.plants[0].spec, cfg.plants[0].field),
          to_quadrature(cfg.plants[1].spec, cfg.plants[1].field)};
}

}  // namespace

ClosedLoop build_closed_loop(const ScenarioConfig& cfg) {
  const auto [g1, g2] = plants_of(cfg);
  const auto& final_ctrl = cfg.schedule.empty() ? cfg.controller : cfg.schedule.back().controller;
  auto cl = compose_closed_loop(g1, g2, final_ctrl, cfg.wiring);
  for (const auto& s : cfg.schedule) compose_closed_loop(g1, g2, s.controller, cfg.wiring);
  if (!cfg.schedule.empty()) compose_closed_loop(g1, g2, cfg.controller, cfg.wiring);
  return cl;
}

AnalysisSummary analyze(const ScenarioConfig& cfg) {
  AnalysisSummary s{build_closed_loop(cfg), {}, {}, {}, 0.0};
  s.hurwitz = is_hurwitz(s.loop.a);
  if (!s.hurwitz.hurwitz) throw NotHurwitzError(s.hurwitz.abscissa);
  partial_transpose_frame(s.loop);
  const Matrix q = symmetrize(s.loop.b * s.loop.s_w * s.loop.b.transpose());
  s.steady_state = solve_steady_state(s.loop.a, q);
  const Matrix p11 = quantum_block(s.steady_state);
  s.heisenberg_margin = min_eig_hermitian(p11, quantum_frame());
  s.entanglement = log_negativity(p11);
  if (s.entanglement.sep_min_eig < -cfg.tolerances.separability) {
    s.entanglement.verdict = Verdict::kEntangled;
  }
  return s;
}

Matrix initial_covariance(const ScenarioConfig& cfg, Eigen::Index classical_states) {
  if (!cfg.initial) throw ConfigError("scenario has no initial_covariance");
  const auto& ic = *cfg.initial;
  const Matrix quantum = ic.half_vacuum_units ? from_half_vacuum_units(ic.quantum) : ic.quantum;
  const double lam = min_eig_hermitian(symmetrize(quantum), quantum_frame());
  if (lam < -cfg.tolerances.heisenberg) {
    throw InvalidCovarianceError("initial covariance violates the uncertainty relation: "
                                 "λ_min(P11 + iΘ) = " + format_double(lam));
  }
  Matrix p0 = Matrix::Zero(4 + classical_states, 4 + classical_states);
  p0.topLeftCorner(4, 4) = quantum;
  if (ic.classical) {
    if (ic.classical->rows() != classical_states || ic.classical->cols() != classical_states) {
      throw ConfigError("initial_covariance.classical must be " + std::to_string(classical_states) +
                        "x" + std::to_string(classical_states));
    }
    p0.bottomRightCorner(classical_states, classical_states) = *ic.classical;
  }
  return p0;
}

SimulationResult simulate(const ScenarioConfig& cfg) {
  const auto [g1, g2] = plants_of(cfg);
  ControllerSchedule sched;
  sched.starts.push_back(0.0);
  sched.controllers.push_back(cfg.controller);
  for (const auto& s : cfg.schedule) {
    sched.starts.push_back(s.start);
    sched.controllers.push_back(s.controller);
  }
  const auto segments = compose_schedule(g1, g2, sched, cfg.wiring);
  const Eigen::Index nc = cfg.controller.states();
  for (const auto& c : sched.controllers) {
    partial_transpose_frame(compose_closed_loop(g1, g2, c, cfg.wiring));
  }
  const Matrix p0 = initial_covariance(cfg, nc);

  std::vector<double> grid;
  if (cfg.time_grid) {
    grid = uniform_grid(cfg.time_grid->t_end, cfg.time_grid->steps);
  } else {
    const auto hz = is_hurwitz(segments.front().a);
    if (!hz.hurwitz) {
      throw ConfigError("time_grid is required when the closed loop is not Hurwitz");
    }
    grid = uniform_grid(10.0 / -hz.abscissa, 2000);
  }

  SimulationResult res;
  res.trajectory = propagate(segments, p0, grid);
  res.trajectory.partition = Partition{2, 2, nc};
  for (const auto& p : res.trajectory.covariances) {
    const Matrix p11 = quantum_block(p);
    res.heisenberg.push_back(min_eig_hermitian(p11, quantum_frame()));
    res.reports.push_back(log_negativity(p11));
  }
  res.sudden_death = sudden_death_time(res.trajectory);
  return res;
}

std::string trajectory_csv(const SimulationResult& result) {
  std::string out = kTrajectoryHeader;
  out += '\n';
  const auto& traj = result.trajectory;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& rep = result.reports[k];
    out += format_double(traj.times[k]);
    out += ',' + format_double(rep.log_negativity);
    out += ',' + format_double(rep.sep_min_eig);
    out += ',' + format_double(result.heisenberg[k]);
    const Matrix& p = traj.covariances[k];
    for (Eigen::Index i = 0; i < 4; ++i) {
      for (Eigen::Index j = i; j < 4; ++j) out += ',' + format_double(p(i, j));
    }
    out += '\n';
  }
  return out;
}

const std::string& example_paper_config() {
  // State order (q2, p2, q1, p1, z): plant 1 is the modulated cavity G2,
  // plant 2 the measured cavity G1. Both cavities have coupling rate 0.01,
  // i.e. L = 0.1 a = 0.05 (q + i p).
  static const std::string text = R"yaml(# Two identical cavities linked by a first-order classical controller.
plants:
  - R: [[0, 0], [0, 0]]
    K: [[[0.05, 0], [0, 0.05]]]
    S: [[[1, 0]]]
  - R: [[0, 0], [0, 0]]
    K: [[[0.05, 0], [0, 0.05]]]
    S: [[[1, 0]]]
fields: [vacuum, vacuum]
wiring:
  - measure: []
    modulate: [0]
  - measure: [0]
    modulate: []
controller:
  A: [[-1]]
  B: [[1]]
  C_mod: [[[1], [1]], []]
initial_covariance:
  normalization: half-vacuum
  quantum:
    - [0.5028, 0, -0.0528, 0]
    - [0, 0.5028, 0, 0.0528]
    - [-0.0528, 0, 0.5028, 0]
    - [0, 0.0528, 0, 0.5028]
time_grid:
  t_end: 2000
  steps: 2000
output: fig3_entangled
)yaml";
  return text;
}

ScenarioConfig example_paper_separable(const ScenarioConfig& entangled) {
  ScenarioConfig cfg = entangled;
  Matrix p(4, 4);
  p << 0.5704, 0, 0.0034, 0.0562,  //
      0, 0.5704, 0, 0.0528,        //
      0.0034, 0, 0.6203, 0.0499,   //
      0.0562, 0.0528, 0.0499, 0.6203;
  cfg.initial = InitialCovariance{p, std::nullopt, true};
  cfg.output = "fig3_separable";
  return cfg;
}

Matrix example_paper_printed_a() {
  const double a = -1.0, b = 1.0, c1 = 1.0, c2 = 1.0;
  Matrix m(5, 5);
  m << -0.005, 0, 0, 0, -0.1 * c1,  //
      0, -0.005, 0, 0, -0.1 * c2,   //
      0, 0, -0.005, 0, 0,           //
      0, 0, 0, -0.005, 0,           //
      0, 0, 0.1 * b, 0, a;
  return m;
}

Matrix example_paper_printed_b() {
  const double b = 1.0;
  Matrix m(5, 4);
  m << -0.1, 0, 0, 0,  //
      0, -0.1, 0, 0,   //
      0, 0, -0.1, 0,   //
      0, 0, 0, -0.1,   //
      0, 0, b, 0;
  return m;
}

}  // namespace qlin
