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
#include <complex>
#include <random>

#include "qlin/covariance.hpp"
#include "qlin/entanglement.hpp"
#include "qlin/error.hpp"
#include "qlin/model.hpp"

namespace qlin {
namespace {

using cd = std::complex<double>;

OscillatorSpec cavity() {
  CMatrix k(1, 2);
  k << cd(0.05, 0.0), cd(0.0, 0.05);
  return OscillatorSpec(Matrix::Zero(2, 2), k, CMatrix::Identity(1, 1));
}

CMatrix random_unitary(std::mt19937_64& gen, Eigen::Index m) {
  std::normal_distribution<double> g;
  CMatrix z(m, m);
  for (Eigen::Index i = 0; i < z.size(); ++i) z.data()[i] = cd(g(gen), g(gen));
  Eigen::HouseholderQR<CMatrix> qr(z);
  return qr.householderQ() * CMatrix::Identity(m, m);
}

OscillatorSpec random_spec(std::mt19937_64& gen, Eigen::Index n, Eigen::Index m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix g(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = u(gen);
  CMatrix k(m, 2 * n);
  for (Eigen::Index i = 0; i < k.size(); ++i) k.data()[i] = cd(u(gen), u(gen));
  return OscillatorSpec(g + g.transpose(), k, random_unitary(gen, m));
}

TEST(ToQuadrature, CavityMatchesPrintedModel) {
  const QuadratureSystem sys = to_quadrature(cavity(), vacuum_field(1));
  const Matrix i2 = Matrix::Identity(2, 2);
  EXPECT_LE(max_abs(sys.a + 0.005 * i2), 1e-15);
  EXPECT_LE(max_abs(sys.b + 0.1 * i2), 1e-15);
  EXPECT_LE(max_abs(sys.c - 0.1 * i2), 1e-15);
  EXPECT_TRUE(identical(sys.d, i2));
  EXPECT_LE(realizability_residual(sys), 1e-12);
}

TEST(ToQuadrature, UncoupledOscillator) {
  const OscillatorSpec spec(Matrix::Zero(2, 2), CMatrix::Zero(1, 2), CMatrix::Identity(1, 1));
  const QuadratureSystem sys = to_quadrature(spec, vacuum_field(1));
  EXPECT_TRUE(identical(sys.a, Matrix(Matrix::Zero(2, 2))));
  EXPECT_TRUE(identical(sys.b, Matrix(Matrix::Zero(2, 2))));
  EXPECT_TRUE(identical(sys.c, Matrix(Matrix::Zero(2, 2))));
  EXPECT_TRUE(identical(sys.d, Matrix(Matrix::Identity(2, 2))));
}

TEST(ToQuadrature, ClosedHarmonicOscillator) {
  const OscillatorSpec spec(Matrix::Identity(2, 2), CMatrix::Zero(1, 2), CMatrix::Identity(1, 1));
  const QuadratureSystem sys = to_quadrature(spec, vacuum_field(1));
  EXPECT_TRUE(identical(sys.a, Matrix(2.0 * J2())));
  EXPECT_TRUE(identical(sys.b, Matrix(Matrix::Zero(2, 2))));
}

TEST(ToQuadrature, ScatteringPhaseRotatesOutputs) {
  CMatrix s(1, 1);
  s << std::polar(1.0, 0.3);
  const OscillatorSpec spec(Matrix::Zero(2, 2), CMatrix::Zero(1, 2), s);
  const QuadratureSystem sys = to_quadrature(spec, vacuum_field(1));
  EXPECT_NEAR(sys.d(0, 0), std::cos(0.3), 1e-15);
  EXPECT_NEAR(sys.d(0, 1), -std::sin(0.3), 1e-15);
  EXPECT_NEAR(sys.d(1, 0), std::sin(0.3), 1e-15);
}

TEST(ToQuadrature, RandomSpecsAreRealizable) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const Eigen::Index n = 1 + trial % 3;
    const Eigen::Index m = 1 + (trial / 3) % 3;
    const QuadratureSystem sys = to_quadrature(random_spec(gen, n, m), vacuum_field(m));
    EXPECT_LE(realizability_residual(sys), 1e-10) << "trial " << trial;
    const Matrix dd = sys.d.transpose() * sys.d - Matrix::Identity(2 * m, 2 * m);
    EXPECT_LE(dd.norm(), 1e-10);
    const Matrix sigma = symplectic_form(m);
    EXPECT_LE((sys.d * sigma - sigma * sys.d).norm(), 1e-10);
  }
}

TEST(ToQuadrature, RejectsInvalidParameters) {
  Matrix r = Matrix::Zero(2, 2);
  r(0, 1) = 1.0;
  EXPECT_THROW(OscillatorSpec(r, CMatrix::Zero(1, 2), CMatrix::Identity(1, 1)), ModelError);
  CMatrix s(1, 1);
  s << cd(1.1, 0.0);
  EXPECT_THROW(OscillatorSpec(Matrix::Zero(2, 2), CMatrix::Zero(1, 2), s), ModelError);
  EXPECT_THROW(OscillatorSpec(Matrix::Zero(2, 2), CMatrix::Zero(1, 4), CMatrix::Identity(1, 1)),
               ModelError);
  EXPECT_THROW(OscillatorSpec(Matrix::Zero(3, 3), CMatrix::Zero(1, 3), CMatrix::Identity(1, 1)),
               ModelError);
  EXPECT_THROW(to_quadrature(cavity(), vacuum_field(2)), ModelError);
  try {
    OscillatorSpec(r, CMatrix::Zero(1, 2), CMatrix::Identity(1, 1));
  } catch (const ModelError& e) {
    EXPECT_NE(std::string(e.what()).find("symmetric"), std::string::npos);
  }
}

TEST(Realizability, HandComputedResidual) {
  const Matrix i2 = Matrix::Identity(2, 2);
  EXPECT_NEAR(realizability_residual(i2, i2, J2(), J2()), 3.0 * std::sqrt(2.0), 1e-14);
  EXPECT_EQ(realizability_residual(Matrix::Zero(2, 2), Matrix::Zero(2, 2), J2(), J2()), 0.0);
  EXPECT_LE(realizability_residual(-0.005 * i2, -0.1 * i2, J2(), J2()), 1e-12);
  EXPECT_THROW(realizability_residual(i2, Matrix::Zero(2, 4), J2(), J2()), DomainError);
}

TEST(Realizability, DetectsNonPhysicalDamping) {
  // Damping without the matching noise input breaks the commutation relations.
  const Matrix a = -0.005 * Matrix::Identity(2, 2);
  EXPECT_NEAR(realizability_residual(a, Matrix::Zero(2, 2), J2(), J2()), 0.01 * std::sqrt(2.0),
              1e-15);
}

TEST(Heisenberg, Examples) {
  for (Eigen::Index n = 1; n <= 4; ++n) {
    const HeisenbergReport vac = heisenberg_check(Matrix::Identity(2 * n, 2 * n), symplectic_form(n));
    EXPECT_NEAR(vac.min_eig, 0.0, 1e-12);
    EXPECT_TRUE(vac.satisfied);
  }
  const HeisenbergReport half = heisenberg_check(0.5 * Matrix::Identity(4, 4), symplectic_form(2));
  EXPECT_NEAR(half.min_eig, -0.5, 1e-12);
  EXPECT_FALSE(half.satisfied);
  EXPECT_THROW(heisenberg_check(Matrix::Identity(2, 2), symplectic_form(2)), DomainError);
}

TEST(Heisenberg, TwoCavitySteadyState) {
  const QuadratureSystem sys = to_quadrature(cavity(), vacuum_field(1));
  const Matrix a = block_diag({sys.a, sys.a});
  const Matrix b = block_diag({sys.b, sys.b});
  const Matrix p = solve_steady_state(a, b * b.transpose());
  const HeisenbergReport rep = heisenberg_check(p, symplectic_form(2));
  EXPECT_TRUE(rep.satisfied);
  EXPECT_NEAR(rep.min_eig, 0.0, 1e-9);
}

TEST(Heisenberg, RandomRealizableSteadyStates) {
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 100; ++seed) {
    const OscillatorSpec spec = random_realizable_system(seed, {.modes = static_cast<Eigen::Index>(1 + seed % 2), .fields = static_cast<Eigen::Index>(1 + seed % 3)});
    const QuadratureSystem sys = to_quadrature(spec, vacuum_field(spec.fields()));
    if (is_hurwitz(sys.a).abscissa > -1e-3) continue;
    const Matrix p = solve_steady_state(sys.a, sys.b * sys.b.transpose());
    EXPECT_GE(heisenberg_check(p, sys.theta).min_eig, -1e-8) << "seed " << seed;
    ++checked;
  }
}

TEST(VacuumField, Statistics) {
  const ItoFieldSpec one = vacuum_field(1);
  EXPECT_TRUE(identical(one.statistics(), Matrix(Matrix::Identity(2, 2))));
  EXPECT_TRUE(identical(one.commutator(), J2()));
  const ItoFieldSpec two = vacuum_field(2);
  EXPECT_TRUE(identical(two.statistics(), Matrix(Matrix::Identity(4, 4))));
  EXPECT_TRUE(identical(two.commutator(), symplectic_form(2)));
  EXPECT_THROW(vacuum_field(0), ModelError);
}

TEST(VacuumField, ItoMatrixEigenvaluesAreZeroAndTwo) {
  const ItoFieldSpec f = vacuum_field(1);
  // F_w = I + iJ = [[1, i], [−i, 1]].
  const Eigen::Matrix2cd fw = f.statistics().cast<cd>() + cd(0.0, 1.0) * f.commutator().cast<cd>();
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(fw);
  EXPECT_NEAR(es.eigenvalues()(0), 0.0, 1e-15);
  EXPECT_NEAR(es.eigenvalues()(1), 2.0, 1e-15);
}

TEST(ItoField, RejectsNonPhysicalStatistics) {
  EXPECT_THROW(ItoFieldSpec(0.5 * Matrix::Identity(2, 2)), ModelError);
  EXPECT_THROW(ItoFieldSpec(Matrix::Identity(3, 3)), ModelError);
  // Thermal field: S_w = 3I is admissible.
  EXPECT_NO_THROW(ItoFieldSpec(3.0 * Matrix::Identity(2, 2)));
}

}  // namespace
}  // namespace qlin
