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
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qlin/error.hpp"
#include "qlin/linalg.hpp"

namespace qlin {
namespace {

TEST(Linalg, SymplecticFormIsBlockDiagonalJ) {
  const Matrix t = symplectic_form(3);
  ASSERT_EQ(t.rows(), 6);
  EXPECT_TRUE(identical(t.block(2, 2, 2, 2), J2()));
  EXPECT_EQ(t(0, 2), 0.0);
  EXPECT_TRUE(identical(Matrix(t * t), Matrix(-Matrix::Identity(6, 6))));
}

TEST(Linalg, BlockDiagSkipsEmptyBlocks) {
  const Matrix m = block_diag({Matrix::Ones(1, 1), Matrix(0, 0), 2.0 * Matrix::Ones(2, 2)});
  ASSERT_EQ(m.rows(), 3);
  EXPECT_EQ(m(0, 0), 1.0);
  EXPECT_EQ(m(0, 1), 0.0);
  EXPECT_EQ(m(2, 2), 2.0);
}

TEST(MatrixExponential, ZeroIsIdentity) {
  EXPECT_TRUE(identical(matrix_exponential(Matrix::Zero(3, 3)), Matrix(Matrix::Identity(3, 3))));
}

TEST(MatrixExponential, Diagonal) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  const Matrix e = matrix_exponential(m);
  EXPECT_NEAR(e(0, 0), std::numbers::e, 1e-12 * std::numbers::e);
  EXPECT_NEAR(e(1, 1), 1.0 / std::numbers::e, 1e-12);
  EXPECT_EQ(e(0, 1), 0.0);
}

TEST(MatrixExponential, RotationGenerator) {
  for (double theta : {0.1, 1.0, 2.5, -3.0, 10.0}) {
    const Matrix e = matrix_exponential(theta * J2());
    Matrix rot(2, 2);
    rot << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    EXPECT_LE(max_abs(e - rot), 1e-12) << theta;
  }
}

TEST(MatrixExponential, MatchesTaylorOracleOnRandomInputs) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d = 2 + trial % 11;
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(gen) * (1 + trial % 4);
    const Matrix e = matrix_exponential(m);
    const Matrix ref = oracle::taylor_exp(m);
    EXPECT_LE((e - ref).norm(), 1e-12 * ref.norm()) << "trial " << trial;
  }
}

TEST(MatrixExponential, RejectsNonFinite) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = std::nan("");
  EXPECT_THROW(matrix_exponential(m), Error);
  EXPECT_THROW(matrix_exponential(Matrix::Identity(2, 2) * 1e6), Error);
  EXPECT_THROW(matrix_exponential(Matrix::Zero(2, 3)), Error);
}

TEST(MinEigHermitian, AnalyticCases) {
  EXPECT_NEAR(min_eig_hermitian(Matrix::Identity(2, 2), J2()), 0.0, 1e-12);
  EXPECT_NEAR(min_eig_hermitian(Matrix::Zero(2, 2), J2()), -1.0, 1e-12);
  EXPECT_NEAR(oracle::hermitian_2x2_min_eig(1.0, {0.0, 1.0}, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(oracle::hermitian_min_eig(Matrix::Zero(2, 2), J2()), -1.0, 1e-12);
}

TEST(MinEigHermitian, TwoByTwoClosedForm) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = u(gen), b = u(gen), d = u(gen), y = u(gen);
    Matrix x(2, 2);
    x << a, b, b, d;
    const Matrix im = y * J2();
    // H = X + iY has off-diagonal b + i y.
    const double ref = oracle::hermitian_2x2_min_eig(a, {b, y}, d);
    EXPECT_NEAR(min_eig_hermitian(x, im), ref, 1e-12);
  }
}

TEST(MinEigHermitian, EntangledStateViolatesPartialTransposeLmi) {
  Matrix p(4, 4);
  p << 0.5028, 0, -0.0528, 0, 0, 0.5028, 0, 0.0528, -0.0528, 0, 0.5028, 0, 0, 0.0528, 0, 0.5028;
  p *= 2.0;
  Matrix y = Matrix::Zero(4, 4);
  y.block(0, 0, 2, 2) = J2();
  y.block(2, 2, 2, 2) = -J2();
  const double got = min_eig_hermitian(p, y);
  EXPECT_LT(got, 0.0);
  EXPECT_NEAR(got, oracle::hermitian_min_eig(p, y), 1e-12);
  // Closed form: 2·(0.5028 − 0.0528) − 1.
  EXPECT_NEAR(got, -0.1, 1e-12);
}

TEST(MinEigHermitian, AgreesWithInertiaOracle) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 2 + 2 * (trial % 3);
    Matrix g(d, d), w(d, d);
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = u(gen);
    for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = u(gen);
    const Matrix x = g + g.transpose();
    const Matrix y = w - w.transpose();
    EXPECT_NEAR(min_eig_hermitian(x, y), oracle::hermitian_min_eig(x, y), 1e-12);
  }
}

TEST(MinEigHermitian, RejectsBadInput) {
  EXPECT_THROW(min_eig_hermitian(Matrix::Identity(2, 2), Matrix::Zero(4, 4)), Error);
  Matrix ns = Matrix::Identity(2, 2);
  ns(0, 1) = 1.0;
  EXPECT_THROW(min_eig_hermitian(ns, J2()), Error);
  EXPECT_THROW(min_eig_hermitian(Matrix::Identity(2, 2), Matrix::Ones(2, 2)), Error);
}

TEST(Hurwitz, Examples) {
  const HurwitzReport zero = is_hurwitz(Matrix::Zero(3, 3));
  EXPECT_FALSE(zero.hurwitz);
  EXPECT_EQ(zero.abscissa, 0.0);
  const HurwitzReport neg = is_hurwitz(-Matrix::Identity(3, 3));
  EXPECT_TRUE(neg.hurwitz);
  EXPECT_DOUBLE_EQ(neg.abscissa, -1.0);
  const HurwitzReport rot = is_hurwitz(J2());
  EXPECT_FALSE(rot.hurwitz);
  EXPECT_NEAR(rot.abscissa, 0.0, 1e-15);
}

TEST(Symmetry, RelativeTolerance) {
  Matrix m = Matrix::Identity(2, 2) * 1e6;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0 + 1e-7;
  EXPECT_TRUE(is_symmetric(m));
  m(1, 0) = 2.0;
  EXPECT_FALSE(is_symmetric(m));
  EXPECT_FALSE(is_symmetric(Matrix::Zero(2, 3)));
}

}  // namespace
}  // namespace qlin
