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

#include <Eigen/Dense>
#include <initializer_list>

namespace qlin {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;

// Tolerances shared across modules. Problems handled here are at most a
// dozen states wide and well conditioned, so absolute thresholds suffice.
namespace tol {
inline constexpr double kStructural = 1e-12;
inline constexpr double kRealizable = 1e-10;
inline constexpr double kVerdict = 1e-9;
inline constexpr double kHeisenberg = 1e-8;
}  // namespace tol

// J = [[0, 1], [-1, 0]].
Matrix J2();

// diag_n(J), the commutation matrix of n oscillators in (q1,p1,...,qn,pn)
// ordering.
Matrix symplectic_form(Eigen::Index modes);

Matrix block_diag(std::initializer_list<Matrix> blocks);

// Symmetric part (M + M^T) / 2.
Matrix symmetrize(const Matrix& m);

double max_abs(const Matrix& m);

// Same shape and bit-identical entries (Eigen's operator== requires equal
// shapes).
template <typename L, typename R>
bool identical(const Eigen::MatrixBase<L>& a, const Eigen::MatrixBase<R>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
}

bool is_symmetric(const Matrix& m, double tolerance = tol::kStructural);

// Smallest eigenvalue of the Hermitian matrix X + iY, computed from the real
// symmetric embedding [[X, -Y], [Y, X]] (same spectrum, each eigenvalue
// doubled). X must be symmetric and Y antisymmetric.
double min_eig_hermitian(const Matrix& x, const Matrix& y);

// Smallest eigenvalue of a real symmetric matrix.
double min_eig_symmetric(const Matrix& m);

// exp(M) by scaling and squaring with a diagonal Padé approximant.
// Throws SolverError on non-finite input or overflow.
Matrix matrix_exponential(const Matrix& m);

struct HurwitzReport {
  bool hurwitz = false;
  // max Re(λ) over the spectrum.
  double abscissa = 0.0;
};

HurwitzReport is_hurwitz(const Matrix& a);

}  // namespace qlin
