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

#include "qlin/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <string>

#include "qlin/error.hpp"

namespace qlin {

Matrix J2() {
  Matrix j(2, 2);
  j << 0.0, 1.0, -1.0, 0.0;
  return j;
}

Matrix symplectic_form(Eigen::Index modes) {
  Matrix theta = Matrix::Zero(2 * modes, 2 * modes);
  for (Eigen::Index k = 0; k < modes; ++k) {
    theta(2 * k, 2 * k + 1) = 1.0;
    theta(2 * k + 1, 2 * k) = -1.0;
  }
  return theta;
}

Matrix block_diag(std::initializer_list<Matrix> blocks) {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out = Matrix::Zero(rows, cols);
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_symmetric(const Matrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.transpose()) <= tolerance * std::max(1.0, max_abs(m));
}

double min_eig_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DomainError("min_eig_symmetric: matrix is not square");
  }
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m),
                                           Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw SolverError("symmetric eigensolver did not converge");
  }
  return es.eigenvalues().minCoeff();
}

double min_eig_hermitian(const Matrix& x, const Matrix& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
    throw DomainError("min_eig_hermitian: size mismatch (" +
                      std::to_string(x.rows()) + "x" +
                      std::to_string(x.cols()) + " vs " +
                      std::to_string(y.rows()) + "x" +
                      std::to_string(y.cols()) + ")");
  }
  if (!is_symmetric(x)) {
    throw DomainError("min_eig_hermitian: real part is not symmetric");
  }
  const double scale = std::max(1.0, max_abs(y));
  if (max_abs(y + y.transpose()) > tol::kStructural * scale) {
    throw DomainError("min_eig_hermitian: imaginary part is not antisymmetric");
  }
  const Eigen::Index n = x.rows();
  Matrix embed(2 * n, 2 * n);
  embed.topLeftCorner(n, n) = x;
  embed.topRightCorner(n, n) = -y;
  embed.bottomLeftCorner(n, n) = y;
  embed.bottomRightCorner(n, n) = x;
  return min_eig_symmetric(embed);
}

Matrix matrix_exponential(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DomainError("matrix_exponential: matrix is not square");
  }
  if (!m.allFinite()) {
    throw SolverError("matrix_exponential: non-finite input");
  }
  Matrix out = m.exp();
  if (!out.allFinite()) {
    throw SolverError("matrix_exponential: overflow");
  }
  return out;
}

HurwitzReport is_hurwitz(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw DomainError("is_hurwitz: matrix is not square");
  }
  if (a.size() == 0) return {false, 0.0};
  Eigen::EigenSolver<Matrix> es(a, false);
  if (es.info() != Eigen::Success) {
    throw SolverError("eigensolver did not converge in is_hurwitz");
  }
  const double abscissa = es.eigenvalues().real().maxCoeff();
  return {abscissa < 0.0, abscissa};
}

}  // namespace qlin
