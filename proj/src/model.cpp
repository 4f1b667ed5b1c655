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

#include "qlin/model.hpp"

#include <complex>
#include <sstream>
#include <string>

#include "qlin/error.hpp"

namespace qlin {
namespace {

using cd = std::complex<double>;

std::string dims(const auto& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

OscillatorSpec::OscillatorSpec(Matrix hamiltonian, CMatrix coupling,
                               CMatrix scattering)
    : r_(std::move(hamiltonian)),
      k_(std::move(coupling)),
      s_(std::move(scattering)) {
  if (r_.rows() == 0 || r_.rows() != r_.cols() || r_.rows() % 2 != 0) {
    throw ModelError("R must be a non-empty 2n x 2n matrix, got " + dims(r_));
  }
  if (!r_.allFinite() || !k_.allFinite() || !s_.allFinite()) {
    throw ModelError("oscillator parameters must be finite");
  }
  if (r_ != r_.transpose()) {
    throw ModelError("R must be symmetric");
  }
  if (k_.cols() != r_.rows()) {
    throw ModelError("K must have 2n = " + std::to_string(r_.rows()) +
                     " columns, got " + dims(k_));
  }
  if (s_.rows() != k_.rows() || s_.cols() != k_.rows()) {
    throw ModelError("S must be m x m with m = rows(K) = " +
                     std::to_string(k_.rows()) + ", got " + dims(s_));
  }
  const double unitarity =
      (s_.adjoint() * s_ - CMatrix::Identity(s_.rows(), s_.cols())).norm();
  if (unitarity > tol::kStructural) {
    throw ModelError("S must be unitary: ||S^H S - I||_F = " +
                     std::to_string(unitarity));
  }
}

ItoFieldSpec::ItoFieldSpec(Matrix statistics) : s_w_(std::move(statistics)) {
  if (s_w_.rows() == 0 || s_w_.rows() != s_w_.cols() || s_w_.rows() % 2 != 0) {
    throw ModelError("S_w must be a non-empty 2m x 2m matrix, got " +
                     dims(s_w_));
  }
  if (!s_w_.allFinite()) throw ModelError("S_w must be finite");
  if (s_w_ != s_w_.transpose()) throw ModelError("S_w must be symmetric");
  const double lam = min_eig_hermitian(s_w_, commutator());
  if (lam < -tol::kRealizable) {
    throw ModelError("F_w = S_w + T_w must be positive semidefinite, min eig " +
                     std::to_string(lam));
  }
}

ItoFieldSpec vacuum_field(Eigen::Index m) {
  if (m < 1) throw ModelError("vacuum_field requires m >= 1");
  return ItoFieldSpec(Matrix::Identity(2 * m, 2 * m));
}

QuadratureSystem to_quadrature(const OscillatorSpec& spec,
                               const ItoFieldSpec& field) {
  const Eigen::Index n = spec.modes();
  const Eigen::Index m = spec.fields();
  if (field.fields() != m) {
    throw ModelError("field count mismatch: oscillator couples to " +
                     std::to_string(m) + " fields, Ito spec has " +
                     std::to_string(field.fields()));
  }
  const Matrix theta = symplectic_form(n);
  const CMatrix& k = spec.coupling();
  const CMatrix& s = spec.scattering();
  const cd i(0.0, 1.0);

  // Complex-form drift and input matrices acting on (dA; dA#).
  const CMatrix ktk = k.adjoint() * k;
  const Matrix a = 2.0 * theta * (spec.hamiltonian() + ktk.imag());

  CMatrix coupling_block(2 * n, 2 * m);
  coupling_block << -k.adjoint() * s, k.transpose() * s.conjugate();
  const CMatrix b_o = 2.0 * i * theta.cast<cd>() * coupling_block;

  // (dA_j; dA_j#) = ½ [[1, i], [1, -i]] (dw_{2j-1}; dw_{2j}).
  CMatrix to_fields = CMatrix::Zero(2 * m, 2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    to_fields(j, 2 * j) = 0.5;
    to_fields(j, 2 * j + 1) = 0.5 * i;
    to_fields(m + j, 2 * j) = 0.5;
    to_fields(m + j, 2 * j + 1) = -0.5 * i;
  }
  const CMatrix b_complex = b_o * to_fields;
  const double residue = b_complex.size() ? b_complex.imag().cwiseAbs().maxCoeff() : 0.0;
  if (residue > tol::kStructural * std::max(1.0, b_complex.cwiseAbs().maxCoeff())) {
    throw ModelError("input matrix has imaginary residue " +
                     std::to_string(residue) + " after quadrature conversion");
  }

  Matrix c(2 * m, 2 * n);
  Matrix d(2 * m, 2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    c.row(2 * j) = 2.0 * k.row(j).real();
    c.row(2 * j + 1) = 2.0 * k.row(j).imag();
    for (Eigen::Index l = 0; l < m; ++l) {
      const cd sjl = s(j, l);
      d(2 * j, 2 * l) = sjl.real();
      d(2 * j, 2 * l + 1) = -sjl.imag();
      d(2 * j + 1, 2 * l) = sjl.imag();
      d(2 * j + 1, 2 * l + 1) = sjl.real();
    }
  }

  QuadratureSystem sys{n, m, a, b_complex.real(), c, d, theta, field};

  const double orth =
      (d.transpose() * d - Matrix::Identity(2 * m, 2 * m)).norm();
  if (orth > tol::kRealizable) {
    throw ModelError("D is not orthogonal: residual " + std::to_string(orth));
  }
  const double res = realizability_residual(sys);
  if (res > tol::kRealizable) {
    throw ModelError("converted system is not physically realizable: residual " +
                     std::to_string(res));
  }
  return sys;
}

double realizability_residual(const Matrix& a, const Matrix& b,
                              const Matrix& theta, const Matrix& commutator) {
  if (a.rows() != a.cols() || theta.rows() != a.rows() ||
      theta.cols() != a.cols() || b.rows() != a.rows() ||
      commutator.rows() != b.cols() || commutator.cols() != b.cols()) {
    throw DomainError("realizability_residual: dimension mismatch (A " +
                      dims(a) + ", B " + dims(b) + ", Θ " + dims(theta) +
                      ", T_w " + dims(commutator) + ")");
  }
  // -i B (iΣ) Bᵀ = B Σ Bᵀ.
  return (a * theta + theta * a.transpose() +
          b * commutator * b.transpose())
      .norm();
}

double realizability_residual(const QuadratureSystem& sys) {
  return realizability_residual(sys.a, sys.b, sys.theta,
                                sys.field.commutator());
}

HeisenbergReport heisenberg_check(const Matrix& p, const Matrix& theta,
                                  double tolerance) {
  if (p.rows() != theta.rows() || p.cols() != theta.cols()) {
    throw DomainError("heisenberg_check: P is " + dims(p) + " but Θ is " +
                      dims(theta));
  }
  const double lam = min_eig_hermitian(p, theta);
  return {lam, lam >= -tolerance};
}

}  // namespace qlin
