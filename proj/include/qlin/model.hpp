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

#include "qlin/linalg.hpp"

namespace qlin {

// Physical parametrization of n open oscillators coupled to m boson fields:
// Hamiltonian H = ½ xᵀ R x, coupling L = K x, scattering matrix S.
// Invariants (checked on construction): R symmetric, K is m x 2n, S unitary.
class OscillatorSpec {
 public:
  OscillatorSpec(Matrix hamiltonian, CMatrix coupling, CMatrix scattering);

  Eigen::Index modes() const { return r_.rows() / 2; }
  Eigen::Index fields() const { return k_.rows(); }

  const Matrix& hamiltonian() const { return r_; }
  const CMatrix& coupling() const { return k_; }
  const CMatrix& scattering() const { return s_; }

  friend bool operator==(const OscillatorSpec& x, const OscillatorSpec& y) {
    return identical(x.r_, y.r_) && identical(x.k_, y.k_) && identical(x.s_, y.s_);
  }

 private:
  Matrix r_;
  CMatrix k_;
  CMatrix s_;
};

// Itô table of the quadrature noise w: dw dwᵀ = F_w dt with
// F_w = S_w + T_w and T_w = i·diag_m(J). Only the real statistics matrix S_w
// is free; the commutator part is fixed by the boson field algebra.
class ItoFieldSpec {
 public:
  explicit ItoFieldSpec(Matrix statistics);

  Eigen::Index fields() const { return s_w_.rows() / 2; }
  const Matrix& statistics() const { return s_w_; }
  // Imaginary part of T_w, i.e. T_w = i * commutator().
  Matrix commutator() const { return symplectic_form(fields()); }

  friend bool operator==(const ItoFieldSpec& x, const ItoFieldSpec& y) {
    return identical(x.s_w_, y.s_w_);
  }

 private:
  Matrix s_w_;
};

// S_w = I: vacuum input on each of m fields.
ItoFieldSpec vacuum_field(Eigen::Index m);

// dx = A x dt + B dw, dy = C x dt + D dw in the quadrature basis
// x = (q1,p1,...), w = 2(Re A1, Im A1, ...).
struct QuadratureSystem {
  Eigen::Index n = 0;
  Eigen::Index m = 0;
  Matrix a;
  Matrix b;
  Matrix c;
  Matrix d;
  Matrix theta;
  ItoFieldSpec field;
};

QuadratureSystem to_quadrature(const OscillatorSpec& spec,
                               const ItoFieldSpec& field);

// ‖AΘ + ΘAᵀ − i B T_w Bᵀ‖_F. With T_w = iΣ this is the real quantity
// ‖AΘ + ΘAᵀ + B Σ Bᵀ‖_F.
double realizability_residual(const Matrix& a, const Matrix& b,
                              const Matrix& theta, const Matrix& commutator);
double realizability_residual(const QuadratureSystem& sys);

struct HeisenbergReport {
  double min_eig = 0.0;
  bool satisfied = false;
};

// λ_min(P + iΘ) and the verdict λ_min >= -tolerance.
HeisenbergReport heisenberg_check(const Matrix& p, const Matrix& theta,
                                  double tolerance = tol::kVerdict);

}  // namespace qlin
