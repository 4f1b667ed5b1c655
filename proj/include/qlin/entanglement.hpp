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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlin/covariance.hpp"
#include "qlin/interconnect.hpp"
#include "qlin/model.hpp"

namespace qlin {

// Covariances in this library use the vacuum = I normalization that goes
// with [q, p] = 2i. Matrices quoted in vacuum = I/2 units (the usual
// quantum-optics normalization) are converted by a factor of two.
Matrix from_half_vacuum_units(const Matrix& p);

// Two-mode quantum block of a (possibly larger) closed-loop covariance.
Matrix quantum_block(const Matrix& p);

enum class Verdict { kSeparable, kEntangled };

const char* to_string(Verdict v);

struct EntanglementReport {
  // Δ̃ and ν are expressed in vacuum = I/2 units, so the separability
  // threshold sits at ν = 1/2 and log_negativity = max(0, −ln 2ν).
  double delta_tilde = 0.0;
  double nu = 0.0;
  double log_negativity = 0.0;
  // λ_min(P11 + i·diag(J, −J)).
  double sep_min_eig = 0.0;
  Verdict verdict = Verdict::kSeparable;
};

// λ_min(P11 + i·diag(J, −J)); nonnegative iff the Gaussian state is
// separable. Throws InvalidCovarianceError when P11 + i·diag(J, J) is not
// positive semidefinite (within 1e-8).
double separability_lmi(const Matrix& p11);

EntanglementReport log_negativity(const Matrix& p11);

struct SuddenDeath {
  // First grid time from which E_N stays below the verdict tolerance.
  double grid_time = 0.0;
  // Zero crossing of −ln 2ν linearly interpolated between the bracketing
  // samples; equals grid_time when the trajectory starts separable.
  double time = 0.0;
};

std::optional<SuddenDeath> sudden_death_time(const CovarianceTrajectory& traj);

struct RandomSystemOptions {
  Eigen::Index modes = 1;
  Eigen::Index fields = 1;
  // K = 0: closed oscillator.
  bool decoupled = false;
};

// Deterministic from seed: R symmetric with entries in [-1, 1], K with
// entries in the complex unit disk, S = I.
OscillatorSpec random_realizable_system(std::uint64_t seed,
                                        const RandomSystemOptions& opts = {});

// 4x4 covariance satisfying both P + i·diag(J, ±J) >= 0: local states plus a
// random classical correlation.
Matrix random_separable_covariance(std::uint64_t seed);

// Random valid two-mode covariance S·diag(ν1, ν1, ν2, ν2)·Sᵀ for a random
// symplectic S (local squeezers, beam splitter, two-mode squeezer). Roughly
// half of the draws are entangled.
Matrix random_quantum_covariance(std::uint64_t seed);

struct VerifyOptions {
  std::size_t transient_steps = 400;
  std::size_t max_controller_draws = 1000;
  // Test hook: negate the controller noise rows of B̃ after composition.
  bool inject_sign_flip_fault = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct TrialRecord {
  std::uint64_t seed = 0;
  bool steady_checked = false;
  bool steady_ok = false;
  bool transient_ok = false;
  double steady_margin = 0.0;
  double transient_max_log_negativity = 0.0;
  double transient_min_sep_eig = 0.0;
  std::string failure;
  std::string dump;

  bool ok() const { return failure.empty(); }
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t steady_pass = 0;
  std::size_t steady_skipped = 0;
  std::size_t transient_pass = 0;
  double worst_steady_margin = 0.0;
  double worst_transient_log_negativity = 0.0;
  double worst_transient_sep_eig = 0.0;
  std::vector<TrialRecord> records;

  bool passed() const;
};

// Both no-go legs for one composed system: the steady state of
// `steady_loop` (skipped when null) must satisfy the separability LMI, and
// the trajectory of `transient_loop` from `p0` must keep E_N at zero.
TrialRecord check_no_go(const ClosedLoop* steady_loop, const ClosedLoop& transient_loop,
                        const Matrix& p0, const VerifyOptions& opts = {});

VerificationReport verify_no_go(std::uint64_t seed, std::size_t trials,
                                const VerifyOptions& opts = {});

}  // namespace qlin
