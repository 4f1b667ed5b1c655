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

#include <stdexcept>
#include <string>

namespace qlin {

// Base for every error raised by the library. Subclasses name the contract
// that was violated so callers (and the CLI) can map them to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A constructor invariant of a model type does not hold.
class ModelError : public Error {
 public:
  using Error::Error;
};

// Plant/controller/wiring composition is inconsistent or non-physical.
class CompositionError : public Error {
 public:
  using Error::Error;
};

// A numerical solver could not produce a result (singular system, overflow,
// non-Hurwitz drift where a steady state is required).
class SolverError : public Error {
 public:
  using Error::Error;
};

// A covariance matrix violates the uncertainty relation P + iΘ >= 0.
class InvalidCovarianceError : public Error {
 public:
  using Error::Error;
};

// An argument is outside the domain of a formula (e.g. negative radicand).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Scenario configuration could not be parsed or validated.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qlin
