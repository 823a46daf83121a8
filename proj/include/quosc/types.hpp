// Copyright 2026 The quosc authors
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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace quosc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Factorization of the composite Hilbert space. The first factor is the
/// qubit (dimension 2 for composite operators, 1 for oscillator-only
/// objects), the second the truncated Fock space.
struct Dims {
  Index qubit = 2;
  Index fock = 0;

  Index total() const { return qubit * fock; }
  bool operator==(const Dims&) const = default;
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operand shapes do not match the declared subsystem dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input failed a mathematical precondition (hermiticity, positivity,
/// completeness, unitarity, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// State population leaked into the guarded top of the Fock ladder.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Step size too coarse for the integrator's stability region.
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// A least-squares fit was requested on degenerate or insufficient data.
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace quosc
