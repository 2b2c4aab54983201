// Copyright 2026 The lindblad Authors
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
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lindblad {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Column-stacked density matrix, length n^2.
using VectorizedState = CVector;
/// Linear map on vectorized states, (n^2) x (n^2).
using Superoperator = CMatrix;

using ScalarFn = std::function<double(double)>;

inline constexpr Complex kI{0.0, 1.0};

// Error hierarchy. Numerical failures and invalid inputs are distinguished so
// the CLI can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class InvalidDimension : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class IndexOutOfRange : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A Liouvillian specification that is not hermitian / not positive at some time.
class InvalidSpec : public InvalidArgument {
 public:
  InvalidSpec(const std::string& what, double t) : InvalidArgument(what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class StiffnessError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// y(t) <= 0 in the qubit rotating frame: g2 = log y is undefined.
class FrameBreakdown : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoUniqueFixedPoint : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Limit cycle not reached within the burn-in window.
class TransientNotElapsed : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class OrbitNotClosed : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace lindblad
