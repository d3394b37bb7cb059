// Copyright 2026 The cohroof Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cohroof {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Global numerical tolerances shared by every module.
namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double eigen_floor = -1e-10;
inline constexpr double reconstruction = 1e-10;
inline constexpr double isometry = 1e-10;
inline constexpr double norm = 1e-10;
inline constexpr double spectral_drop = 1e-12;
inline constexpr double transform_drop = 1e-14;
inline constexpr double incoherence = 1e-12;
inline constexpr double block_link = 1e-12;
}  // namespace tol

enum class ErrorCode {
  invalid_argument,
  not_hermitian,
  not_positive_semidefinite,
  trace_mismatch,
  not_normalized,
  not_isometry,
  not_x_state,
  dimension_mismatch,
  internal_inconsistency,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `row`/`col` locate the offending
/// entry when one exists (-1 otherwise) and `value` carries the violating
/// quantity (modulus, eigenvalue, trace, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, long row = -1, long col = -1,
        double value = 0.0)
      : std::runtime_error(what), code_(code), row_(row), col_(col), value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  long row() const noexcept { return row_; }
  long col() const noexcept { return col_; }
  double value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  long row_;
  long col_;
  double value_;
};

}  // namespace cohroof
