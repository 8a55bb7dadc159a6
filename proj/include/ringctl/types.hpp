//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RINGCTL_TYPES_HPP_
#define RINGCTL_TYPES_HPP_

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace ringctl {

using Real = double;
using Complex = std::complex<Real>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealVector = Vector<Real>;
using RealMatrix = Matrix<Real>;
using StateVector = Vector<Complex>;
using ComplexMatrix = Matrix<Complex>;
using SparseOperator = Eigen::SparseMatrix<Complex>;

inline constexpr Real kPi = 3.14159265358979323846;

// Error taxonomy. The CLI maps DomainError/CapacityError to exit code 2
// and the numerical failures to exit code 3.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

class CapacityError : public std::length_error {
public:
  using std::length_error::length_error;
};

class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IterationError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class IntegrationError : public NumericalError {
public:
  IntegrationError(const std::string &what, Real achieved_time)
      : NumericalError(what), achieved_time_(achieved_time) { }

  Real achieved_time() const noexcept { return achieved_time_; }

private:
  Real achieved_time_;
};

}  // namespace ringctl

#endif  // RINGCTL_TYPES_HPP_
