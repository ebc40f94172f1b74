// SPDX-License-Identifier: Apache-2.0
//
// Exception types shared by every rlr module.
//
// Two families: ParameterError for inputs that violate a documented
// precondition, NumericalError for computations that could not reach their
// accuracy contract. The CLI maps the first to exit code 2 and the second to 3.

#ifndef RLR_ERROR_HPP
#define RLR_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rlr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A matrix argument failed a structural precondition (e.g. not Hermitian).
class PreconditionError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// Argument outside the mathematical domain of a special function.
class DomainError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A series or sum stopped before its truncation bound was met.
class AccuracyError : public NumericalError {
 public:
  AccuracyError(const std::string& what, double achieved_bound)
      : NumericalError(what), achieved_bound_(achieved_bound) {}
  double achieved_bound() const noexcept { return achieved_bound_; }

 private:
  double achieved_bound_;
};

class NotPositiveDefiniteError : public NumericalError {
 public:
  NotPositiveDefiniteError(const std::string& what, std::size_t pivot)
      : NumericalError(what), pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// The whitening matrix of a generalized eigenproblem is not positive definite.
class SingularWhiteningError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace rlr

#endif  // RLR_ERROR_HPP
