#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole or a divergence of the function.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed; carries the partial value and an error bound.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double partial = 0.0, double bound = 0.0)
      : Error(what), partial_(partial), bound_(bound) {}
  double partial_value() const noexcept { return partial_; }
  double error_bound() const noexcept { return bound_; }

 private:
  double partial_;
  double bound_;
};

/// A truncated sum did not reach its tolerance before the iteration cap.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double partial, double bound, long long reached)
      : NumericalError(what, partial, bound), reached_(reached) {}
  long long reached() const noexcept { return reached_; }

 private:
  long long reached_;
};

/// Cancellation destroyed more digits than the working precision can spare.
class PrecisionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace casimir
