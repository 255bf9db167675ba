#pragma once

#include <stdexcept>
#include <string>

namespace specpert {

/// Base class of every error raised by the library. The CLI maps all of
/// these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a structural invariant (hermiticity, shape, off-diagonality).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver failed to meet its residual contract.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An eigenvalue sits within tolerance of an excluded endpoint of an open set,
/// so membership cannot be decided.
class AmbiguityError : public Error {
 public:
  AmbiguityError(double eigenvalue, double distance)
      : Error("eigenvalue " + std::to_string(eigenvalue) +
              " lies within " + std::to_string(distance) +
              " of an open boundary point"),
        eigenvalue_(eigenvalue),
        distance_(distance) {}

  double eigenvalue() const noexcept { return eigenvalue_; }
  double distance() const noexcept { return distance_; }

 private:
  double eigenvalue_;
  double distance_;
};

/// Ran Q is not the graph of an operator over Ran P (||P - Q|| >= 1).
class RepresentabilityError : public Error {
 public:
  using Error::Error;
};

class RankError : public Error {
 public:
  using Error::Error;
};

/// Theorem check invoked on a problem whose spectral layout does not fit it.
class CaseError : public Error {
 public:
  using Error::Error;
};

}  // namespace specpert
