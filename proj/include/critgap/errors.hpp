#pragma once

#include <stdexcept>
#include <string>

namespace critgap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument lies on (or numerically on) a pole of the gamma function.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Contour or grid parameters violate a geometric constraint.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Log-scale exponent too large to be represented after cancellation.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// I - A is numerically singular.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Iterative method failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace critgap
