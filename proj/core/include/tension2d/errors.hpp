#pragma once

#include <stdexcept>
#include <string>

namespace tension2d {

/// Base class for all solver-level failures. Each subclass maps to one
/// failure category that callers (the CLI in particular) dispatch on.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Curve has a node where |dX/dtheta| vanishes.
class ZeroSpeedError : public Error {
 public:
  using Error::Error;
};

/// Discrete star norm below the simplicity threshold.
class SelfIntersectingError : public Error {
 public:
  using Error::Error;
};

/// Curve is traversed clockwise (signed area <= 0).
class OrientationError : public Error {
 public:
  using Error::Error;
};

/// Kernel evaluated at (numerically) coincident points.
class SingularPointError : public Error {
 public:
  using Error::Error;
};

/// Off-interface evaluation requested inside the accuracy guard band.
class TooCloseToInterfaceError : public Error {
 public:
  using Error::Error;
};

/// Plain solve requested for an operator with a nullspace (circle).
class SingularOperatorError : public Error {
 public:
  using Error::Error;
};

/// Nullspace requested for an operator that is invertible.
class NotSingularError : public Error {
 public:
  using Error::Error;
};

}  // namespace tension2d
