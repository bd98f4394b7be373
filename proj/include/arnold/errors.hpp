#pragma once

#include <stdexcept>
#include <string>

namespace arnold {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The adaptive stepper needed a step below `min_step` (or exhausted its
/// step budget): the parameters lie outside the supported stiffness range.
class StepUnderflow : public Error {
 public:
  using Error::Error;
};

/// Möbius structure requested for a flow whose autonomous term is not cos x.
class NotMoebius : public Error {
 public:
  using Error::Error;
};

/// Determinant of the integrated monodromy drifted too far from one.
class DeterminantDrift : public Error {
 public:
  using Error::Error;
};

/// No sign change found while expanding a root bracket.
class BracketFailure : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature could not reach its target within the panel budget.
class QuadratureStall : public Error {
 public:
  using Error::Error;
};

/// Asymptotic formula requested below its validity threshold.
class DomainTooSmall : public Error {
 public:
  using Error::Error;
};

/// Forcing has a non-simple zero (or vanishes identically).
class DegenerateForcing : public Error {
 public:
  using Error::Error;
};

/// Parameters fall outside the regime a residual check is defined for.
class OutOfRegime : public Error {
 public:
  using Error::Error;
};

/// Phase velocity changed sign inside a window that requires a fixed sign.
class SignChange : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (parameters, configuration, serialized documents).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace arnold
