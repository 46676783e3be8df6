#pragma once

#include <stdexcept>
#include <string>

namespace phasewave {

/// Base class for all phasewave exceptions.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Mathematically invalid input: modulus out of range, pole evaluation,
/// unsupported lattice, non-finite argument.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Evaluation at a pole of a singular branch or of the Weierstrass function.
class PoleError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Quadrature failed to reach the requested tolerance; carries the best
/// estimate obtained so far.
class AccuracyError : public Error {
public:
  AccuracyError(const std::string& what, double best)
      : Error(what), best_estimate(best) {}
  double best_estimate;
};

/// ODE state escaped the overflow guard; carries the last valid time.
class BlowUpError : public Error {
public:
  BlowUpError(const std::string& what, double t)
      : Error(what), last_valid_t(t) {}
  double last_valid_t;
};

/// A quantity that must stay positive (scaling a(x), branch W, amplitude R)
/// was found nonpositive.
class PositivityError : public Error {
public:
  using Error::Error;
};

/// A quantity that must be constant (first integral) varied beyond tolerance.
class InconsistencyError : public Error {
public:
  using Error::Error;
};

/// The coupling system has no solution for the given h matrix.
class IncompatibleCouplingError : public Error {
public:
  using Error::Error;
};

/// The coupling system admits no real solution (sign obstruction).
class RealSolutionImpossibleError : public Error {
public:
  using Error::Error;
};

/// The requested branch does not exist for these invariants (the root cubic
/// has a complex-conjugate pair); carries the cubic's discriminant.
class BranchUnavailableError : public Error {
public:
  BranchUnavailableError(const std::string& what, double discriminant_)
      : Error(what), discriminant(discriminant_) {}
  double discriminant;
};

/// An integration path crossed a zero of the integrand's denominator
/// (vanishing amplitude on a phase or angular-coordinate integral).
class SingularPathError : public Error {
public:
  using Error::Error;
};

/// Configuration parse or validation failure (CLI exit code 2).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Propagation precondition failure, e.g. non-decaying field at the window
/// edges (CLI exit code 3).
class BoundaryError : public Error {
public:
  using Error::Error;
};

}  // namespace phasewave
