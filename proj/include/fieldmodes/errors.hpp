#pragma once

#include <stdexcept>
#include <string>

namespace fieldmodes {

// Base class for every failure this library reports. Callers that do not care
// about the precise failure mode can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (x <= 0 for
// log-gamma, |x| >= 1 for the 3F2 series, rho <= 2 for disjoint balls, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A series or iteration hit its term/iteration budget before meeting the
// requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// An adaptive integral exhausted its subdivision budget above tolerance.
// Subtype of ConvergenceError: callers treating "ran out of budget" uniformly
// can catch the base type.
class QuadratureError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

// Massless field correlator requested in one spatial dimension: the radial
// integral diverges logarithmically at k -> 0 and needs a mass.
class IrDivergenceError : public Error {
 public:
  using Error::Error;
};

// The closed-form correlator path was asked for a configuration it does not
// cover (wrong family, unequal shapes, mass, overlapping supports, ...).
class UnsupportedConfigurationError : public Error {
 public:
  using Error::Error;
};

// The symplectic products of a set of canonical operator pairs deviate from
// the standard form beyond tolerance: the modes are not canonical.
class CommutatorViolationError : public Error {
 public:
  using Error::Error;
};

// Symplectic eigenvalue extraction could not pair the +/- singular values.
class DegenerateSpectrumError : public Error {
 public:
  using Error::Error;
};

// Two-mode mixing never produced a partial-transpose eigenvalue below 1
// anywhere in the search bracket.
class NoThresholdError : public Error {
 public:
  using Error::Error;
};

// Experiment name not present in the registry.
class UnknownExperimentError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration input (CLI overrides, config files).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fieldmodes
