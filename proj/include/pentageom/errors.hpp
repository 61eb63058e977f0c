#pragma once

#include <stdexcept>
#include <string>

namespace pentageom {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A linear-fractional denominator vanished (numerically).
class PoleError : public Error {
 public:
  using Error::Error;
};

class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

/// A function was evaluated outside its domain of definition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A field threw or returned a non-finite value at a stencil point.
class EvaluationFailure : public Error {
 public:
  using Error::Error;
};

/// Independent membership criteria disagreed outside the tolerance band.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class LiftFailure : public Error {
 public:
  using Error::Error;
};

class ClassificationError : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// The gradient of a defining function is numerically zero.
class DegenerateGradient : public Error {
 public:
  using Error::Error;
};

class WitnessNotFound : public Error {
 public:
  using Error::Error;
};

class WitnessViolation : public Error {
 public:
  using Error::Error;
};

class ExhaustionError : public Error {
 public:
  using Error::Error;
};

class UnknownSuite : public Error {
 public:
  using Error::Error;
};

}  // namespace pentageom
