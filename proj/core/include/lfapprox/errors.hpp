#pragma once

#include <stdexcept>
#include <string>

namespace lfapprox {

// Root of every failure the library reports. Subclasses name the failure
// class; the CLI maps them onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated precondition on caller-supplied arguments.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Argument within tolerance of a pole of the function being evaluated.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Working precision is not sufficient for the requested accuracy.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Iterative scheme exceeded its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Numerical check against a known identity failed beyond tolerance.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Coefficient table is not Hecke-normalized (a_1 != 1).
class NormalizationError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Coefficient table too short for the certified series cutoff.
class CutoffError : public Error {
 public:
  using Error::Error;
};

// Argument outside the regime where an analytic bound applies.
class RegimeError : public Error {
 public:
  using Error::Error;
};

// Poles too close together for a separating integration circle.
class SeparationError : public Error {
 public:
  using Error::Error;
};

class SearchError : public Error {
 public:
  using Error::Error;
};

// Derivative magnitudes fell inside the noise band while classifying a zero.
class AmbiguityError : public Error {
 public:
  using Error::Error;
};

}  // namespace lfapprox
