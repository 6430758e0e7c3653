#pragma once

#include <stdexcept>
#include <string>

namespace mf {

// Base of every error the library raises. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument lies on a pole of a rational function.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of the requested function or branch.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A truncation bound could not be met within PrecisionBudget::max_terms.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Malformed parameters (lengths, ranges, the Meijer pole side condition).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ContourMismatch : public Error {
 public:
  using Error::Error;
};

class NoConvergentContour : public Error {
 public:
  using Error::Error;
};

class PoleFamiliesNotSeparable : public Error {
 public:
  using Error::Error;
};

class RadiusTooLarge : public Error {
 public:
  using Error::Error;
};

class PrecisionTooLow : public Error {
 public:
  using Error::Error;
};

// An exact identity that must hold did not (e.g. the gamma-sum vanishing).
class AssertionError : public Error {
 public:
  using Error::Error;
};

}  // namespace mf
