#pragma once

#include <stdexcept>
#include <string>

namespace uwdgos {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the support of a density, log term or parameter space.
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidScheme : public Error {
 public:
  using Error::Error;
};

/// Iterative solver stopped before reaching its tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// The likelihood equations have no interior root for this sample.
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

/// An asymptotic expansion produced a value outside the range the estimator needs
/// (non-positive inner expectation, reliability outside (0,1), non-finite result).
class ApproximationOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonConcaveAtOptimum : public Error {
 public:
  using Error::Error;
};

class InvalidEstimate : public Error {
 public:
  using Error::Error;
};

class PlanInfeasible : public Error {
 public:
  using Error::Error;
};

class SupportViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed CSV or config input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace uwdgos
