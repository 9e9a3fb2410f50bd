#pragma once

#include <stdexcept>
#include <string>

namespace conewave {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cross-section operator Δ_h + V0 + (n-2)²/4 is not strictly positive.
class NonPositiveOperator : public Error {
 public:
  using Error::Error;
};

/// Bessel order outside (-1/2, ∞).
class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

class BadGrid : public Error {
 public:
  using Error::Error;
};

/// L^p norms with p != 2 need either a y-independent or a single-mode field.
class AngularUnavailable : public Error {
 public:
  using Error::Error;
};

class IncompatibleSpectra : public Error {
 public:
  using Error::Error;
};

class TimeStepTooCoarse : public Error {
 public:
  using Error::Error;
};

/// Raised by the harness when an experiment is asked to run on an exponent
/// pair that would make it vacuous.
class NotInExcludedRegion : public Error {
 public:
  using Error::Error;
};

/// Configuration file problems (missing keys, wrong types).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A config names a pair that fails the admissibility guard it claims.
class GuardViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace conewave
