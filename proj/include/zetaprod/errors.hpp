#pragma once

#include <stdexcept>
#include <string>

namespace zetaprod {

// Base class for everything thrown by the library.  The CLI maps these to
// process exit codes: ConfigError -> 2, CacheMismatchError -> 4, all other
// NumericError subclasses -> 3.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class NumericError : public Error {
public:
  using Error::Error;
};

// Evaluation requested exactly at a pole of the function.
class PoleError : public NumericError {
public:
  using NumericError::NumericError;
};

// Evaluation inside the excluded disk |s-1| <= 1/10 around the zeta pole.
class NearPoleError : public NumericError {
public:
  using NumericError::NumericError;
};

// Argument outside the domain of the operation (on a branch cut, imprimitive
// character where a primitive one is required, malformed interval, ...).
class DomainError : public NumericError {
public:
  using NumericError::NumericError;
};

// A configured capacity bound (sieve limit, modulus limit) was exceeded.
class CapacityError : public NumericError {
public:
  using NumericError::NumericError;
};

// Zero scan count disagrees with the counting formula after grid refinement.
class MissedZeroError : public NumericError {
public:
  using NumericError::NumericError;
};

// theta(t)/pi + 1 + S(t) failed to round to an integer within tolerance.
class IntegralityError : public NumericError {
public:
  using NumericError::NumericError;
};

// Adjacent phase samples jump by >= pi even at the smallest allowed step.
class GridTooCoarseError : public NumericError {
public:
  using NumericError::NumericError;
};

// Evaluation exactly at a zero ordinate where only the one-sided limit is
// defined; the caller should nudge t upward.
class ConventionError : public NumericError {
public:
  using NumericError::NumericError;
};

// The combined product P_X vanished (or nearly so) on the critical line; the
// point is a case-(1) candidate and is counted separately.
class ProductZeroError : public NumericError {
public:
  using NumericError::NumericError;
};

// Bad run configuration (CLI flags, combo spec files, ...).
class ConfigError : public Error {
public:
  using Error::Error;
};

// A zero-cache file exists but its label or tolerance does not match the
// request.
class CacheMismatchError : public Error {
public:
  using Error::Error;
};

} // namespace zetaprod
