#pragma once

#include <stdexcept>
#include <string>

namespace gmkp {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad instance, bad flag value, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An explicit node or step budget ran out before the search finished.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace gmkp
