#pragma once

#include <stdexcept>
#include <string>

namespace leighton {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad or inconsistent user input (CLI exit code 2).
struct InputError : Error {
  using Error::Error;
};

// A closure axiom of a local system does not hold (caller may retry).
struct AxiomError : Error {
  using Error::Error;
};

// An internal self-check failed; always a bug (CLI exit code 3).
struct VerificationError : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

// Raised when an arrow would invert an edge; the caller subdivides.
struct OrientationError : Error {
  using Error::Error;
};

}  // namespace leighton
