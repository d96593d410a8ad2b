#pragma once

#include <stdexcept>
#include <string>

namespace contmatch {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's contract (bad sizes,
// empty domains, malformed files). Maps to CLI exit code 2.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A pulse or shift would push more than the allowed fraction of energy
// outside the observation window.
class LeakageError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class FormatError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Valid inputs, but the arithmetic could not be carried out reliably.
// Maps to CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class RankDeficientError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace contmatch
