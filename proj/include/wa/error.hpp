#pragma once

#include <stdexcept>
#include <string>

namespace wa {

/// Base of every error raised by the library. The CLI maps each subclass to
/// a fixed exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const { return 2; }
};

/// Malformed input: syntax errors, invariant violations, wrong measure.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The input is well formed but violates an operation's precondition
/// (e.g. a non-functional automaton handed to equivalence).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The requested (measure, problem) combination is open or undecidable.
class UnsupportedError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 3; }
};

/// A configured exploration cap was exceeded.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
  int exit_code() const override { return 4; }
};

}  // namespace wa
