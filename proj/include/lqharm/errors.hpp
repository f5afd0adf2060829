#pragma once

#include <stdexcept>
#include <string>

namespace lqharm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed files, unknown vertices, invalid parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition does not hold for the supplied data
/// (e.g. a function that should be subharmonic is not).
class PreconditionError : public InputError {
 public:
  PreconditionError(const std::string& what, std::string vertex = {})
      : InputError(what), vertex_(std::move(vertex)) {}
  const std::string& vertex() const { return vertex_; }

 private:
  std::string vertex_;
};

/// A function value needed by an operator is not available.
class MissingValueError : public InputError {
 public:
  explicit MissingValueError(std::string vertex)
      : InputError("function undefined at vertex '" + vertex + "'"), vertex_(std::move(vertex)) {}
  const std::string& vertex() const { return vertex_; }

 private:
  std::string vertex_;
};

/// Internal numerical failure that valid input cannot trigger.
class DefectError : public Error {
 public:
  using Error::Error;
};

/// Iterative method hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace lqharm
