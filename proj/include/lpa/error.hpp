#pragma once

#include <stdexcept>
#include <string>

namespace lpa {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad graph files, unknown names, syntax errors.
class InputError : public Error {
 public:
  using Error::Error;
};

class GraphError : public InputError {
 public:
  using InputError::InputError;
};

// Text parse failure carrying a 1-based line and column.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(what + " (line " + std::to_string(line) + ", column "
                   + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Arithmetic domain errors (inverse of zero, field mismatch, ...).
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

// A precondition on an operation's arguments was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An action produced a basis element outside the enumerated window.
class OutOfWindow : public Error {
 public:
  using Error::Error;
};

// Grading requested on a module that carries no Z-grading.
class NotGradable : public Error {
 public:
  using Error::Error;
};

}  // namespace lpa
