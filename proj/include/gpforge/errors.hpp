#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent user input. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                   message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class AlphabetMismatch : public InputError {
 public:
  using InputError::InputError;
};

class PartialMapError : public InputError {
 public:
  using InputError::InputError;
};

class DegenerateEdgeError : public InputError {
 public:
  using InputError::InputError;
};

class StableLetterClash : public InputError {
 public:
  using InputError::InputError;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class UnsupportedEdgeError : public InputError {
 public:
  using InputError::InputError;
};

class ConfigurationError : public InputError {
 public:
  using InputError::InputError;
};

class InvalidComplexError : public InputError {
 public:
  using InputError::InputError;
};

class DisconnectedError : public InputError {
 public:
  using InputError::InputError;
};

class UnknownNodeError : public InputError {
 public:
  using InputError::InputError;
};

// A violated internal invariant: always a bug, never bad input. Exit code 3.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gpforge
