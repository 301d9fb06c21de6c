#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netforge {

// Bad arguments or configuration. Maps to CLI exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input text; carries the 1-based offending line.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Filesystem failures. Maps to CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Too few (or degenerate) observations for an estimator.
class InsufficientDataError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace netforge
