#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conprop {

// Malformed input to a library operation: bad index, arity mismatch,
// not-a-permutation and similar.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input that is well-formed but outside what an algorithm handles
// (e.g. a ternary constraint handed to AC-3).
class UnsupportedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The termination measure failed to decrease, or a registered function broke
// one of its declared properties while running.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class StepLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A brute-force computation would exceed its configured cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace conprop
