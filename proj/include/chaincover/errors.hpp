#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chaincover {

// Base for everything thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by otherwise well-formed input (empty subset,
// nonpositive scale, index out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed input shape: non-square table, non-finite entries, carrier
// size mismatch between two spaces.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Request exceeds a configured resource gate (exact cover search limit).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Text input could not be parsed; carries 1-based line/column context.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace chaincover
