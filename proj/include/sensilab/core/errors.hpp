#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sensilab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments: out-of-range symbols, wrong arities, unsupported parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A materialization or search budget was exceeded.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// The requested measure or set shape is not defined for this input.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// An argument fails a checked precondition (e.g. an unverified collection).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Always a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace sensilab
