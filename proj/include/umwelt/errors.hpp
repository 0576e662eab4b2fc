#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace umwelt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands live on different state spaces.
class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (e.g. gamma on a model with
/// memory, or an invalid model passed to an analysis).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap (table entries, joint states, enumeration budget)
/// would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. line/column are 1-based; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace umwelt
