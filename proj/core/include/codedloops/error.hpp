#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace codedloops {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the mathematical data was violated (bad dimension,
/// illegal basis value, mismatched moduli, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A search or table would exceed its configured size budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. Line and column are 1-based; 0 means "unknown".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    std::string out;
    if (line != 0) {
      out += "line " + std::to_string(line);
      if (column != 0) out += ", column " + std::to_string(column);
      out += ": ";
    }
    return out + what;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace codedloops
