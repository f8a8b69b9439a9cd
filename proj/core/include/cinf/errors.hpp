#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cinf {

/// Operand dimensions, arities or vector lengths disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A variable or slot index is outside the ambient dimension.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// An expression is not closed: a parameter occurs outside any integral binding it,
/// or a parameter id would be bound twice along one path.
class BindingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Adaptive quadrature ran out of bisection depth before meeting its tolerance.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

/// Text did not conform to the expression grammar. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message + " at " + std::to_string(line) + ":" +
                           std::to_string(column)),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace cinf
