#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elimkit {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// A caller violated a documented precondition (bad sizes, out-of-range arguments).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A term or combinatorial budget was exhausted. Carries the running count.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t count)
      : Error(what + " (count " + std::to_string(count) + ")"), count_(count) {}
  std::size_t count() const noexcept { return count_; }

 private:
  std::size_t count_;
};

/// Evaluation hit a zero divisor at the given specialization.
class PoleError : public Error {
 public:
  explicit PoleError(std::size_t node)
      : Error("pole at specialization (node " + std::to_string(node) + ")"), node_(node) {}
  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

/// Symbolic expansion met a division by a non-constant expression.
class UnsupportedDivision : public Error {
 public:
  explicit UnsupportedDivision(std::size_t node)
      : Error("unsupported division at node " + std::to_string(node)) {}
};

/// Interpolation design matrix does not have full column rank.
class SingularSystem : public Error {
 public:
  SingularSystem() : Error("points do not determine basis") {}
};

/// The right-hand side is not in the column span.
class NotInSpan : public Error {
 public:
  NotInSpan() : Error("values not in span") {}
};

}  // namespace elimkit
