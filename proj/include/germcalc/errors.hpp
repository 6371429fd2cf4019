// Error types raised by the germcalc engine.
#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

namespace germcalc {

enum class ErrorKind {
  FieldMismatch,
  FieldError,
  SyntaxError,
  SubscriptOutOfRange,
  NonAffineSubscript,
  UnboundParameter,
  UnknownVariable,
  BudgetExhausted,
  NotASuperset,
  NotIndexedBy,
  InvalidWitness,
  BaseMismatch,
  InvalidSystem,
  ScriptError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// A parse failure, positioned at a 1-based line and column.
class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, const std::string& message, std::size_t line,
             std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(std::uint64_t consumed)
      : Error(ErrorKind::BudgetExhausted,
              "step budget exhausted after " + std::to_string(consumed) +
                  " pair reductions"),
        consumed_(consumed) {}

  std::uint64_t consumed() const noexcept { return consumed_; }

 private:
  std::uint64_t consumed_;
};

class NotIndexedBy : public Error {
 public:
  explicit NotIndexedBy(std::set<std::uint32_t> missing);

  const std::set<std::uint32_t>& missing() const noexcept { return missing_; }

 private:
  std::set<std::uint32_t> missing_;
};

}  // namespace germcalc
