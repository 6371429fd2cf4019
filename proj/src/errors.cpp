#include "germcalc/errors.hpp"

namespace germcalc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::FieldError: return "FieldError";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SubscriptOutOfRange: return "SubscriptOutOfRange";
    case ErrorKind::NonAffineSubscript: return "NonAffineSubscript";
    case ErrorKind::UnboundParameter: return "UnboundParameter";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::NotASuperset: return "NotASuperset";
    case ErrorKind::NotIndexedBy: return "NotIndexedBy";
    case ErrorKind::InvalidWitness: return "InvalidWitness";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::InvalidSystem: return "InvalidSystem";
    case ErrorKind::ScriptError: return "ScriptError";
  }
  return "Unknown";
}

namespace {

std::string positioned(const std::string& message, std::size_t line,
                       std::size_t column) {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

std::string missing_message(const std::set<std::uint32_t>& missing) {
  std::string out = "germ is not indexed by the given set; missing {";
  bool first = true;
  for (auto v : missing) {
    if (!first) out += ", ";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

}  // namespace

ParseError::ParseError(ErrorKind kind, const std::string& message,
                       std::size_t line, std::size_t column)
    : Error(kind, positioned(message, line, column)),
      line_(line),
      column_(column),
      detail_(message) {}

NotIndexedBy::NotIndexedBy(std::set<std::uint32_t> missing)
    : Error(ErrorKind::NotIndexedBy, missing_message(missing)),
      missing_(std::move(missing)) {}

}  // namespace germcalc
