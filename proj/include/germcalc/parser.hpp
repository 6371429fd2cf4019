// Text forms of polynomials and of one-parameter generator families.
//
// Grammar (whitespace-insensitive):
//   expr     := term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := atom ['^' nat]
//   atom     := rational | 'i' | var | '-' factor | '(' expr ')'
//   var      := 'x_' (nat | '{' affine '}')
//   affine   := [nat ['*']] param [('+'|'-') nat] | nat
//   rational := int ['/' nat]
//
// Subscripts in templates are affine in the single parameter, a*k + b with
// a >= 0 and b >= 1, so every instantiation k >= 0 names a valid variable.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "germcalc/polynomial.hpp"

namespace germcalc {

/// a*k + b
struct AffineSubscript {
  std::uint64_t slope = 0;
  std::uint64_t offset = 1;

  VarIndex at(std::uint64_t k) const;
  friend bool operator==(const AffineSubscript&, const AffineSubscript&) = default;
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { Rational, ImaginaryUnit, Var, Add, Sub, Mul, Neg, Pow };
  Kind kind;
  mpq_class value;            // Rational
  AffineSubscript subscript;  // Var
  std::uint32_t exponent = 0; // Pow
  ExprPtr lhs;
  ExprPtr rhs;
};

class GeneratorTemplate {
 public:
  GeneratorTemplate(std::string parameter, ExprPtr body, std::string source);

  const std::string& parameter() const noexcept { return parameter_; }
  const std::string& source() const noexcept { return source_; }
  const ExprPtr& body() const noexcept { return body_; }

  /// Every subscript occurring in the body, in first-occurrence order.
  std::vector<AffineSubscript> subscripts() const;

  /// The family member at parameter value k. Throws SubscriptOutOfRange if a
  /// subscript overflows the variable index range.
  Polynomial instantiate(std::uint64_t k, Field field = Field::Real) const;

 private:
  std::string parameter_;
  ExprPtr body_;
  std::string source_;
};

/// Throws ParseError (SyntaxError, SubscriptOutOfRange, FieldError,
/// UnboundParameter).
Polynomial parse_poly(std::string_view text, Field field);

/// Throws ParseError (SyntaxError, NonAffineSubscript, UnboundParameter,
/// SubscriptOutOfRange).
GeneratorTemplate parse_template(std::string_view text);

/// Minimal-parenthesis text of the body; parses back to the same tree.
std::string print_template(const GeneratorTemplate& t);

/// A constant expression such as "5", "-3/2" or "(1 + i)".
Scalar parse_scalar(std::string_view text, Field field);

/// Deterministic text; parse_poly(print_canonical(p), p.field()) == p.
std::string print_canonical(const Polynomial& p);

/// Univariate polynomials in the curve parameter s.
UniPoly parse_univariate(std::string_view text);
std::string print_univariate(const UniPoly& p);

}  // namespace germcalc
