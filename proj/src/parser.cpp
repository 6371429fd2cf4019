#include "germcalc/parser.hpp"

#include <cctype>
#include <limits>
#include <optional>

#include "germcalc/errors.hpp"

namespace germcalc {

VarIndex AffineSubscript::at(std::uint64_t k) const {
  constexpr std::uint64_t kMax = std::numeric_limits<VarIndex>::max();
  if (slope != 0 && k > (kMax - offset) / slope)
    throw Error(ErrorKind::SubscriptOutOfRange, "subscript overflows at k = " +
                                                    std::to_string(k));
  std::uint64_t value = slope * k + offset;
  if (value > kMax)
    throw Error(ErrorKind::SubscriptOutOfRange, "subscript overflows");
  return static_cast<VarIndex>(value);
}

namespace {

constexpr std::uint32_t kMaxExponent = 4096;
constexpr int kMaxDepth = 200;

enum class Mode { Poly, Template, Curve };

class Parser {
 public:
  Parser(std::string_view text, Mode mode) : text_(text), mode_(mode) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    skip_ws();
    if (!at_end()) fail(ErrorKind::SyntaxError, "unexpected '" + std::string(1, peek()) + "'");
    return e;
  }

  const std::string& parameter() const { return parameter_; }

 private:
  [[noreturn]] void fail(ErrorKind kind, const std::string& message) const {
    fail_at(kind, message, pos_);
  }

  [[noreturn]] void fail_at(ErrorKind kind, const std::string& message,
                            std::size_t pos) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(kind, message, line, col);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (at_end()) fail(ErrorKind::SyntaxError, std::string("expected '") + c + "' before end of input");
      fail(ErrorKind::SyntaxError, std::string("expected '") + c + "'");
    }
  }

  static ExprPtr make(ExprNode node) { return std::make_shared<const ExprNode>(std::move(node)); }
  static ExprPtr binary(ExprNode::Kind kind, ExprPtr a, ExprPtr b) {
    ExprNode n{kind, {}, {}, 0, std::move(a), std::move(b)};
    return make(std::move(n));
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth)
        parser.fail(ErrorKind::SyntaxError, "expression nested too deeply");
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  ExprPtr expr() {
    DepthGuard guard(*this);
    ExprPtr acc = term();
    for (;;) {
      if (accept('+'))
        acc = binary(ExprNode::Kind::Add, acc, term());
      else if (accept('-'))
        acc = binary(ExprNode::Kind::Sub, acc, term());
      else
        return acc;
    }
  }

  ExprPtr term() {
    ExprPtr acc = factor();
    while (accept('*')) acc = binary(ExprNode::Kind::Mul, acc, factor());
    return acc;
  }

  ExprPtr factor() {
    DepthGuard guard(*this);
    ExprPtr base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      std::uint64_t e = small_nat("exponent");
      if (e > kMaxExponent) fail_at(ErrorKind::SyntaxError, "exponent too large", start);
      ExprNode n{ExprNode::Kind::Pow, {}, {}, static_cast<std::uint32_t>(e), base, nullptr};
      return make(std::move(n));
    }
    return base;
  }

  // Digits as an exact integer of arbitrary size.
  mpz_class big_nat() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail(ErrorKind::SyntaxError, "expected a number");
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  std::uint64_t small_nat(const char* what) {
    std::size_t start = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail(ErrorKind::SyntaxError, std::string("expected ") + what);
    std::uint64_t value = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      unsigned digit = static_cast<unsigned>(peek() - '0');
      if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
        fail_at(ErrorKind::SyntaxError, std::string(what) + " too large", start);
      value = value * 10 + digit;
      ++pos_;
    }
    return value;
  }

  bool ident_start(char c) const { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

  std::string identifier() {
    std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  ExprPtr atom() {
    skip_ws();
    if (at_end()) fail(ErrorKind::SyntaxError, "unexpected end of input");
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class q(big_nat());
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        std::size_t start = pos_;
        mpz_class den = big_nat();
        if (den == 0) fail_at(ErrorKind::SyntaxError, "zero denominator", start);
        q = mpq_class(q.get_num(), den);
        q.canonicalize();
      }
      ExprNode n{ExprNode::Kind::Rational, q, {}, 0, nullptr, nullptr};
      return make(std::move(n));
    }
    if (c == '-') {
      ++pos_;
      ExprNode n{ExprNode::Kind::Neg, {}, {}, 0, factor(), nullptr};
      return make(std::move(n));
    }
    if (c == '(') {
      ++pos_;
      ExprPtr inner = expr();
      expect(')');
      return inner;
    }
    if (c == 'x' && peek(1) == '_') {
      pos_ += 2;
      return variable();
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      std::string name = identifier();
      if (name == "i") {
        if (mode_ == Mode::Curve)
          fail_at(ErrorKind::FieldError, "imaginary unit in a real curve", start);
        ExprNode n{ExprNode::Kind::ImaginaryUnit, {}, {}, 0, nullptr, nullptr};
        return make(std::move(n));
      }
      if (mode_ == Mode::Curve && name == "s") {
        ExprNode n{ExprNode::Kind::Var, {}, AffineSubscript{0, 1}, 0, nullptr, nullptr};
        return make(std::move(n));
      }
      fail_at(ErrorKind::SyntaxError, "unexpected identifier '" + name + "'", start);
    }
    fail(ErrorKind::SyntaxError, "unexpected '" + std::string(1, c) + "'");
  }

  ExprPtr variable() {
    if (mode_ == Mode::Curve) fail(ErrorKind::SyntaxError, "curves use the parameter s only");
    AffineSubscript sub;
    std::size_t start = pos_;
    if (peek() == '{') {
      ++pos_;
      sub = affine(start);
      expect('}');
    } else {
      std::uint64_t v = small_nat("subscript");
      sub = AffineSubscript{0, v};
    }
    if (sub.offset < 1)
      fail_at(ErrorKind::SubscriptOutOfRange, "subscript must be >= 1", start);
    if (sub.slope == 0 && sub.offset > std::numeric_limits<VarIndex>::max())
      fail_at(ErrorKind::SubscriptOutOfRange, "subscript too large", start);
    ExprNode n{ExprNode::Kind::Var, {}, sub, 0, nullptr, nullptr};
    return make(std::move(n));
  }

  void bind_parameter(const std::string& name, std::size_t at) {
    if (mode_ != Mode::Template)
      fail_at(ErrorKind::UnboundParameter, "parameter '" + name + "' outside a template", at);
    if (name == "i")
      fail_at(ErrorKind::SyntaxError, "'i' cannot be a parameter", at);
    if (parameter_.empty()) {
      parameter_ = name;
    } else if (parameter_ != name) {
      fail_at(ErrorKind::UnboundParameter,
              "template already uses parameter '" + parameter_ + "', found '" + name + "'", at);
    }
  }

  // Parses a signed sum of constants and multiples of the parameter.
  AffineSubscript affine(std::size_t brace_pos) {
    std::int64_t slope = 0;
    std::int64_t offset = 0;
    bool first = true;
    constexpr std::int64_t kLimit = std::int64_t{1} << 40;
    for (;;) {
      skip_ws();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        break;
      }
      first = false;
      std::size_t term_start = pos_;
      std::optional<std::uint64_t> coefficient;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coefficient = small_nat("subscript");
        if (*coefficient > static_cast<std::uint64_t>(kLimit))
          fail_at(ErrorKind::SubscriptOutOfRange, "subscript too large", term_start);
        skip_ws();
        if (peek() == '*') {
          ++pos_;
          skip_ws();
          if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '(')
            fail_at(ErrorKind::NonAffineSubscript, "subscript must be affine in the parameter", term_start);
          if (!ident_start(peek())) fail(ErrorKind::SyntaxError, "expected parameter");
        }
      }
      if (ident_start(peek())) {
        std::size_t at = pos_;
        std::string name = identifier();
        bind_parameter(name, at);
        skip_ws();
        if (peek() == '*' || peek() == '^' || peek() == '(' || ident_start(peek()))
          fail_at(ErrorKind::NonAffineSubscript, "subscript must be affine in the parameter", term_start);
        slope += sign * static_cast<std::int64_t>(coefficient.value_or(1));
      } else if (coefficient) {
        if (peek() == '^' || peek() == '(')
          fail_at(ErrorKind::NonAffineSubscript, "subscript must be affine in the parameter", term_start);
        offset += sign * static_cast<std::int64_t>(*coefficient);
      } else if (peek() == '(') {
        fail_at(ErrorKind::NonAffineSubscript, "subscript must be affine in the parameter", term_start);
      } else {
        fail(ErrorKind::SyntaxError, "expected subscript");
      }
      if (slope > kLimit || offset > kLimit || slope < -kLimit || offset < -kLimit)
        fail_at(ErrorKind::SubscriptOutOfRange, "subscript too large", term_start);
    }
    if (slope < 0)
      fail_at(ErrorKind::SubscriptOutOfRange, "subscript decreases in the parameter", brace_pos);
    if (offset < 1)
      fail_at(ErrorKind::SubscriptOutOfRange, "subscript must be >= 1 for every k >= 0", brace_pos);
    return AffineSubscript{static_cast<std::uint64_t>(slope), static_cast<std::uint64_t>(offset)};
  }

  std::string_view text_;
  Mode mode_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  std::string parameter_;
};

Polynomial evaluate_ast(const ExprNode& node, Field field, std::uint64_t k) {
  switch (node.kind) {
    case ExprNode::Kind::Rational:
      return Polynomial::constant(Scalar(field, node.value));
    case ExprNode::Kind::ImaginaryUnit:
      if (field == Field::Real)
        throw Error(ErrorKind::FieldError, "imaginary unit under the real field");
      return Polynomial::constant(Scalar(field, 0, 1));
    case ExprNode::Kind::Var:
      return Polynomial::variable(field, node.subscript.at(k));
    case ExprNode::Kind::Add:
      return evaluate_ast(*node.lhs, field, k) + evaluate_ast(*node.rhs, field, k);
    case ExprNode::Kind::Sub:
      return evaluate_ast(*node.lhs, field, k) - evaluate_ast(*node.rhs, field, k);
    case ExprNode::Kind::Mul:
      return evaluate_ast(*node.lhs, field, k) * evaluate_ast(*node.rhs, field, k);
    case ExprNode::Kind::Neg:
      return -evaluate_ast(*node.lhs, field, k);
    case ExprNode::Kind::Pow:
      return evaluate_ast(*node.lhs, field, k).pow(node.exponent);
  }
  return Polynomial(field);
}

bool uses_imaginary(const ExprNode& node) {
  if (node.kind == ExprNode::Kind::ImaginaryUnit) return true;
  return (node.lhs && uses_imaginary(*node.lhs)) || (node.rhs && uses_imaginary(*node.rhs));
}

void collect_subscripts(const ExprNode& node, std::vector<AffineSubscript>& out) {
  if (node.kind == ExprNode::Kind::Var) {
    bool seen = false;
    for (const auto& s : out) seen = seen || s == node.subscript;
    if (!seen) out.push_back(node.subscript);
  }
  if (node.lhs) collect_subscripts(*node.lhs, out);
  if (node.rhs) collect_subscripts(*node.rhs, out);
}

std::string print_node(const ExprNode& node, const std::string& param, int context) {
  auto wrap = [&](std::string text, int own) { return own < context ? "(" + text + ")" : text; };
  switch (node.kind) {
    case ExprNode::Kind::Rational: {
      std::string text = rational_to_string(node.value);
      return node.value.get_den() == 1 && sgn(node.value) >= 0 ? text : wrap(text, 2);
    }
    case ExprNode::Kind::ImaginaryUnit:
      return "i";
    case ExprNode::Kind::Var: {
      const AffineSubscript& s = node.subscript;
      if (s.slope == 0) return "x_" + std::to_string(s.offset);
      std::string a = s.slope == 1 ? "" : std::to_string(s.slope);
      return "x_{" + a + param + "+" + std::to_string(s.offset) + "}";
    }
    case ExprNode::Kind::Add:
      return wrap(print_node(*node.lhs, param, 1) + " + " + print_node(*node.rhs, param, 2), 1);
    case ExprNode::Kind::Sub:
      return wrap(print_node(*node.lhs, param, 1) + " - " + print_node(*node.rhs, param, 2), 1);
    case ExprNode::Kind::Mul:
      return wrap(print_node(*node.lhs, param, 2) + "*" + print_node(*node.rhs, param, 3), 2);
    case ExprNode::Kind::Neg:
      return wrap("-" + print_node(*node.lhs, param, 3), 3);
    case ExprNode::Kind::Pow:
      return print_node(*node.lhs, param, 5) + "^" + std::to_string(node.exponent);
  }
  return "";
}

}  // namespace

GeneratorTemplate::GeneratorTemplate(std::string parameter, ExprPtr body, std::string source)
    : parameter_(std::move(parameter)), body_(std::move(body)), source_(std::move(source)) {}

std::vector<AffineSubscript> GeneratorTemplate::subscripts() const {
  std::vector<AffineSubscript> out;
  collect_subscripts(*body_, out);
  return out;
}

Polynomial GeneratorTemplate::instantiate(std::uint64_t k, Field field) const {
  return evaluate_ast(*body_, field, k);
}

Polynomial parse_poly(std::string_view text, Field field) {
  Parser parser(text, Mode::Poly);
  ExprPtr ast = parser.parse_all();
  if (field == Field::Real && uses_imaginary(*ast)) {
    std::size_t at = text.find('i');
    std::size_t line = 1, col = 1;
    for (std::size_t j = 0; j < at && j < text.size(); ++j) {
      if (text[j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(ErrorKind::FieldError, "imaginary unit under the real field", line, col);
  }
  return evaluate_ast(*ast, field, 0);
}

GeneratorTemplate parse_template(std::string_view text) {
  Parser parser(text, Mode::Template);
  ExprPtr ast = parser.parse_all();
  if (parser.parameter().empty())
    throw ParseError(ErrorKind::SyntaxError, "template has no parameter", 1, 1);
  return GeneratorTemplate(parser.parameter(), ast, std::string(text));
}

std::string print_template(const GeneratorTemplate& t) { return print_node(*t.body(), t.parameter(), 0); }

Scalar parse_scalar(std::string_view text, Field field) {
  Polynomial p = parse_poly(text, field);
  if (!p.is_constant())
    throw ParseError(ErrorKind::SyntaxError, "expected a constant", 1, 1);
  return p.is_zero() ? Scalar(field) : p.terms().front().coefficient;
}

namespace {

std::string coefficient_text(const Scalar& c) {
  // c does not print negative here.
  if (c.is_real()) return rational_to_string(c.re());
  if (sgn(c.re()) == 0) {
    mpq_class mag = abs(c.im());
    return mag == 1 ? "i" : rational_to_string(mag) + "*i";
  }
  return c.to_string();
}

std::string monomial_text(const Monomial& m) {
  std::string out;
  for (const auto& [v, e] : m.entries()) {
    if (!out.empty()) out += "*";
    out += "x_" + std::to_string(v);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace

std::string print_canonical(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    bool negative = t.coefficient.prints_negative();
    Scalar c = negative ? -t.coefficient : t.coefficient;
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    if (t.monomial.is_one())
      out += coefficient_text(c);
    else if (c.is_one())
      out += monomial_text(t.monomial);
    else
      out += coefficient_text(c) + "*" + monomial_text(t.monomial);
  }
  return out;
}

UniPoly parse_univariate(std::string_view text) {
  Parser parser(text, Mode::Curve);
  ExprPtr ast = parser.parse_all();
  Polynomial p = evaluate_ast(*ast, Field::Real, 0);
  std::vector<mpq_class> coeffs(p.total_degree() + 1);
  for (const auto& t : p.terms()) coeffs[t.monomial.degree()] = t.coefficient.re();
  return UniPoly(std::move(coeffs));
}

std::string print_univariate(const UniPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (long k = p.degree(); k >= 0; --k) {
    const mpq_class& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    bool negative = sgn(c) < 0;
    mpq_class mag = abs(c);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    std::string power = k == 0 ? "" : (k == 1 ? "s" : "s^" + std::to_string(k));
    if (k == 0)
      out += rational_to_string(mag);
    else if (mag == 1)
      out += power;
    else
      out += rational_to_string(mag) + "*" + power;
  }
  return out;
}

}  // namespace germcalc
