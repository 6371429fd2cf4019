// Sparse multivariate polynomials over Q and Q(i) in the variables
// x_1, x_2, ... (the index set is the positive integers).
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "germcalc/scalar.hpp"

namespace germcalc {

using VarIndex = std::uint32_t;
using VarSet = std::set<VarIndex>;

/// A power product x_{v1}^{e1} ... x_{vk}^{ek}; entries sorted by variable,
/// every stored exponent positive.
class Monomial {
 public:
  using Entry = std::pair<VarIndex, std::uint32_t>;

  Monomial() = default;
  /// Entries may be unsorted and contain zero exponents or repeats.
  explicit Monomial(std::vector<Entry> entries);
  static Monomial variable(VarIndex v, std::uint32_t exponent = 1);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool is_one() const noexcept { return entries_.empty(); }
  std::uint64_t degree() const noexcept { return degree_; }
  std::uint32_t exponent(VarIndex v) const;

  bool divides(const Monomial& other) const;
  /// Precondition: divides(other).
  Monomial quotient_of(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.entries_ == b.entries_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) {
    return !(a == b);
  }

 private:
  std::vector<Entry> entries_;
  std::uint64_t degree_ = 0;
};

/// Graded reverse lexicographic comparison with x_1 > x_2 > ...
/// Returns <0, 0, >0.
int grevlex_compare(const Monomial& a, const Monomial& b);

/// Strict "a sorts after b" in canonical printing order (descending).
struct CanonicalGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grevlex_compare(a, b) > 0;
  }
};

struct Term {
  Monomial monomial;
  Scalar coefficient;
};

class BasePoint;

class Polynomial {
 public:
  explicit Polynomial(Field field = Field::Real) : field_(field) {}
  /// Builds a canonical polynomial from arbitrary terms (summing repeats,
  /// dropping zeros).
  Polynomial(Field field, std::vector<Term> terms);

  static Polynomial constant(const Scalar& c);
  static Polynomial constant(Field field, long c) {
    return constant(Scalar(field, c));
  }
  static Polynomial variable(Field field, VarIndex v);
  static Polynomial monomial(const Scalar& c, Monomial m);

  Field field() const noexcept { return field_; }
  /// Terms in canonical (descending grevlex) order.
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  std::uint64_t total_degree() const;
  /// Lowest total degree among the terms (0 for the zero polynomial).
  std::uint64_t min_degree() const;

  Polynomial to_field(Field target) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Scalar& rhs);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    return a += b;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    return a -= b;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }

  Polynomial pow(std::uint32_t exponent) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

 private:
  void check_same_field(const Polynomial& other) const;

  Field field_;
  std::vector<Term> terms_;
};

/// Variables occurring with nonzero exponent in some term.
VarSet support(const Polynomial& p);
VarSet support(const std::vector<Polynomial>& ps);

/// A point of K^T with finitely many nonzero coordinates.
class BasePoint {
 public:
  explicit BasePoint(Field field = Field::Real) : field_(field) {}
  BasePoint(Field field, std::map<VarIndex, Scalar> coords);

  Field field() const noexcept { return field_; }
  const std::map<VarIndex, Scalar>& coords() const noexcept { return coords_; }
  Scalar coord(VarIndex v) const;
  bool is_origin() const noexcept { return coords_.empty(); }
  BasePoint to_field(Field target) const;

  friend bool operator==(const BasePoint& a, const BasePoint& b) {
    return a.field_ == b.field_ && a.coords_ == b.coords_;
  }
  friend bool operator!=(const BasePoint& a, const BasePoint& b) {
    return !(a == b);
  }

 private:
  Field field_;
  std::map<VarIndex, Scalar> coords_;
};

Scalar evaluate(const Polynomial& p, const BasePoint& x0);

/// Dense univariate polynomial in the curve parameter s over Q; coeffs[k]
/// multiplies s^k, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<mpq_class> coeffs);
  static UniPoly constant(const mpq_class& c);
  static UniPoly s();

  const std::vector<mpq_class>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  mpq_class at_zero() const { return coeffs_.empty() ? mpq_class(0) : coeffs_[0]; }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const mpq_class& c, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

/// A real polynomial curve s -> z(s) through the base point; coordinates not
/// listed stay at their base value.
class RationalCurve {
 public:
  /// Throws InvalidWitness if a component does not pass through the base.
  RationalCurve(BasePoint base, std::map<VarIndex, UniPoly> components);

  const BasePoint& base() const noexcept { return base_; }
  const std::map<VarIndex, UniPoly>& components() const noexcept {
    return components_;
  }
  UniPoly component(VarIndex v) const;

 private:
  BasePoint base_;
  std::map<VarIndex, UniPoly> components_;
};

/// p(z(s)). Throws FieldMismatch for a complex polynomial.
UniPoly compose_curve(const Polynomial& p, const RationalCurve& z);

}  // namespace germcalc

template <>
struct std::hash<germcalc::Monomial> {
  std::size_t operator()(const germcalc::Monomial& m) const noexcept;
};
