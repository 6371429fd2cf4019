#include "germcalc/polynomial.hpp"

#include <algorithm>

#include "germcalc/errors.hpp"

namespace germcalc {

Monomial::Monomial(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end());
  for (const auto& [v, e] : entries) {
    if (v == 0)
      throw Error(ErrorKind::SubscriptOutOfRange, "variable index must be >= 1");
    if (e == 0) continue;
    if (!entries_.empty() && entries_.back().first == v)
      entries_.back().second += e;
    else
      entries_.emplace_back(v, e);
    degree_ += e;
  }
}

Monomial Monomial::variable(VarIndex v, std::uint32_t exponent) {
  return Monomial({{v, exponent}});
}

std::uint32_t Monomial::exponent(VarIndex v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{v, 0});
  return (it != entries_.end() && it->first == v) ? it->second : 0;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  auto it = other.entries_.begin();
  for (const auto& [v, e] : entries_) {
    while (it != other.entries_.end() && it->first < v) ++it;
    if (it == other.entries_.end() || it->first != v || it->second < e)
      return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial out;
  auto it = entries_.begin();
  for (const auto& [v, e] : other.entries_) {
    std::uint32_t sub = 0;
    while (it != entries_.end() && it->first < v) ++it;
    if (it != entries_.end() && it->first == v) sub = it->second;
    if (e > sub) {
      out.entries_.emplace_back(v, e - sub);
      out.degree_ += e - sub;
    }
  }
  return out;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial out;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == entries_.end() || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      out.entries_.emplace_back(a->first, std::max(a->second, b->second));
      ++a;
      ++b;
    }
    out.degree_ += out.entries_.back().second;
  }
  return out;
}

bool Monomial::coprime(const Monomial& other) const {
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->first == b->first) return false;
    if (a->first < b->first)
      ++a;
    else
      ++b;
  }
  return true;
}

Monomial operator*(const Monomial& x, const Monomial& y) {
  Monomial out;
  auto a = x.entries_.begin();
  auto b = y.entries_.begin();
  while (a != x.entries_.end() || b != y.entries_.end()) {
    if (b == y.entries_.end() || (a != x.entries_.end() && a->first < b->first)) {
      out.entries_.push_back(*a++);
    } else if (a == x.entries_.end() || b->first < a->first) {
      out.entries_.push_back(*b++);
    } else {
      out.entries_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  out.degree_ = x.degree_ + y.degree_;
  return out;
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  // Same degree: look at the highest-indexed variable where the exponents
  // differ; the smaller exponent there wins.
  auto ia = a.entries().rbegin();
  auto ib = b.entries().rbegin();
  while (ia != a.entries().rend() || ib != b.entries().rend()) {
    VarIndex va = ia != a.entries().rend() ? ia->first : 0;
    VarIndex vb = ib != b.entries().rend() ? ib->first : 0;
    if (va == vb) {
      if (ia->second != ib->second) return ia->second < ib->second ? 1 : -1;
      ++ia;
      ++ib;
    } else if (va > vb) {
      return -1;  // a has x_va, b does not
    } else {
      return 1;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

Polynomial::Polynomial(Field field, std::vector<Term> terms) : field_(field) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    return grevlex_compare(x.monomial, y.monomial) > 0;
  });
  for (auto& t : terms) {
    if (t.coefficient.field() != field_)
      throw Error(ErrorKind::FieldMismatch, "term field differs from polynomial");
    if (!terms_.empty() && terms_.back().monomial == t.monomial) {
      terms_.back().coefficient += t.coefficient;
      if (terms_.back().coefficient.is_zero()) terms_.pop_back();
    } else if (!t.coefficient.is_zero()) {
      terms_.push_back(std::move(t));
    }
  }
}

Polynomial Polynomial::constant(const Scalar& c) {
  Polynomial p(c.field());
  if (!c.is_zero()) p.terms_.push_back({Monomial(), c});
  return p;
}

Polynomial Polynomial::variable(Field field, VarIndex v) {
  return monomial(Scalar(field, 1), Monomial::variable(v));
}

Polynomial Polynomial::monomial(const Scalar& c, Monomial m) {
  Polynomial p(c.field());
  if (!c.is_zero()) p.terms_.push_back({std::move(m), c});
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

std::uint64_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

std::uint64_t Polynomial::min_degree() const {
  return terms_.empty() ? 0 : terms_.back().monomial.degree();
}

Polynomial Polynomial::to_field(Field target) const {
  if (target == field_) return *this;
  Polynomial out(target);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_)
    out.terms_.push_back({t.monomial, t.coefficient.to_field(target)});
  return out;
}

void Polynomial::check_same_field(const Polynomial& other) const {
  if (field_ != other.field_)
    throw Error(ErrorKind::FieldMismatch, "polynomial fields differ");
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

namespace {

// Merge two canonical term lists: a + sign * b.
std::vector<Term> merge_terms(const std::vector<Term>& a,
                              const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int cmp;
    if (i == a.size())
      cmp = -1;
    else if (j == b.size())
      cmp = 1;
    else
      cmp = grevlex_compare(a[i].monomial, b[j].monomial);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().coefficient = -out.back().coefficient;
    } else {
      Scalar c = subtract ? a[i].coefficient - b[j].coefficient
                          : a[i].coefficient + b[j].coefficient;
      if (!c.is_zero()) out.push_back({a[i].monomial, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  check_same_field(rhs);
  terms_ = merge_terms(terms_, rhs.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  check_same_field(rhs);
  terms_ = merge_terms(terms_, rhs.terms_, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same_field(b);
  std::map<Monomial, Scalar, CanonicalGreater> acc;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Monomial m = ta.monomial * tb.monomial;
      Scalar c = ta.coefficient * tb.coefficient;
      auto [it, inserted] = acc.try_emplace(std::move(m), c);
      if (!inserted) it->second += c;
    }
  }
  Polynomial out(a.field_);
  out.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) out.terms_.push_back({m, std::move(c)});
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& rhs) {
  if (rhs.field() != field_)
    throw Error(ErrorKind::FieldMismatch, "scalar field differs from polynomial");
  if (rhs.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient *= rhs;
  return *this;
}

Polynomial Polynomial::pow(std::uint32_t exponent) const {
  Polynomial result = constant(field_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.field_ != b.field_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].monomial != b.terms_[i].monomial ||
        a.terms_[i].coefficient != b.terms_[i].coefficient)
      return false;
  }
  return true;
}

VarSet support(const Polynomial& p) {
  VarSet out;
  for (const auto& t : p.terms())
    for (const auto& [v, e] : t.monomial.entries()) out.insert(v);
  return out;
}

VarSet support(const std::vector<Polynomial>& ps) {
  VarSet out;
  for (const auto& p : ps) out.merge(support(p));
  return out;
}

// ---------------------------------------------------------------------------

BasePoint::BasePoint(Field field, std::map<VarIndex, Scalar> coords)
    : field_(field) {
  for (auto& [v, c] : coords) {
    if (v == 0)
      throw Error(ErrorKind::SubscriptOutOfRange, "coordinate index must be >= 1");
    if (c.field() != field_)
      throw Error(ErrorKind::FieldMismatch, "coordinate field differs from point");
    if (!c.is_zero()) coords_.emplace(v, std::move(c));
  }
}

Scalar BasePoint::coord(VarIndex v) const {
  auto it = coords_.find(v);
  return it == coords_.end() ? Scalar(field_) : it->second;
}

BasePoint BasePoint::to_field(Field target) const {
  std::map<VarIndex, Scalar> coords;
  for (const auto& [v, c] : coords_) coords.emplace(v, c.to_field(target));
  return BasePoint(target, std::move(coords));
}

Scalar evaluate(const Polynomial& p, const BasePoint& x0) {
  if (p.field() != x0.field())
    throw Error(ErrorKind::FieldMismatch, "polynomial and point fields differ");
  Scalar total(p.field());
  for (const auto& t : p.terms()) {
    Scalar value = t.coefficient;
    for (const auto& [v, e] : t.monomial.entries()) {
      Scalar c = x0.coord(v);
      if (c.is_zero()) {
        value = Scalar(p.field());
        break;
      }
      for (std::uint32_t k = 0; k < e; ++k) value *= c;
    }
    total += value;
  }
  return total;
}

// ---------------------------------------------------------------------------

UniPoly::UniPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

UniPoly UniPoly::constant(const mpq_class& c) { return UniPoly({c}); }

UniPoly UniPoly::s() { return UniPoly({mpq_class(0), mpq_class(1)}); }

void UniPoly::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<mpq_class> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
  return UniPoly(std::move(out));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<mpq_class> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UniPoly(std::move(out));
}

UniPoly operator*(const mpq_class& c, const UniPoly& a) {
  std::vector<mpq_class> out(a.coeffs_);
  for (auto& x : out) x *= c;
  return UniPoly(std::move(out));
}

RationalCurve::RationalCurve(BasePoint base, std::map<VarIndex, UniPoly> components)
    : base_(std::move(base)) {
  if (base_.field() != Field::Real)
    throw Error(ErrorKind::FieldMismatch, "curves live over the real field");
  for (auto& [v, z] : components) {
    if (z.at_zero() != base_.coord(v).re())
      throw Error(ErrorKind::InvalidWitness,
                  "curve component x_" + std::to_string(v) +
                      " does not pass through the base point");
    components_.emplace(v, std::move(z));
  }
}

UniPoly RationalCurve::component(VarIndex v) const {
  auto it = components_.find(v);
  if (it != components_.end()) return it->second;
  return UniPoly::constant(base_.coord(v).re());
}

UniPoly compose_curve(const Polynomial& p, const RationalCurve& z) {
  if (p.field() != Field::Real)
    throw Error(ErrorKind::FieldMismatch, "curve composition needs a real polynomial");
  std::map<VarIndex, std::vector<UniPoly>> powers;
  auto power_of = [&](VarIndex v, std::uint32_t e) -> const UniPoly& {
    auto& list = powers[v];
    if (list.empty()) list.push_back(UniPoly::constant(1));
    while (list.size() <= e) list.push_back(list.back() * z.component(v));
    return list[e];
  };
  UniPoly total;
  for (const auto& t : p.terms()) {
    UniPoly value = UniPoly::constant(t.coefficient.re());
    for (const auto& [v, e] : t.monomial.entries()) value = value * power_of(v, e);
    total = total + value;
  }
  return total;
}

}  // namespace germcalc

std::size_t std::hash<germcalc::Monomial>::operator()(
    const germcalc::Monomial& m) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (const auto& [v, e] : m.entries()) {
    h ^= (static_cast<std::size_t>(v) << 20) ^ e;
    h *= 1099511628211ULL;
  }
  return h;
}
