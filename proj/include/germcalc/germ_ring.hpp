// Germs of polynomial functions at a base point of K^T, their ideals, and
// radical membership (complex decision, real certificates and curves).
#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "germcalc/groebner.hpp"
#include "germcalc/parser.hpp"
#include "germcalc/polynomial.hpp"
#include "germcalc/verdict.hpp"

namespace germcalc {

/// A polynomial germ at base() together with an indexing set containing its
/// support.
class Germ {
 public:
  /// Indexed by the support of poly.
  Germ(Polynomial poly, BasePoint base);
  /// Throws NotIndexedBy if support(poly) is not inside indexing, and
  /// FieldMismatch if poly and base disagree.
  Germ(Polynomial poly, BasePoint base, VarSet indexing);

  const Polynomial& poly() const noexcept { return poly_; }
  const BasePoint& base() const noexcept { return base_; }
  const VarSet& indexing_set() const noexcept { return indexing_; }
  Field field() const noexcept { return poly_.field(); }
  /// Value at the base point.
  Scalar value() const { return evaluate(poly_, base_); }

  friend bool operator==(const Germ&, const Germ&) = default;

 private:
  Polynomial poly_;
  BasePoint base_;
  VarSet indexing_;
};

/// Throws NotASuperset unless s2 contains the current indexing set.
Germ extend_indexing(const Germ& g, const VarSet& s2);
/// Throws NotIndexedBy (carrying the missing variables) unless the support
/// of g lies in s.
Germ restrict(const Germ& g, const VarSet& s);
bool is_invertible(const Germ& g);

class GermIdeal {
 public:
  explicit GermIdeal(BasePoint base, std::vector<Germ> generators = {});
  static GermIdeal of(const BasePoint& base, const std::vector<Polynomial>& gens);

  const BasePoint& base() const noexcept { return base_; }
  Field field() const noexcept { return base_.field(); }
  const std::vector<Germ>& generators() const noexcept { return generators_; }
  std::vector<Polynomial> polys() const;
  VarSet indexing_set() const;

  GermIdeal with(const std::vector<Polynomial>& extra) const;

 private:
  BasePoint base_;
  std::vector<Germ> generators_;
};

/// Enumerable presentation of a possibly infinitely generated ideal.
/// Templated streams interleave their templates: element n is template
/// n mod T at parameter n / T. The coordinate stream lists x_t - x0_t for
/// t = 1, 2, ...
class GeneratorStream {
 public:
  enum class Kind { Finite, Templated, Coordinates };

  static GeneratorStream finite(GermIdeal ideal);
  static GeneratorStream templated(std::vector<GeneratorTemplate> templates, BasePoint base);
  static GeneratorStream coordinates(BasePoint base);

  Kind kind() const noexcept { return kind_; }
  const BasePoint& base() const noexcept { return base_; }
  Field field() const noexcept { return base_.field(); }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  const std::vector<GeneratorTemplate>& templates() const noexcept { return templates_; }
  /// Number of elements for finite streams.
  std::optional<std::uint64_t> size() const;
  /// Element n, or nullopt past the end of a finite stream. Memoized.
  std::optional<Germ> element(std::uint64_t n) const;

  json to_json() const;
  static GeneratorStream from_json(const json& j);

 private:
  struct Memo;

  GeneratorStream(Kind kind, BasePoint base);

  Kind kind_;
  BasePoint base_;
  std::vector<Germ> finite_;
  std::vector<GeneratorTemplate> templates_;
  std::shared_ptr<Memo> memo_;
};

/// target^(2m) + sum_i weights[i] * b[i]^2 in the context ideal. Weights are
/// positive rationals (empty means all 1); a positive rational multiple of a
/// square is a sum of squares, so this is the usual real radical condition.
struct RealCertificate {
  Germ target;
  std::uint32_t m = 1;
  std::vector<Germ> b;
  std::vector<mpq_class> weights;
  GermIdeal context;

  Polynomial combination() const;
  json to_json() const;
  static RealCertificate from_json(const json& j);
};

/// f in the local radical of I at the base point over C: Rabinowitsch
/// variable u, elimination of u, evaluation of the eliminants at x0.
Verdict local_radical_member_complex(const GermIdeal& I, const Germ& f, Context& ctx);

Verdict verify_real_certificate(const RealCertificate& cert, Context& ctx);

/// Applies the closure rules to every target: members of I, members of I
/// plus proven elements, and verified certificates over that augmented
/// ideal. With discover set, certificates are also derived from
/// sum-of-squares splittings of generators and from powers of targets.
/// Never returns Refuted.
struct ClosureOptions {
  bool discover = true;
};
std::vector<Verdict> real_radical_closure(const GermIdeal& I, const std::vector<Germ>& targets,
                                          const std::vector<RealCertificate>& hints, Context& ctx,
                                          ClosureOptions options = {});

/// Exhibits a real curve through x0 inside Z(I) on which f is not identically
/// zero. A supplied curve is checked exactly (InvalidWitness if it fails);
/// otherwise coordinate-sparse curves are searched within the curve budget.
Verdict refute_real_vanishing(const GermIdeal& I, const Germ& f,
                              const std::optional<RationalCurve>& curve, Context& ctx);

/// Curve search against several targets at once; the witness records which
/// target index is nonzero on the curve.
Verdict refute_real_vanishing_any(const GermIdeal& I, const std::vector<Germ>& targets,
                                  Context& ctx);

/// g = sum_i d_i * l_i^2 with rational d_i > 0, from an exact LDL^T of a
/// Gram matrix over the monomials whose squares occur in g. Empty when no
/// such splitting is found (g need not be a sum of squares).
struct WeightedSquare {
  Polynomial l;
  mpq_class d;
};
std::vector<WeightedSquare> square_decomposition(const Polynomial& g);

json ideal_to_json(const GermIdeal& I);
GermIdeal ideal_from_json(const json& j);

}  // namespace germcalc
