// Set-germs, systems of germs over directed index sets, the relations
// precedes and equiv, zero-systems of ideals and their zero-ideals.
#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "germcalc/germ_ring.hpp"

namespace germcalc {

/// The germ at the base point of the common zero set of finitely many
/// germs. An empty list is the full germ.
class SetGerm {
 public:
  SetGerm(BasePoint base, std::vector<Germ> defining);
  static SetGerm of(const BasePoint& base, const std::vector<Polynomial>& defining);
  /// The cylinder {x : x_t = x0_t for t in dims}.
  static SetGerm point(const BasePoint& base, const VarSet& dims);

  const BasePoint& base() const noexcept { return base_; }
  Field field() const noexcept { return base_.field(); }
  const std::vector<Germ>& defining() const noexcept { return defining_; }
  std::vector<Polynomial> polys() const;
  GermIdeal ideal() const { return GermIdeal(base_, defining_); }
  VarSet support() const;

  json to_json() const;

 private:
  BasePoint base_;
  std::vector<Germ> defining_;
};

/// True iff some defining germ is a unit at the base point.
bool setgerm_is_empty(const SetGerm& A);

/// Z(A) contained in Z(B). Complex: decided generator by generator through
/// local radical membership. Real: closure proves, a curve refutes.
Verdict setgerm_contains(const SetGerm& A, const SetGerm& B, Context& ctx);

SetGerm setgerm_intersection(const SetGerm& A, const SetGerm& B);
/// Defined by all pairwise products of defining germs.
SetGerm setgerm_union(const SetGerm& A, const SetGerm& B);

using Index = json;

/// Outcome of checking that an explicit system is antitone.
struct ValidationReport {
  Outcome antitone = Outcome::Proved;
  std::vector<std::pair<Index, Index>> unknown;
  std::string scope = "all";
  json to_json() const;
};

/// One family of defining germs of a chain element A^n: a template
/// instantiated at every k in [from, n + to], or once at k = n + at.
struct ChainPart {
  GeneratorTemplate tmpl;
  bool ranged = false;
  std::uint64_t from = 0;
  std::int64_t to = 0;
  std::int64_t at = 0;
};

class SystemOfGerms {
 public:
  enum class Kind { Explicit, Zero, Point, Chain, Product };
  enum class Op { Intersection, Union };
  struct Impl;

  /// Labels with set-germs and a relation (transitively closed here).
  /// Throws InvalidSystem when Moore-Smith fails, when a relation pair uses
  /// an unknown label, or when antitonicity is refuted.
  static SystemOfGerms explicit_system(const BasePoint& base, std::vector<std::pair<Index, SetGerm>> elements,
                                       std::vector<std::pair<Index, Index>> relation, Context& ctx);
  /// Single index with a reflexive relation.
  static SystemOfGerms constant(const SetGerm& germ, Context& ctx);
  /// {Z(alpha) : alpha in fin(I)} ordered by inclusion.
  static SystemOfGerms zero(const GeneratorStream& stream);
  /// {cylinder over S : S in fin(T)} ordered by inclusion.
  static SystemOfGerms point(const BasePoint& base);
  /// Index n >= start; n << m iff m == n or m >= n + gap. Antitonicity is
  /// checked on a prefix of the chain.
  static SystemOfGerms chain(const BasePoint& base, std::vector<ChainPart> parts, std::uint64_t start,
                             std::uint64_t gap, Context& ctx);
  /// Indexed by the product directed set.
  static SystemOfGerms product(Op op, const SystemOfGerms& a, const SystemOfGerms& b);

  Kind kind() const;
  const BasePoint& base() const;
  Field field() const { return base().field(); }

  /// Number of indices when finite.
  std::optional<std::uint64_t> size() const;
  /// Index number n of the canonical enumeration (nullopt past the end).
  std::optional<Index> index_at(std::uint64_t n) const;
  /// Throws InvalidSystem for an index outside the system.
  SetGerm germ(const Index& i) const;
  /// i << j
  bool related(const Index& i, const Index& j) const;
  /// An index above every other one, usable for refutations because the
  /// system is known to be antitone.
  std::optional<Index> top() const;
  /// Every index whose germ is indexed by dims, or nullopt when that set is
  /// larger than limit or cannot be bounded.
  std::optional<std::vector<Index>> window(const VarSet& dims, std::uint64_t limit) const;
  const ValidationReport& validation() const;

  json to_json() const;
  static SystemOfGerms from_json(const json& j, Context& ctx);

 private:
  explicit SystemOfGerms(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

SystemOfGerms sys_intersection(const SystemOfGerms& a, const SystemOfGerms& b);
SystemOfGerms sys_union(const SystemOfGerms& a, const SystemOfGerms& b);
SystemOfGerms zero_system(const GeneratorStream& stream);

/// fin(N) in canonical order: by largest element, then size, then lex.
std::vector<std::uint64_t> nth_finite_subset(std::uint64_t n);

/// A precedes B: for every index b of B some index a of A has A^a inside
/// B^b. With a window only the B-indices whose germs are indexed by it are
/// quantified; an infinite B without a window gives at best Unknown.
Verdict precedes(const SystemOfGerms& A, const SystemOfGerms& B, Context& ctx,
                 const std::optional<VarSet>& window = std::nullopt);
Verdict equiv(const SystemOfGerms& A, const SystemOfGerms& B, Context& ctx,
              const std::optional<VarSet>& window = std::nullopt);

/// Some alpha in fin(I) puts every coordinate germ x_t - x0_t, t in dims,
/// into the radical of (alpha): complex local radical or real closure.
Verdict is_point_multigerm(const GeneratorStream& stream, const VarSet& dims, Context& ctx);

/// f in J([A]): some index a with A^a inside Z(f).
Verdict zero_ideal_member(const Germ& f, const SystemOfGerms& A, Context& ctx);

struct NullstellensatzReport {
  enum class Status { Agree, Consistent, Disagree };
  Verdict zero_side;
  Verdict radical_side;
  Status status = Status::Consistent;
  json to_json() const;
};

/// Runs the zero-ideal route and the radical route independently and
/// compares them; a conclusive disagreement is an engine defect.
NullstellensatzReport nullstellensatz_check(const GermIdeal& I, const Germ& f, Context& ctx);

}  // namespace germcalc
