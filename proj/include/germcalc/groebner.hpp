// Buchberger's algorithm over Q and Q(i), with elimination orders.
#pragma once

#include <vector>

#include "germcalc/polynomial.hpp"
#include "germcalc/verdict.hpp"

namespace germcalc {

/// Either plain grevlex on a finite ordered variable list (first listed is
/// largest), or a block order: grevlex on the eliminated block, ties broken
/// by grevlex on the remaining variables.
class TermOrder {
 public:
  static TermOrder grevlex(std::vector<VarIndex> vars);
  static TermOrder elimination(std::vector<VarIndex> eliminated,
                               std::vector<VarIndex> remaining);

  const std::vector<VarIndex>& eliminated() const noexcept { return eliminated_; }
  const std::vector<VarIndex>& remaining() const noexcept { return remaining_; }
  bool is_elimination() const noexcept { return !eliminated_.empty(); }
  /// Eliminated block first, then the remaining list.
  std::vector<VarIndex> variables() const;
  bool contains(VarIndex v) const;

  /// <0, 0, >0. Both monomials must only use variables of this order.
  int compare(const Monomial& a, const Monomial& b) const;

  json to_json() const;
  static TermOrder from_json(const json& j);

  friend bool operator==(const TermOrder&, const TermOrder&) = default;

 private:
  TermOrder(std::vector<VarIndex> eliminated, std::vector<VarIndex> remaining);

  std::vector<VarIndex> eliminated_;
  std::vector<VarIndex> remaining_;
};

/// Grevlex on the sorted union of supports (x_1 > x_2 > ...).
TermOrder default_order(const std::vector<Polynomial>& polys);

struct GroebnerBasis {
  std::vector<Polynomial> generators;
  TermOrder order = TermOrder::grevlex({});
  bool reduced = false;
};

/// Leading monomial under the order. Precondition: p nonzero.
const Term& leading_term(const Polynomial& p, const TermOrder& order);

/// Remainder of multivariate division by G (full reduction). Throws
/// UnknownVariable if f uses a variable outside G's order.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G);

/// Reduced Groebner basis (monic, sorted by decreasing leading monomial).
/// Throws BudgetExhausted carrying the number of pair reductions done.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const TermOrder& order,
                         StepBudget& budget);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const TermOrder& order);

/// Every S-polynomial of G reduces to zero modulo G.
bool satisfies_buchberger_criterion(const GroebnerBasis& G);

/// Proved: f reduces to zero modulo the reduced basis of gens. Refuted: the
/// nonzero normal form is the witness. Unknown on budget exhaustion.
Verdict is_member(const Polynomial& f, const std::vector<Polynomial>& gens,
                  StepBudget& budget);
Verdict is_member(const Polynomial& f, const std::vector<Polynomial>& gens,
                  const TermOrder& order, StepBudget& budget);

/// Generators of (gens) intersected with the subring free of `drop`.
std::vector<Polynomial> eliminate(const std::vector<Polynomial>& gens, const VarSet& drop,
                                  StepBudget& budget);

/// Decides by exact linear algebra whether f = sum h_i g_i with every
/// deg(h_i g_i) <= degree_bound. Proved is a real membership proof;
/// otherwise the verdict is Unknown ("no representation within the bound").
Verdict macaulay_membership_oracle(const Polynomial& f, const std::vector<Polynomial>& gens,
                                   std::uint32_t degree_bound);

}  // namespace germcalc
