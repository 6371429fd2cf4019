#include "germcalc/witness.hpp"

#include <algorithm>
#include <functional>

#include "germcalc/errors.hpp"
#include "germcalc/groebner.hpp"
#include "germcalc/multigerm.hpp"
#include "germcalc/serialize.hpp"

namespace germcalc {

namespace {

constexpr std::uint64_t kBasisBudget = 1000000;
constexpr std::uint64_t kWindowLimit = 1 << 20;

using Recurse = std::function<void(const json&)>;

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorKind::InvalidWitness, message); }

void require(bool condition, const std::string& message) {
  if (!condition) fail(message);
}

Outcome outcome_of(const json& v) { return outcome_from_string(v.at("outcome").get<std::string>()); }

Field field_of(const json& input) { return field_from_string(input.at("field").get<std::string>()); }

BasePoint base_of(const json& input, Field field) {
  return input.contains("base") ? base_from_json(input.at("base"), field) : BasePoint(field);
}

std::vector<Polynomial> nonzero(std::vector<Polynomial> ps) {
  ps.erase(std::remove_if(ps.begin(), ps.end(), [](const Polynomial& p) { return p.is_zero(); }), ps.end());
  return ps;
}

VarSet support_all(const std::vector<Polynomial>& ps, const Polynomial& f) {
  VarSet s = support(ps);
  VarSet t = support(f);
  s.insert(t.begin(), t.end());
  return s;
}

// f in (gens), decided in grevlex with the variable list reversed so that the
// engine's cached bases in its own order play no part.
bool in_ideal(const Polynomial& f, const std::vector<Polynomial>& gens) {
  if (f.is_zero()) return true;
  std::vector<Polynomial> g = nonzero(gens);
  if (g.empty()) return false;
  VarSet vs = support_all(g, f);
  std::vector<VarIndex> vars(vs.rbegin(), vs.rend());
  StepBudget budget(kBasisBudget);
  try {
    GroebnerBasis G = buchberger(g, TermOrder::grevlex(vars), budget);
    return normal_form(f, G).is_zero();
  } catch (const BudgetExhausted&) {
    fail("verifier basis budget exhausted");
  }
}

void expect_outcome(const json& v, Outcome expected, const std::string& what) {
  require(outcome_of(v) == expected, what + ": expected " + to_string(expected));
}

// ---------------------------------------------------------------- polynomial level

void check_member(const json& v) {
  const json& in = v.at("input");
  const json& w = v.at("witness");
  Field field = field_of(in);
  auto gens = polys_from_json(in.at("gens"), field);
  Polynomial f = poly_from_json(in.at("f"), field);
  TermOrder order = TermOrder::from_json(in.at("order"));
  GroebnerBasis B{polys_from_json(w.at("basis"), field), order, false};
  for (const auto& b : B.generators) require(in_ideal(b, gens), "basis element outside the ideal");
  Polynomial r = normal_form(f, B);
  if (outcome_of(v) == Outcome::Proved) {
    require(r.is_zero(), "f does not reduce to zero");
    return;
  }
  require(satisfies_buchberger_criterion(B), "basis fails the S-polynomial criterion");
  for (const auto& g : gens) require(normal_form(g, B).is_zero(), "generator outside the basis ideal");
  require(!r.is_zero(), "f reduces to zero");
  require(print_canonical(r) == w.at("normal_form").get<std::string>(), "normal form mismatch");
}

void check_macaulay(const json& v) {
  require(outcome_of(v) == Outcome::Proved, "the degree-bounded oracle never refutes");
  const json& in = v.at("input");
  Field field = field_of(in);
  require(in_ideal(poly_from_json(in.at("f"), field), polys_from_json(in.at("gens"), field)),
          "f is not in the ideal");
}

void check_radmem(const json& v) {
  const json& in = v.at("input");
  const json& w = v.at("witness");
  Field field = field_of(in);
  BasePoint x0 = base_of(in, field);
  auto gens = nonzero(polys_from_json(in.at("gens"), field));
  Polynomial f = poly_from_json(in.at("f"), field);
  VarIndex u = w.at("u").get<VarIndex>();
  VarSet vs = support_all(gens, f);
  require(!vs.count(u) && (vs.empty() || *vs.rbegin() < u), "u is not a fresh variable");
  for (const auto& [c, value] : x0.coords()) require(c < u, "u is a coordinate of the base point");
  std::vector<Polynomial> J = gens;
  J.push_back(Polynomial::constant(field, 1) - Polynomial::variable(field, u) * f);

  if (outcome_of(v) == Outcome::Proved) {
    Polynomial e = poly_from_json(w.at("eliminant"), field);
    require(!support(e).count(u), "eliminant involves u");
    require(!evaluate(e, x0).is_zero(), "eliminant vanishes at the base point");
    require(in_ideal(e, J), "eliminant is not in the Rabinowitsch ideal");
    return;
  }
  for (const auto& e : polys_from_json(w.at("elimination_basis"), field)) {
    require(!support(e).count(u), "eliminant involves u");
    require(evaluate(e, x0).is_zero(), "eliminant nonzero at the base point");
    require(in_ideal(e, J), "eliminant is not in the Rabinowitsch ideal");
  }
  std::vector<VarIndex> rest(vs.rbegin(), vs.rend());
  StepBudget budget(kBasisBudget);
  try {
    GroebnerBasis G = buchberger(J, TermOrder::elimination({u}, rest), budget);
    for (const auto& g : G.generators)
      if (!support(g).count(u))
        require(evaluate(g, x0).is_zero(), "the elimination ideal has an element nonzero at the base point");
  } catch (const BudgetExhausted&) {
    fail("verifier basis budget exhausted");
  }
}

Polynomial weighted_sum(const Polynomial& target, std::uint32_t m, const std::vector<Polynomial>& b,
                        const std::vector<mpq_class>& weights) {
  Polynomial sum = target.pow(2 * m);
  for (std::size_t i = 0; i < b.size(); ++i) {
    Polynomial sq = b[i] * b[i];
    if (i < weights.size()) sq *= Scalar(target.field(), weights[i]);
    sum += sq;
  }
  return sum;
}

std::vector<mpq_class> weights_of(const json& j) {
  std::vector<mpq_class> out;
  for (const auto& w : j) out.push_back(parse_scalar(w.get<std::string>(), Field::Real).re());
  return out;
}

void check_certificate(const json& v) {
  RealCertificate cert = RealCertificate::from_json(v.at("input"));
  bool well_formed = cert.m > 0 && cert.weights.size() <= cert.b.size() &&
                     std::all_of(cert.weights.begin(), cert.weights.end(), [](const mpq_class& w) { return sgn(w) > 0; });
  bool member = well_formed && in_ideal(cert.combination(), cert.context.polys());
  if (outcome_of(v) == Outcome::Proved)
    require(member, "certificate combination is not in the context ideal");
  else
    require(!member, "certificate is valid");
}

void check_realclosure(const json& v) {
  require(outcome_of(v) == Outcome::Proved, "closure never refutes");
  const json& in = v.at("input");
  const json& w = v.at("witness");
  Field field = field_of(in);
  require(field == Field::Real, "closure runs over the reals");
  BasePoint x0 = base_of(in, field);
  auto gens = polys_from_json(in.at("gens"), field);
  Polynomial target = poly_from_json(in.at("target"), field);
  const json& steps = w.at("steps");
  std::size_t proves = w.at("proves").get<std::size_t>();
  require(!steps.empty() && proves + 1 == steps.size(), "closure must end with the proving step");

  std::vector<Polynomial> context = gens;
  for (const auto& step : steps) {
    std::string rule = step.at("rule").get<std::string>();
    Polynomial p = poly_from_json(step.at("poly"), field);
    if (rule == "R1") {
      require(in_ideal(p, gens), "R1 step is not in I");
    } else if (rule == "R2") {
      require(in_ideal(p, context), "R2 step is not in the augmented ideal");
    } else if (rule == "R3") {
      std::uint32_t m = step.at("m").get<std::uint32_t>();
      auto b = polys_from_json(step.at("b"), field);
      auto ws = weights_of(step.value("weights", json::array()));
      require(m > 0, "R3 needs m > 0");
      require(ws.size() <= b.size(), "more weights than squares");
      for (const auto& q : ws) require(sgn(q) > 0, "nonpositive weight");
      require(in_ideal(weighted_sum(p, m, b, ws), context), "R3 combination is not in the augmented ideal");
    } else if (rule == "unit") {
      require(p == Polynomial::constant(field, 1), "unit step must derive 1");
      Polynomial via = poly_from_json(step.at("via"), field);
      require(!evaluate(via, x0).is_zero(), "unit witness vanishes at the base point");
      require(in_ideal(via, context), "unit witness is not in the augmented ideal");
    } else if (rule == "U") {
      Polynomial via = poly_from_json(step.at("via"), field);
      Polynomial unit = poly_from_json(step.at("unit"), field);
      require(p * unit == via, "U step is not a factorization of its source");
      require(!evaluate(unit, x0).is_zero(), "U cofactor vanishes at the base point");
      require(in_ideal(via, context), "U source is not in the augmented ideal");
    } else {
      fail("unknown closure rule '" + rule + "'");
    }
    context.push_back(p);
  }
  require(poly_from_json(steps.back().at("poly"), field) == target, "closure proves another polynomial");
}

void check_refute(const json& v) {
  require(outcome_of(v) == Outcome::Refuted, "curve search never proves");
  const json& in = v.at("input");
  const json& w = v.at("witness");
  Field field = field_of(in);
  require(field == Field::Real, "curves live over the reals");
  BasePoint x0 = base_of(in, field);
  RationalCurve z = curve_from_json(w.at("curve"), x0);
  for (const auto& g : polys_from_json(in.at("gens"), field))
    require(compose_curve(g, z).is_zero(), "curve leaves the zero set of " + print_canonical(g));
  auto targets = polys_from_json(in.at("targets"), field);
  std::size_t t = w.at("target").get<std::size_t>();
  require(t < targets.size(), "target index out of range");
  require(!compose_curve(targets[t], z).is_zero(), "target vanishes on the curve");
}

// ---------------------------------------------------------------- set level

void check_contains(const json& v, const Recurse& recurse) {
  const json& in = v.at("input");
  const json& w = v.at("witness");
  Field field = field_of(in);
  BasePoint x0 = base_of(in, field);
  auto A = polys_from_json(in.at("A"), field);
  auto B = polys_from_json(in.at("B"), field);
  auto same_setting = [&](const json& sub) {
    const json& si = sub.at("input");
    require(si.at("field") == in.at("field") && si.at("base") == in.at("base"), "nested verdict elsewhere");
    require(si.at("gens") == in.at("A"), "nested verdict about another ideal");
  };

  if (outcome_of(v) == Outcome::Proved) {
    if (w.contains("reason")) {
      require(w.at("reason") == "empty", "unknown containment reason");
      Polynomial unit = poly_from_json(w.at("unit"), field);
      require(std::find(A.begin(), A.end(), unit) != A.end(), "unit is not a defining germ");
      require(!evaluate(unit, x0).is_zero(), "unit vanishes at the base point");
      return;
    }
    std::vector<Polynomial> targets = nonzero(B);
    const json& members = w.at("members");
    require(members.size() == targets.size(), "one member verdict per defining germ");
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const json& m = members[i];
      same_setting(m);
      expect_outcome(m, Outcome::Proved, "member verdict");
      const char* key = field == Field::Complex ? "f" : "target";
      require(m.at("query") == (field == Field::Complex ? "radmem" : "realclosure"), "wrong member route");
      require(poly_from_json(m.at("input").at(key), field) == targets[i], "member verdict for another germ");
      recurse(m);
    }
    return;
  }
  const json& failing = w.at("failing");
  same_setting(failing);
  expect_outcome(failing, Outcome::Refuted, "failing verdict");
  if (field == Field::Complex) {
    require(failing.at("query") == "radmem", "wrong refutation route");
    Polynomial f = poly_from_json(failing.at("input").at("f"), field);
    require(std::find(B.begin(), B.end(), f) != B.end(), "refuted germ is not a defining germ of B");
  } else {
    require(failing.at("query") == "refute", "wrong refutation route");
    for (const auto& t : polys_from_json(failing.at("input").at("targets"), field))
      require(std::find(B.begin(), B.end(), t) != B.end(), "refuted germ is not a defining germ of B");
  }
  recurse(failing);
}

void check_containment_of(const json& c, const SetGerm& inner, const SetGerm& outer, Outcome expected,
                          const Recurse& recurse) {
  require(c.at("query") == "contains", "expected a containment verdict");
  expect_outcome(c, expected, "containment");
  const json& in = c.at("input");
  require(in.at("A") == to_json(inner.polys()), "containment about another index germ");
  require(in.at("B") == to_json(outer.polys()), "containment against another target");
  require(in.at("base") == to_json(inner.base()) && field_of(in) == inner.field(), "containment elsewhere");
  recurse(c);
}

// Witness of "some index of A has its germ inside T".
void check_search(const SystemOfGerms& A, const SetGerm& T, Outcome outcome, const json& w, const Recurse& recurse) {
  if (outcome == Outcome::Proved) {
    check_containment_of(w.at("containment"), A.germ(w.at("alpha")), T, Outcome::Proved, recurse);
    return;
  }
  const json& refutations = w.at("refutations");
  std::string mode = w.at("exhaustive").get<std::string>();
  if (mode == "top") {
    auto top = A.top();
    require(top.has_value(), "system has no top index");
    require(refutations.size() == 1 && refutations[0].at("alpha") == *top, "refutation is not at the top index");
  } else {
    require(mode == "all", "unknown exhaustion mode");
    auto n = A.size();
    require(n && *n == refutations.size(), "refutations do not cover the index set");
    for (std::uint64_t i = 0; i < *n; ++i)
      require(refutations[i].at("alpha") == *A.index_at(i), "refutations do not cover the index set");
  }
  for (const auto& r : refutations)
    check_containment_of(r.at("containment"), A.germ(r.at("alpha")), T, Outcome::Refuted, recurse);
}

Context verifier_context() { return Context(Budgets{kBasisBudget, kWindowLimit, 4096}); }

void check_precedes(const json& v, const Recurse& recurse) {
  const json& in = v.at("input");
  const json& w = v.at("witness");
  Context ctx = verifier_context();
  SystemOfGerms A = SystemOfGerms::from_json(in.at("A"), ctx);
  SystemOfGerms B = SystemOfGerms::from_json(in.at("B"), ctx);
  if (outcome_of(v) == Outcome::Refuted) {
    check_search(A, B.germ(w.at("beta")), Outcome::Refuted, w.at("search"), recurse);
    return;
  }
  std::vector<Index> betas;
  if (!in.at("window").is_null()) {
    auto window = B.window(varset_from_json(in.at("window")), kWindowLimit);
    require(window.has_value(), "window is unbounded");
    betas = std::move(*window);
  } else {
    auto n = B.size();
    require(n && *n <= kWindowLimit, "cannot discharge an infinite index set");
    for (std::uint64_t i = 0; i < *n; ++i) betas.push_back(*B.index_at(i));
  }
  const json& pairs = w.at("pairs");
  require(pairs.size() == betas.size(), "one pair per quantified index");
  for (std::size_t i = 0; i < betas.size(); ++i) {
    require(pairs[i].at("beta") == betas[i], "pairs do not follow the quantified indices");
    check_search(A, B.germ(betas[i]), Outcome::Proved, pairs[i], recurse);
  }
}

void check_equiv(const json& v, const Recurse& recurse) {
  const json& in = v.at("input");
  const json& forward = v.at("witness").at("forward");
  const json& backward = v.at("witness").at("backward");
  require(forward.at("query") == "precedes" && backward.at("query") == "precedes", "equiv needs two precedes");
  json fin = {{"A", in.at("A")}, {"B", in.at("B")}, {"window", in.at("window")}};
  json bin = {{"A", in.at("B")}, {"B", in.at("A")}, {"window", in.at("window")}};
  require(forward.at("input") == fin && backward.at("input") == bin, "directions are about other systems");
  if (outcome_of(v) == Outcome::Proved) {
    expect_outcome(forward, Outcome::Proved, "forward");
    expect_outcome(backward, Outcome::Proved, "backward");
    recurse(forward);
    recurse(backward);
  } else if (outcome_of(forward) == Outcome::Refuted) {
    recurse(forward);
  } else {
    expect_outcome(backward, Outcome::Refuted, "one direction");
    recurse(backward);
  }
}

void check_pointgerm(const json& v, const Recurse& recurse) {
  const json& in = v.at("input");
  GeneratorStream stream = GeneratorStream::from_json(in.at("stream"));
  VarSet dims = varset_from_json(in.at("dims"));
  require(!dims.empty(), "dims must be nonempty");
  check_search(zero_system(stream), SetGerm::point(stream.base(), dims), outcome_of(v), v.at("witness"), recurse);
}

void check_zeromember(const json& v, const Recurse& recurse) {
  const json& in = v.at("input");
  Context ctx = verifier_context();
  SystemOfGerms A = SystemOfGerms::from_json(in.at("A"), ctx);
  Polynomial f = poly_from_json(in.at("f"), A.field());
  check_search(A, SetGerm::of(A.base(), {f}), outcome_of(v), v.at("witness"), recurse);
}

}  // namespace

void WitnessVerifier::verify(const json& v) {
  std::string key = v.dump();
  if (done_.count(key)) return;
  std::string query = v.at("query").get<std::string>();
  Recurse recurse = [this](const json& sub) { verify(sub); };
  if (query == "nullstellensatz") {
    Outcome a = outcome_of(v.at("zero_side")), b = outcome_of(v.at("radical_side"));
    std::string status = v.at("status").get<std::string>();
    bool both = a != Outcome::Unknown && b != Outcome::Unknown;
    require(status == (!both ? "consistent" : a == b ? "agree" : "disagree"), "status does not match the sides");
    for (const char* side : {"zero_side", "radical_side"})
      if (outcome_of(v.at(side)) != Outcome::Unknown) verify(v.at(side));
  } else if (outcome_of(v) != Outcome::Unknown) {
    if (query == "member") check_member(v);
    else if (query == "macaulay") check_macaulay(v);
    else if (query == "radmem") check_radmem(v);
    else if (query == "certificate") check_certificate(v);
    else if (query == "realclosure") check_realclosure(v);
    else if (query == "refute") check_refute(v);
    else if (query == "contains") check_contains(v, recurse);
    else if (query == "precedes") check_precedes(v, recurse);
    else if (query == "equiv") check_equiv(v, recurse);
    else if (query == "pointgerm") check_pointgerm(v, recurse);
    else if (query == "zeromember") check_zeromember(v, recurse);
    else fail("unknown query '" + query + "'");
  }
  done_.emplace(std::move(key), true);
}

WitnessCheck WitnessVerifier::check(const json& verdict) {
  WitnessCheck out;
  if (!verdict.is_object() || !verdict.contains("query")) return out;
  std::string query = verdict.at("query").get<std::string>();
  bool conclusive = query == "nullstellensatz" ||
                    (verdict.contains("outcome") && verdict.at("outcome") != "Unknown" && verdict.contains("witness"));
  if (!conclusive) return out;
  out.checked = true;
  try {
    verify(verdict);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = e.what();
  }
  return out;
}

WitnessCheck verify_witness(const json& verdict) {
  WitnessVerifier verifier;
  return verifier.check(verdict);
}

}  // namespace germcalc
