#include "germcalc/germ_ring.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "germcalc/errors.hpp"
#include "germcalc/serialize.hpp"

namespace germcalc {

// ---------------------------------------------------------------- germs

Germ::Germ(Polynomial poly, BasePoint base) : Germ(poly, base, support(poly)) {}

Germ::Germ(Polynomial poly, BasePoint base, VarSet indexing)
    : poly_(std::move(poly)), base_(std::move(base)), indexing_(std::move(indexing)) {
  if (poly_.field() != base_.field())
    throw Error(ErrorKind::FieldMismatch, "germ and base point fields differ");
  std::set<std::uint32_t> missing;
  for (VarIndex v : support(poly_))
    if (!indexing_.count(v)) missing.insert(v);
  if (!missing.empty()) throw NotIndexedBy(std::move(missing));
}

Germ extend_indexing(const Germ& g, const VarSet& s2) {
  if (!std::includes(s2.begin(), s2.end(), g.indexing_set().begin(), g.indexing_set().end()))
    throw Error(ErrorKind::NotASuperset, "extension set must contain the indexing set");
  return Germ(g.poly(), g.base(), s2);
}

Germ restrict(const Germ& g, const VarSet& s) { return Germ(g.poly(), g.base(), s); }

bool is_invertible(const Germ& g) { return !g.value().is_zero(); }

GermIdeal::GermIdeal(BasePoint base, std::vector<Germ> generators)
    : base_(std::move(base)), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.base() != base_) throw Error(ErrorKind::BaseMismatch, "generators must share the base point");
}

GermIdeal GermIdeal::of(const BasePoint& base, const std::vector<Polynomial>& gens) {
  std::vector<Germ> germs;
  for (const auto& p : gens) germs.emplace_back(p, base);
  return GermIdeal(base, std::move(germs));
}

std::vector<Polynomial> GermIdeal::polys() const {
  std::vector<Polynomial> out;
  for (const auto& g : generators_) out.push_back(g.poly());
  return out;
}

VarSet GermIdeal::indexing_set() const {
  VarSet out;
  for (const auto& g : generators_) out.insert(g.indexing_set().begin(), g.indexing_set().end());
  return out;
}

GermIdeal GermIdeal::with(const std::vector<Polynomial>& extra) const {
  std::vector<Germ> gens = generators_;
  for (const auto& p : extra) gens.emplace_back(p, base_);
  return GermIdeal(base_, std::move(gens));
}

json ideal_to_json(const GermIdeal& I) {
  return {{"field", to_string(I.field())}, {"base", to_json(I.base())}, {"gens", to_json(I.polys())}};
}

GermIdeal ideal_from_json(const json& j) {
  Field field = field_from_string(j.at("field").get<std::string>());
  BasePoint base = base_from_json(j.at("base"), field);
  return GermIdeal::of(base, polys_from_json(j.at("gens"), field));
}

// ---------------------------------------------------------------- streams

struct GeneratorStream::Memo {
  std::mutex mutex;
  std::unordered_map<std::uint64_t, Germ> elements;
};

GeneratorStream::GeneratorStream(Kind kind, BasePoint base)
    : kind_(kind), base_(std::move(base)), memo_(std::make_shared<Memo>()) {}

GeneratorStream GeneratorStream::finite(GermIdeal ideal) {
  GeneratorStream s(Kind::Finite, ideal.base());
  s.finite_ = ideal.generators();
  return s;
}

GeneratorStream GeneratorStream::templated(std::vector<GeneratorTemplate> templates, BasePoint base) {
  if (templates.empty()) throw Error(ErrorKind::ScriptError, "templated stream needs a template");
  GeneratorStream s(Kind::Templated, std::move(base));
  s.templates_ = std::move(templates);
  return s;
}

GeneratorStream GeneratorStream::coordinates(BasePoint base) {
  return GeneratorStream(Kind::Coordinates, std::move(base));
}

std::optional<std::uint64_t> GeneratorStream::size() const {
  if (kind_ == Kind::Finite) return finite_.size();
  return std::nullopt;
}

std::optional<Germ> GeneratorStream::element(std::uint64_t n) const {
  if (kind_ == Kind::Finite) {
    if (n >= finite_.size()) return std::nullopt;
    return finite_[n];
  }
  {
    std::lock_guard<std::mutex> lock(memo_->mutex);
    auto it = memo_->elements.find(n);
    if (it != memo_->elements.end()) return it->second;
  }
  Field field = base_.field();
  std::optional<Germ> g;
  if (kind_ == Kind::Templated) {
    const auto& t = templates_[n % templates_.size()];
    g.emplace(t.instantiate(n / templates_.size(), field), base_);
  } else {
    if (n >= 0xffffffffULL) throw Error(ErrorKind::SubscriptOutOfRange, "coordinate index overflows");
    VarIndex v = static_cast<VarIndex>(n + 1);
    g.emplace(Polynomial::variable(field, v) - Polynomial::constant(base_.coord(v)), base_);
  }
  std::lock_guard<std::mutex> lock(memo_->mutex);
  return memo_->elements.try_emplace(n, *g).first->second;
}

json GeneratorStream::to_json() const {
  json j = {{"field", to_string(field())}, {"base", germcalc::to_json(base_)}};
  switch (kind_) {
    case Kind::Finite: {
      std::vector<Polynomial> ps;
      for (const auto& g : finite_) ps.push_back(g.poly());
      j["kind"] = "finite";
      j["gens"] = germcalc::to_json(ps);
      break;
    }
    case Kind::Templated: {
      j["kind"] = "templated";
      j["templates"] = json::array();
      for (const auto& t : templates_) j["templates"].push_back(t.source());
      break;
    }
    case Kind::Coordinates:
      j["kind"] = "coordinates";
      break;
  }
  return j;
}

GeneratorStream GeneratorStream::from_json(const json& j) {
  Field field = field_from_string(j.at("field").get<std::string>());
  BasePoint base = base_from_json(j.at("base"), field);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "finite") return finite(GermIdeal::of(base, polys_from_json(j.at("gens"), field)));
  if (kind == "templated") {
    std::vector<GeneratorTemplate> ts;
    for (const auto& t : j.at("templates")) ts.push_back(parse_template(t.get<std::string>()));
    return templated(std::move(ts), base);
  }
  if (kind == "coordinates") return coordinates(base);
  throw Error(ErrorKind::InvalidWitness, "unknown stream kind '" + kind + "'");
}

// ---------------------------------------------------------------- certificates

Polynomial RealCertificate::combination() const {
  Field field = target.field();
  Polynomial sum = target.poly().pow(2 * m);
  for (std::size_t i = 0; i < b.size(); ++i) {
    Polynomial sq = b[i].poly() * b[i].poly();
    if (i < weights.size()) sq *= Scalar(field, weights[i]);
    sum += sq;
  }
  return sum;
}

json RealCertificate::to_json() const {
  std::vector<Polynomial> bs;
  for (const auto& g : b) bs.push_back(g.poly());
  json w = json::array();
  for (const auto& q : weights) w.push_back(rational_to_string(q));
  return {{"field", germcalc::to_string(context.field())},
          {"base", germcalc::to_json(context.base())},
          {"context", germcalc::to_json(context.polys())},
          {"target", print_canonical(target.poly())},
          {"m", m},
          {"b", germcalc::to_json(bs)},
          {"weights", w}};
}

RealCertificate RealCertificate::from_json(const json& j) {
  Field field = field_from_string(j.at("field").get<std::string>());
  BasePoint base = base_from_json(j.at("base"), field);
  RealCertificate c{Germ(poly_from_json(j.at("target"), field), base), j.at("m").get<std::uint32_t>(),
                    {}, {}, GermIdeal::of(base, polys_from_json(j.at("context"), field))};
  for (const auto& p : polys_from_json(j.at("b"), field)) c.b.emplace_back(p, base);
  for (const auto& w : j.value("weights", json::array())) {
    Scalar s = parse_scalar(w.get<std::string>(), Field::Real);
    c.weights.push_back(s.re());
  }
  return c;
}

namespace {

void check_real(Field field, const char* what) {
  if (field != Field::Real) throw Error(ErrorKind::FieldError, std::string(what) + " needs the real field");
}

void check_base(const GermIdeal& I, const Germ& f) {
  if (f.base() != I.base()) throw Error(ErrorKind::BaseMismatch, "germ and ideal base points differ");
}

std::vector<Polynomial> nonzero(const std::vector<Polynomial>& ps) {
  std::vector<Polynomial> out;
  for (const auto& p : ps)
    if (!p.is_zero()) out.push_back(p);
  return out;
}

json base_input(const GermIdeal& I) {
  return {{"field", to_string(I.field())}, {"base", to_json(I.base())}, {"gens", to_json(I.polys())}};
}

Verdict member(const Polynomial& f, const std::vector<Polynomial>& gens, Context& ctx) {
  StepBudget budget = ctx.gb_budget();
  Verdict v = is_member(f, gens, budget);
  ctx.used.gb += v.consumed.gb;
  return v;
}

}  // namespace

Verdict verify_real_certificate(const RealCertificate& cert, Context& ctx) {
  check_real(cert.context.field(), "real certificate");
  Verdict v;
  v.query = "certificate";
  v.input = cert.to_json();
  for (const auto& w : cert.weights) {
    if (sgn(w) <= 0) {
      v.outcome = Outcome::Refuted;
      v.witness = {{"reason", "weights must be positive"}};
      return v;
    }
  }
  if (cert.m == 0) {
    v.outcome = Outcome::Refuted;
    v.witness = {{"reason", "m must be positive"}};
    return v;
  }
  Verdict mem = member(cert.combination(), cert.context.polys(), ctx);
  v.outcome = mem.outcome;
  v.witness = {{"membership", mem.witness}};
  v.consumed = mem.consumed;
  return v;
}

// ---------------------------------------------------------------- complex radical

Verdict local_radical_member_complex(const GermIdeal& I, const Germ& f, Context& ctx) {
  check_base(I, f);
  Verdict v;
  v.query = "radmem";
  v.input = base_input(I);
  v.input["f"] = print_canonical(f.poly());

  std::vector<Polynomial> gens = nonzero(I.polys());
  VarSet vars = support(gens);
  VarSet fs = support(f.poly());
  vars.insert(fs.begin(), fs.end());
  VarIndex u = 1;
  if (!vars.empty()) u = *vars.rbegin() + 1;
  for (const auto& [c, value] : I.base().coords()) u = std::max(u, c + 1);
  Field field = I.field();
  gens.push_back(Polynomial::constant(field, 1) - Polynomial::variable(field, u) * f.poly());

  StepBudget budget = ctx.gb_budget();
  try {
    GroebnerBasis G = buchberger(gens, TermOrder::elimination({u}, {vars.begin(), vars.end()}), budget);
    std::vector<Polynomial> eliminants;
    for (const auto& g : G.generators)
      if (!support(g).count(u)) eliminants.push_back(g);
    v.outcome = Outcome::Refuted;
    v.witness = {{"u", u}, {"elimination_basis", to_json(eliminants)}};
    for (const auto& e : eliminants) {
      if (!evaluate(e, I.base()).is_zero()) {
        v.outcome = Outcome::Proved;
        v.witness = {{"u", u}, {"eliminant", print_canonical(e)}};
        break;
      }
    }
  } catch (const BudgetExhausted& e) {
    v.outcome = Outcome::Unknown;
    v.witness = {{"reason", "budget"}, {"consumed", e.consumed()}};
  }
  v.consumed.gb = budget.consumed();
  ctx.used.gb += budget.consumed();
  return v;
}

// ---------------------------------------------------------------- sums of squares

std::vector<WeightedSquare> square_decomposition(const Polynomial& g) {
  if (g.field() != Field::Real || g.is_zero()) return {};
  auto half = [](const Monomial& m) -> std::optional<Monomial> {
    std::vector<Monomial::Entry> e;
    for (auto [v, k] : m.entries()) {
      if (k % 2) return std::nullopt;
      e.emplace_back(v, k / 2);
    }
    return Monomial(std::move(e));
  };

  std::vector<Monomial> basis;
  for (const auto& t : g.terms()) {
    auto h = half(t.monomial);
    if (h && sgn(t.coefficient.re()) > 0) basis.push_back(*h);
  }
  std::sort(basis.begin(), basis.end(), CanonicalGreater{});
  std::size_t n = basis.size();
  if (n == 0) return {};
  auto position = [&](const Monomial& m) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i)
      if (basis[i] == m) return i;
    return std::nullopt;
  };

  std::vector<std::vector<mpq_class>> gram(n, std::vector<mpq_class>(n, 0));
  for (const auto& t : g.terms()) {
    const mpq_class& c = t.coefficient.re();
    auto h = half(t.monomial);
    std::optional<std::size_t> diag = h ? position(*h) : std::nullopt;
    if (diag && sgn(c) > 0) {
      gram[*diag][*diag] += c;
      continue;
    }
    bool placed = false;
    for (std::size_t i = 0; i < n && !placed; ++i) {
      if (!basis[i].divides(t.monomial)) continue;
      auto j = position(basis[i].quotient_of(t.monomial));
      if (!j || *j == i) continue;
      std::size_t a = std::min(i, *j), b = std::max(i, *j);
      gram[a][b] += c / 2;
      gram[b][a] += c / 2;
      placed = true;
    }
    if (placed) continue;
    if (!diag) return {};
    gram[*diag][*diag] += c;
  }

  std::vector<WeightedSquare> out;
  for (std::size_t k = 0; k < n; ++k) {
    mpq_class d = gram[k][k];
    if (sgn(d) < 0) return {};
    if (sgn(d) == 0) {
      for (std::size_t j = k + 1; j < n; ++j)
        if (sgn(gram[k][j]) != 0) return {};
      continue;
    }
    std::vector<Term> terms;
    for (std::size_t j = k; j < n; ++j)
      if (sgn(gram[k][j]) != 0) terms.push_back({basis[j], Scalar(Field::Real, mpq_class(gram[k][j] / d))});
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) gram[i][j] -= gram[i][k] * gram[k][j] / d;
    out.push_back({Polynomial(Field::Real, std::move(terms)), d});
  }
  Polynomial check(Field::Real);
  for (const auto& w : out) check += (w.l * w.l) * Scalar(Field::Real, w.d);
  if (check != g) return {};
  return out;
}

// ---------------------------------------------------------------- closure

namespace {

json certificate_step(const Polynomial& target, std::uint32_t m, const std::vector<Polynomial>& b,
                      const std::vector<mpq_class>& weights) {
  json w = json::array();
  for (const auto& q : weights) w.push_back(rational_to_string(q));
  return {{"rule", "R3"}, {"poly", print_canonical(target)}, {"m", m}, {"b", to_json(b)}, {"weights", w}};
}

// p = m * q with m the largest monomial dividing every term.
std::pair<Polynomial, Polynomial> monomial_content(const Polynomial& p) {
  Field field = p.field();
  std::map<VarIndex, std::uint32_t> common;
  bool first = true;
  for (const auto& t : p.terms()) {
    std::map<VarIndex, std::uint32_t> here(t.monomial.entries().begin(), t.monomial.entries().end());
    if (first) {
      common = here;
      first = false;
      continue;
    }
    for (auto it = common.begin(); it != common.end();) {
      auto h = here.find(it->first);
      if (h == here.end()) {
        it = common.erase(it);
      } else {
        it->second = std::min(it->second, h->second);
        ++it;
      }
    }
  }
  Monomial m(std::vector<Monomial::Entry>(common.begin(), common.end()));
  std::vector<Term> rest;
  for (const auto& t : p.terms()) rest.push_back({m.quotient_of(t.monomial), t.coefficient});
  return {Polynomial::monomial(Scalar(field, 1), m), Polynomial(field, std::move(rest))};
}

}  // namespace

std::vector<Verdict> real_radical_closure(const GermIdeal& I, const std::vector<Germ>& targets,
                                          const std::vector<RealCertificate>& hints, Context& ctx,
                                          ClosureOptions options) {
  check_real(I.field(), "real radical closure");
  for (const auto& t : targets) check_base(I, t);
  Field field = Field::Real;
  const BasePoint& x0 = I.base();
  std::vector<Polynomial> gens = nonzero(I.polys());

  VarSet vars = support(gens);
  auto cover = [&vars](const Polynomial& p) {
    VarSet s = support(p);
    vars.insert(s.begin(), s.end());
  };
  for (const auto& t : targets) cover(t.poly());
  for (const auto& h : hints) {
    cover(h.target.poly());
    for (const auto& b : h.b) cover(b.poly());
  }
  TermOrder order = TermOrder::grevlex({vars.begin(), vars.end()});

  std::vector<json> steps;
  std::vector<Polynomial> proven;
  std::vector<std::optional<std::size_t>> proof(targets.size());
  std::vector<bool> hint_used(hints.size(), false);
  BudgetUse used;
  std::string failure = "no derivation";

  auto push = [&](json step, const Polynomial& p) {
    steps.push_back(std::move(step));
    proven.push_back(p);
    return steps.size() - 1;
  };
  auto basis_of = [&](const std::vector<Polynomial>& ps) {
    StepBudget budget = ctx.gb_budget();
    try {
      GroebnerBasis G = buchberger(nonzero(ps), order, budget);
      used.gb += budget.consumed();
      return G;
    } catch (const BudgetExhausted&) {
      used.gb += budget.consumed();
      throw;
    }
  };
  auto in = [](const Polynomial& p, const GroebnerBasis& G) { return normal_form(p, G).is_zero(); };

  try {
    for (int round = 0; round < 32; ++round) {
      std::vector<Polynomial> context = gens;
      context.insert(context.end(), proven.begin(), proven.end());
      GroebnerBasis G = basis_of(context);

      bool all = true;
      for (std::size_t i = 0; i < targets.size(); ++i) {
        if (proof[i]) continue;
        if (in(targets[i].poly(), G)) {
          json step = {{"rule", proven.empty() ? "R1" : "R2"}, {"poly", print_canonical(targets[i].poly())}};
          proof[i] = push(std::move(step), targets[i].poly());
        } else {
          all = false;
        }
      }
      if (all) break;

      bool changed = false;
      // A unit of the local ring in the augmented ideal makes it the whole ring.
      if (std::none_of(proven.begin(), proven.end(), [](const Polynomial& p) { return p.is_constant() && !p.is_zero(); })) {
        for (const auto& p : context) {
          if (!evaluate(p, x0).is_zero()) {
            push({{"rule", "unit"}, {"poly", "1"}, {"via", print_canonical(p)}},
                 Polynomial::constant(field, 1));
            changed = true;
            break;
          }
        }
      }
      if (changed) continue;

      // When one factor of p = m * q is a unit at x0 the other one is in the local ideal.
      for (const auto& p : context) {
        if (p.is_zero()) continue;
        auto [m, q] = monomial_content(p);
        if (m.is_constant()) continue;
        for (const auto& [factor, unit] : {std::pair{m, q}, std::pair{q, m}}) {
          if (evaluate(unit, x0).is_zero() || in(factor, G)) continue;
          if (std::find(proven.begin(), proven.end(), factor) != proven.end()) continue;
          push({{"rule", "U"}, {"poly", print_canonical(factor)}, {"via", print_canonical(p)},
                {"unit", print_canonical(unit)}},
               factor);
          changed = true;
        }
      }
      if (changed) continue;

      for (std::size_t h = 0; h < hints.size(); ++h) {
        if (hint_used[h]) continue;
        if (!in(hints[h].combination(), G)) continue;
        hint_used[h] = true;
        if (in(hints[h].target.poly(), G)) continue;
        std::vector<Polynomial> bs;
        for (const auto& b : hints[h].b) bs.push_back(b.poly());
        push(certificate_step(hints[h].target.poly(), hints[h].m, bs, hints[h].weights), hints[h].target.poly());
        changed = true;
      }

      if (options.discover) {
        std::vector<Polynomial> candidates = gens;
        if (!proven.empty()) {
          GroebnerBasis P = basis_of(proven);
          for (const auto& g : gens) {
            Polynomial r = normal_form(g, P);
            if (!r.is_zero() && r != g) candidates.push_back(r);
          }
        }
        for (const auto& c : candidates) {
          auto squares = square_decomposition(c);
          for (std::size_t i = 0; i < squares.size(); ++i) {
            const Polynomial& l = squares[i].l;
            if (in(l, G) || std::find(proven.begin(), proven.end(), l) != proven.end()) continue;
            std::vector<Polynomial> bs;
            std::vector<mpq_class> ws;
            for (std::size_t j = 0; j < squares.size(); ++j) {
              if (j == i) continue;
              bs.push_back(squares[j].l);
              mpq_class w = squares[j].d / squares[i].d;
              ws.push_back(w);
            }
            push(certificate_step(l, 1, bs, ws), l);
            changed = true;
          }
        }
        for (std::size_t i = 0; i < targets.size(); ++i) {
          if (proof[i]) continue;
          const Polynomial& f = targets[i].poly();
          for (std::uint32_t m = 1; m <= 2; ++m) {
            if (in(f.pow(2 * m), G)) {
              proof[i] = push(certificate_step(f, m, {}, {}), f);
              changed = true;
              break;
            }
          }
        }
      }
      if (!changed) break;
    }
  } catch (const BudgetExhausted&) {
    failure = "budget";
  }
  ctx.used += used;

  std::vector<Verdict> out;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    Verdict v;
    v.query = "realclosure";
    v.input = base_input(I);
    v.input["target"] = print_canonical(targets[i].poly());
    v.consumed = used;
    if (proof[i]) {
      v.outcome = Outcome::Proved;
      v.witness = {{"steps", json(std::vector<json>(steps.begin(), steps.begin() + *proof[i] + 1))},
                   {"proves", *proof[i]}};
    } else {
      v.outcome = Outcome::Unknown;
      v.witness = {{"reason", failure}, {"proven", to_json(proven)}};
    }
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------- curves

namespace {

Verdict refute_input(const GermIdeal& I, const std::vector<Germ>& targets) {
  Verdict v;
  v.query = "refute";
  v.input = base_input(I);
  std::vector<Polynomial> ts;
  for (const auto& t : targets) ts.push_back(t.poly());
  v.input["targets"] = to_json(ts);
  return v;
}

// Index of the first target nonzero on z, if z lies in Z(gens).
std::optional<std::size_t> curve_hits(const std::vector<Polynomial>& gens, const std::vector<Germ>& targets,
                                      const RationalCurve& z) {
  for (const auto& g : gens)
    if (!compose_curve(g, z).is_zero()) return std::nullopt;
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (!compose_curve(targets[i].poly(), z).is_zero()) return i;
  return std::nullopt;
}

}  // namespace

Verdict refute_real_vanishing(const GermIdeal& I, const Germ& f, const std::optional<RationalCurve>& curve,
                              Context& ctx) {
  check_real(I.field(), "curve refutation");
  check_base(I, f);
  if (!curve) return refute_real_vanishing_any(I, {f}, ctx);
  if (curve->base() != I.base()) throw Error(ErrorKind::InvalidWitness, "curve base differs from the ideal's");
  std::vector<Polynomial> gens = I.polys();
  for (const auto& g : gens)
    if (!compose_curve(g, *curve).is_zero())
      throw Error(ErrorKind::InvalidWitness, "curve leaves the zero set of " + print_canonical(g));
  if (compose_curve(f.poly(), *curve).is_zero())
    throw Error(ErrorKind::InvalidWitness, "target vanishes identically on the curve");
  Verdict v = refute_input(I, {f});
  v.outcome = Outcome::Refuted;
  v.witness = {{"curve", to_json(*curve)}, {"target", 0}};
  return v;
}

Verdict refute_real_vanishing_any(const GermIdeal& I, const std::vector<Germ>& targets, Context& ctx) {
  check_real(I.field(), "curve refutation");
  for (const auto& t : targets) check_base(I, t);
  Verdict v = refute_input(I, targets);
  v.outcome = Outcome::Unknown;
  const BasePoint& x0 = I.base();
  std::vector<Polynomial> gens = nonzero(I.polys());
  for (const auto& g : gens) {
    if (!evaluate(g, x0).is_zero()) {
      v.witness = {{"reason", "empty germ"}};
      return v;
    }
  }

  VarSet vs = support(gens);
  for (const auto& t : targets) {
    VarSet s = support(t.poly());
    vs.insert(s.begin(), s.end());
  }
  std::vector<VarIndex> coords(vs.begin(), vs.end());
  std::uint64_t limit = ctx.limits.curves;
  std::uint64_t tried = 0;

  auto attempt = [&](const std::map<VarIndex, UniPoly>& comps) -> bool {
    ++tried;
    RationalCurve z(x0, comps);
    if (auto hit = curve_hits(gens, targets, z)) {
      v.outcome = Outcome::Refuted;
      v.witness = {{"curve", to_json(z)}, {"target", *hit}};
      return true;
    }
    return false;
  };

  bool done = false;
  if (tried < limit) done = attempt({});

  // Lines through x0 inside the zero set of the affine generators, along
  // signed sums of a kernel basis of their linear parts.
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& g : gens) {
    bool affine = true;
    std::vector<mpq_class> row(coords.size(), 0);
    for (const auto& t : g.terms()) {
      const auto& e = t.monomial.entries();
      if (e.empty()) continue;
      if (e.size() > 1 || e[0].second > 1) {
        affine = false;
        break;
      }
      row[std::lower_bound(coords.begin(), coords.end(), e[0].first) - coords.begin()] = t.coefficient.re();
    }
    if (affine) rows.push_back(std::move(row));
  }
  if (!rows.empty() && !done) {
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0, r = 0; col < coords.size() && r < rows.size(); ++col) {
      std::size_t p = r;
      while (p < rows.size() && sgn(rows[p][col]) == 0) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[p], rows[r]);
      mpq_class lead = rows[r][col];
      for (auto& x : rows[r]) x /= lead;
      for (std::size_t q = 0; q < rows.size(); ++q) {
        if (q == r || sgn(rows[q][col]) == 0) continue;
        mpq_class factor = rows[q][col];
        for (std::size_t k = 0; k < coords.size(); ++k) rows[q][k] -= factor * rows[r][k];
      }
      pivots.push_back(col);
      ++r;
    }
    std::vector<std::vector<mpq_class>> kernel;
    for (std::size_t col = 0; col < coords.size(); ++col) {
      if (std::find(pivots.begin(), pivots.end(), col) != pivots.end()) continue;
      std::vector<mpq_class> v(coords.size(), 0);
      v[col] = 1;
      for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][col];
      kernel.push_back(std::move(v));
    }
    const std::size_t d = std::min<std::size_t>(kernel.size(), 20);
    for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << d) && !done && tried < limit; ++subset) {
      std::vector<std::size_t> chosen;
      for (std::size_t j = 0; j < d; ++j)
        if ((subset >> j) & 1) chosen.push_back(j);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (chosen.size() - 1)) && !done && tried < limit;
           ++mask) {
        std::vector<mpq_class> dir(coords.size(), 0);
        for (std::size_t j = 0; j < chosen.size(); ++j) {
          bool minus = j > 0 && ((mask >> (j - 1)) & 1);
          for (std::size_t k = 0; k < coords.size(); ++k)
            dir[k] += minus ? mpq_class(-kernel[chosen[j]][k]) : kernel[chosen[j]][k];
        }
        std::map<VarIndex, UniPoly> comps;
        for (std::size_t k = 0; k < coords.size(); ++k)
          if (sgn(dir[k]) != 0) comps.emplace(coords[k], UniPoly({x0.coord(coords[k]).re(), dir[k]}));
        if (!comps.empty()) done = attempt(comps);
      }
    }
  }

  const std::size_t n = coords.size();
  for (std::size_t r = 1; r <= n && r < 63 && !done && tried < limit; ++r) {
    std::vector<std::size_t> pick(r);
    for (std::size_t i = 0; i < r; ++i) pick[i] = i;
    for (;;) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r) && !done && tried < limit; ++mask) {
        std::map<VarIndex, UniPoly> comps;
        for (std::size_t i = 0; i < r; ++i) {
          VarIndex c = coords[pick[i]];
          bool minus = (mask >> (r - 1 - i)) & 1;
          mpq_class slope = minus ? -1 : 1;
          comps.emplace(c, UniPoly({x0.coord(c).re(), slope}));
        }
        done = attempt(comps);
      }
      if (done || tried >= limit) break;
      // Next combination in lexicographic order.
      std::size_t i = r;
      while (i > 0 && pick[i - 1] == n - r + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  v.consumed.curves = tried;
  ctx.used.curves += tried;
  if (!done) v.witness = {{"reason", tried >= limit ? "curve budget" : "search exhausted"}, {"tried", tried}};
  return v;
}

}  // namespace germcalc
