#include "germcalc/groebner.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>

#include "germcalc/errors.hpp"
#include "germcalc/parser.hpp"

namespace germcalc {

TermOrder::TermOrder(std::vector<VarIndex> eliminated, std::vector<VarIndex> remaining)
    : eliminated_(std::move(eliminated)), remaining_(std::move(remaining)) {
  std::set<VarIndex> seen;
  for (auto v : variables()) {
    if (v == 0) throw Error(ErrorKind::SubscriptOutOfRange, "variable index must be >= 1");
    if (!seen.insert(v).second)
      throw Error(ErrorKind::UnknownVariable,
                  "variable x_" + std::to_string(v) + " listed twice in a term order");
  }
}

TermOrder TermOrder::grevlex(std::vector<VarIndex> vars) { return TermOrder({}, std::move(vars)); }

TermOrder TermOrder::elimination(std::vector<VarIndex> eliminated, std::vector<VarIndex> remaining) {
  return TermOrder(std::move(eliminated), std::move(remaining));
}

std::vector<VarIndex> TermOrder::variables() const {
  std::vector<VarIndex> out = eliminated_;
  out.insert(out.end(), remaining_.begin(), remaining_.end());
  return out;
}

bool TermOrder::contains(VarIndex v) const {
  return std::find(eliminated_.begin(), eliminated_.end(), v) != eliminated_.end() ||
         std::find(remaining_.begin(), remaining_.end(), v) != remaining_.end();
}

namespace {

int grevlex_block(const Monomial& a, const Monomial& b, const std::vector<VarIndex>& block) {
  std::uint64_t da = 0, db = 0;
  for (auto v : block) {
    da += a.exponent(v);
    db += b.exponent(v);
  }
  if (da != db) return da > db ? 1 : -1;
  for (auto it = block.rbegin(); it != block.rend(); ++it) {
    auto ea = a.exponent(*it), eb = b.exponent(*it);
    if (ea != eb) return ea < eb ? 1 : -1;
  }
  return 0;
}

}  // namespace

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
  if (int c = grevlex_block(a, b, eliminated_)) return c;
  return grevlex_block(a, b, remaining_);
}

json TermOrder::to_json() const {
  return json{{"eliminated", eliminated_}, {"remaining", remaining_}};
}

TermOrder TermOrder::from_json(const json& j) {
  return TermOrder(j.at("eliminated").get<std::vector<VarIndex>>(),
                   j.at("remaining").get<std::vector<VarIndex>>());
}

TermOrder default_order(const std::vector<Polynomial>& polys) {
  VarSet vars = support(polys);
  return TermOrder::grevlex(std::vector<VarIndex>(vars.begin(), vars.end()));
}

namespace {

// ---------------------------------------------------------------------------
// Dense engine: exponent vectors indexed by position in the term order.

struct DMono {
  std::vector<std::uint32_t> e;
  std::uint32_t deg = 0;
  std::uint32_t deg_block = 0;  // degree in the eliminated block

  friend bool operator==(const DMono& a, const DMono& b) { return a.e == b.e; }
};

struct DTerm {
  DMono m;
  Scalar c;
};

using DPoly = std::vector<DTerm>;  // descending

class Ring {
 public:
  Ring(const TermOrder& order, Field field) : order_(order), field_(field) {
    auto vars = order.variables();
    block_ = order.eliminated().size();
    for (std::size_t i = 0; i < vars.size(); ++i) position_[vars[i]] = i;
    vars_ = std::move(vars);
  }

  std::size_t nvars() const { return vars_.size(); }
  Field field() const { return field_; }

  int compare(const DMono& a, const DMono& b) const {
    if (a.deg_block != b.deg_block) return a.deg_block > b.deg_block ? 1 : -1;
    for (std::size_t i = block_; i-- > 0;)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    std::uint32_t ra = a.deg - a.deg_block, rb = b.deg - b.deg_block;
    if (ra != rb) return ra > rb ? 1 : -1;
    for (std::size_t i = vars_.size(); i-- > block_;)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    return 0;
  }

  DMono make(std::vector<std::uint32_t> e) const {
    DMono m;
    m.e = std::move(e);
    for (std::size_t i = 0; i < m.e.size(); ++i) {
      m.deg += m.e[i];
      if (i < block_) m.deg_block += m.e[i];
    }
    return m;
  }

  DMono one() const { return make(std::vector<std::uint32_t>(vars_.size(), 0)); }

  DMono mul(const DMono& a, const DMono& b) const {
    DMono m;
    m.e.resize(a.e.size());
    for (std::size_t i = 0; i < a.e.size(); ++i) m.e[i] = a.e[i] + b.e[i];
    m.deg = a.deg + b.deg;
    m.deg_block = a.deg_block + b.deg_block;
    return m;
  }

  static bool divides(const DMono& a, const DMono& b) {
    if (a.deg > b.deg) return false;
    for (std::size_t i = 0; i < a.e.size(); ++i)
      if (a.e[i] > b.e[i]) return false;
    return true;
  }

  DMono quotient(const DMono& b, const DMono& a) const {  // b / a
    std::vector<std::uint32_t> e(b.e.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = b.e[i] - a.e[i];
    return make(std::move(e));
  }

  DMono lcm(const DMono& a, const DMono& b) const {
    std::vector<std::uint32_t> e(a.e.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::max(a.e[i], b.e[i]);
    return make(std::move(e));
  }

  static bool coprime(const DMono& a, const DMono& b) {
    for (std::size_t i = 0; i < a.e.size(); ++i)
      if (a.e[i] != 0 && b.e[i] != 0) return false;
    return true;
  }

  DPoly to_dense(const Polynomial& p) const {
    if (p.field() != field_) throw Error(ErrorKind::FieldMismatch, "polynomial field differs");
    DPoly out;
    out.reserve(p.terms().size());
    for (const auto& t : p.terms()) {
      std::vector<std::uint32_t> e(vars_.size(), 0);
      for (const auto& [v, x] : t.monomial.entries()) {
        auto it = position_.find(v);
        if (it == position_.end())
          throw Error(ErrorKind::UnknownVariable,
                      "variable x_" + std::to_string(v) + " is not in the term order");
        e[it->second] = x;
      }
      out.push_back({make(std::move(e)), t.coefficient});
    }
    std::sort(out.begin(), out.end(),
              [this](const DTerm& a, const DTerm& b) { return compare(a.m, b.m) > 0; });
    return out;
  }

  Polynomial to_sparse(const DPoly& p) const {
    std::vector<Term> terms;
    terms.reserve(p.size());
    for (const auto& t : p) {
      std::vector<Monomial::Entry> entries;
      for (std::size_t i = 0; i < t.m.e.size(); ++i)
        if (t.m.e[i] != 0) entries.emplace_back(vars_[i], t.m.e[i]);
      terms.push_back({Monomial(std::move(entries)), t.c});
    }
    return Polynomial(field_, std::move(terms));
  }

  // p - c * m * q
  DPoly sub_mul(const DPoly& p, const Scalar& c, const DMono& m, const DPoly& q) const {
    DPoly out;
    out.reserve(p.size() + q.size());
    std::size_t i = 0, j = 0;
    while (i < p.size() || j < q.size()) {
      if (j == q.size()) {
        out.push_back(p[i++]);
        continue;
      }
      DMono qm = mul(m, q[j].m);
      int cmp = i == p.size() ? -1 : compare(p[i].m, qm);
      if (cmp > 0) {
        out.push_back(p[i++]);
      } else if (cmp < 0) {
        out.push_back({std::move(qm), -(c * q[j].c)});
        ++j;
      } else {
        Scalar v = p[i].c - c * q[j].c;
        if (!v.is_zero()) out.push_back({std::move(qm), std::move(v)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  // Full reduction of p by the (nonzero) polynomials in G.
  DPoly reduce(DPoly p, const std::vector<const DPoly*>& G) const {
    DPoly rem;
    while (!p.empty()) {
      const DTerm& lt = p.front();
      const DPoly* divisor = nullptr;
      for (const DPoly* g : G) {
        if (divides(g->front().m, lt.m)) {
          divisor = g;
          break;
        }
      }
      if (divisor) {
        Scalar c = lt.c / divisor->front().c;
        DMono q = quotient(lt.m, divisor->front().m);
        p = sub_mul(p, c, q, *divisor);
      } else {
        rem.push_back(std::move(p.front()));
        p.erase(p.begin());
      }
    }
    return rem;
  }

  DPoly spoly(const DPoly& f, const DPoly& g) const {
    DMono l = lcm(f.front().m, g.front().m);
    DMono mf = quotient(l, f.front().m);
    DMono mg = quotient(l, g.front().m);
    // (1/lc f) mf f - (1/lc g) mg g
    DPoly a;
    Scalar cf = f.front().c.inverse();
    for (const auto& t : f) a.push_back({mul(mf, t.m), cf * t.c});
    return sub_mul(a, g.front().c.inverse(), mg, g);
  }

  static void make_monic(DPoly& p) {
    if (p.empty()) return;
    Scalar inv = p.front().c.inverse();
    for (auto& t : p) t.c *= inv;
  }

  // Scale to coprime integer (Gaussian integer) coefficients with a leading
  // coefficient that prints nonnegative.
  void make_primitive(DPoly& p) const {
    if (p.empty()) return;
    mpz_class den = 1, num = 0;
    for (const auto& t : p) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.re().get_den_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.im().get_den_mpz_t());
    }
    for (const auto& t : p) {
      mpz_class a = t.c.re().get_num() * (den / t.c.re().get_den());
      mpz_class b = t.c.im().get_num() * (den / t.c.im().get_den());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), a.get_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), b.get_mpz_t());
    }
    mpq_class scale(den, num);
    scale.canonicalize();
    if (p.front().c.prints_negative()) scale = -scale;
    Scalar s(field_, scale);
    for (auto& t : p) t.c *= s;
  }

 private:
  TermOrder order_;
  Field field_;
  std::size_t block_ = 0;
  std::vector<VarIndex> vars_;
  std::unordered_map<VarIndex, std::size_t> position_;
};

Field common_field(const std::vector<Polynomial>& polys, Field fallback) {
  if (polys.empty()) return fallback;
  Field f = polys.front().field();
  for (const auto& p : polys)
    if (p.field() != f) throw Error(ErrorKind::FieldMismatch, "generator fields differ");
  return f;
}

struct Pair {
  std::size_t i, j;
  DMono lcm;
};

std::vector<DPoly> buchberger_dense(const Ring& ring, std::vector<DPoly> input, StepBudget& budget) {
  std::vector<DPoly> G;
  std::vector<Pair> pending;
  std::set<std::pair<std::size_t, std::size_t>> pending_set;

  auto unit = [&]() {
    DPoly one{{ring.one(), Scalar(ring.field(), 1)}};
    return std::vector<DPoly>{one};
  };

  auto add = [&](DPoly h) {
    ring.make_primitive(h);
    std::size_t k = G.size();
    G.push_back(std::move(h));
    for (std::size_t i = 0; i < k; ++i) {
      pending.push_back({i, k, ring.lcm(G[i].front().m, G[k].front().m)});
      pending_set.insert({i, k});
    }
  };

  for (auto& p : input) {
    if (p.empty()) continue;
    if (p.front().m.deg == 0) return unit();
    add(std::move(p));
  }

  std::vector<const DPoly*> view;
  while (!pending.empty()) {
    // Normal strategy: smallest lcm degree, then smallest index pair.
    auto best = std::min_element(pending.begin(), pending.end(), [](const Pair& a, const Pair& b) {
      if (a.lcm.deg != b.lcm.deg) return a.lcm.deg < b.lcm.deg;
      if (a.i != b.i) return a.i < b.i;
      return a.j < b.j;
    });
    Pair pair = std::move(*best);
    pending.erase(best);
    pending_set.erase({pair.i, pair.j});

    const DPoly& f = G[pair.i];
    const DPoly& g = G[pair.j];
    if (Ring::coprime(f.front().m, g.front().m)) continue;
    bool chain = false;
    for (std::size_t l = 0; l < G.size() && !chain; ++l) {
      if (l == pair.i || l == pair.j) continue;
      if (!Ring::divides(G[l].front().m, pair.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) {
        return std::make_pair(std::min(a, b), std::max(a, b));
      };
      chain = !pending_set.count(key(pair.i, l)) && !pending_set.count(key(pair.j, l));
    }
    if (chain) continue;

    budget.charge();
    view.clear();
    for (const auto& p : G) view.push_back(&p);
    DPoly h = ring.reduce(ring.spoly(f, g), view);
    if (h.empty()) continue;
    if (h.front().m.deg == 0) return unit();
    add(std::move(h));
  }

  // Minimalize: drop elements whose leading monomial is divisible by
  // another's (earlier index wins ties).
  std::vector<DPoly> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      if (!Ring::divides(G[j].front().m, G[i].front().m)) continue;
      redundant = !(G[j].front().m == G[i].front().m) || j < i;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  // Interreduce tails.
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    view.clear();
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) view.push_back(&minimal[j]);
    DTerm lead = minimal[i].front();
    DPoly tail(minimal[i].begin() + 1, minimal[i].end());
    DPoly reduced = ring.reduce(std::move(tail), view);
    reduced.insert(reduced.begin(), std::move(lead));
    Ring::make_monic(reduced);
    minimal[i] = std::move(reduced);
  }
  std::sort(minimal.begin(), minimal.end(), [&ring](const DPoly& a, const DPoly& b) {
    return ring.compare(a.front().m, b.front().m) > 0;
  });
  return minimal;
}

json poly_list(const std::vector<Polynomial>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(print_canonical(p));
  return out;
}

}  // namespace

const Term& leading_term(const Polynomial& p, const TermOrder& order) {
  const Term* best = &p.terms().front();
  for (const auto& t : p.terms())
    if (order.compare(t.monomial, best->monomial) > 0) best = &t;
  return *best;
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G) {
  Field field = f.field();
  for (const auto& g : G.generators)
    if (g.field() != field) throw Error(ErrorKind::FieldMismatch, "basis field differs");
  Ring ring(G.order, field);
  std::vector<DPoly> dense;
  for (const auto& g : G.generators)
    if (!g.is_zero()) dense.push_back(ring.to_dense(g));
  std::vector<const DPoly*> view;
  for (const auto& d : dense) view.push_back(&d);
  return ring.to_sparse(ring.reduce(ring.to_dense(f), view));
}

namespace {

// Completed bases keyed by field, order and generator texts. A hit replays
// the recorded number of pair reductions against the caller's budget, so
// outcomes and reported consumption match a fresh computation.
class BasisCache {
 public:
  struct Entry {
    GroebnerBasis basis;
    std::uint64_t reductions;
  };

  std::shared_ptr<const Entry> find(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : it->second;
  }
  void insert(const std::string& key, Entry entry) {
    std::lock_guard<std::mutex> lock(mutex_);
    entries_.try_emplace(key, std::make_shared<const Entry>(std::move(entry)));
  }

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<const Entry>> entries_;
};

BasisCache& basis_cache() {
  static BasisCache cache;
  return cache;
}

}  // namespace

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, const TermOrder& order,
                         StepBudget& budget) {
  Field field = common_field(gens, Field::Real);
  std::string key = std::string(to_string(field)) + "|" + order.to_json().dump();
  for (const auto& g : gens) key += "|" + print_canonical(g);
  if (auto hit = basis_cache().find(key)) {
    for (std::uint64_t i = 0; i < hit->reductions; ++i) budget.charge();
    return hit->basis;
  }
  std::uint64_t before = budget.consumed();
  Ring ring(order, field);
  std::vector<DPoly> dense;
  for (const auto& g : gens) dense.push_back(ring.to_dense(g));
  GroebnerBasis out;
  out.order = order;
  out.reduced = true;
  for (const auto& d : buchberger_dense(ring, std::move(dense), budget))
    out.generators.push_back(ring.to_sparse(d));
  basis_cache().insert(key, {out, budget.consumed() - before});
  return out;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const TermOrder& order) {
  Ring ring(order, f.field());
  return ring.to_sparse(ring.spoly(ring.to_dense(f), ring.to_dense(g)));
}

bool satisfies_buchberger_criterion(const GroebnerBasis& G) {
  if (G.generators.empty()) return true;
  Field field = common_field(G.generators, Field::Real);
  Ring ring(G.order, field);
  std::vector<DPoly> dense;
  for (const auto& g : G.generators) {
    if (g.is_zero()) return false;
    dense.push_back(ring.to_dense(g));
  }
  std::vector<const DPoly*> view;
  for (const auto& d : dense) view.push_back(&d);
  for (std::size_t i = 0; i < dense.size(); ++i)
    for (std::size_t j = i + 1; j < dense.size(); ++j)
      if (!ring.reduce(ring.spoly(dense[i], dense[j]), view).empty()) return false;
  return true;
}

Verdict is_member(const Polynomial& f, const std::vector<Polynomial>& gens, StepBudget& budget) {
  std::vector<Polynomial> all = gens;
  all.push_back(f);
  return is_member(f, gens, default_order(all), budget);
}

Verdict is_member(const Polynomial& f, const std::vector<Polynomial>& gens, const TermOrder& order,
                  StepBudget& budget) {
  Verdict v;
  v.query = "member";
  v.input = {{"field", to_string(f.field())}, {"gens", poly_list(gens)}, {"f", print_canonical(f)},
             {"order", order.to_json()}};
  std::uint64_t before = budget.consumed();
  try {
    GroebnerBasis G = buchberger(gens, order, budget);
    Polynomial r = normal_form(f, G);
    v.outcome = r.is_zero() ? Outcome::Proved : Outcome::Refuted;
    v.witness = {{"basis", poly_list(G.generators)}, {"normal_form", print_canonical(r)}};
  } catch (const BudgetExhausted& e) {
    v.outcome = Outcome::Unknown;
    v.witness = {{"reason", "budget"}, {"consumed", e.consumed()}};
  }
  v.consumed.gb = budget.consumed() - before;
  return v;
}

std::vector<Polynomial> eliminate(const std::vector<Polynomial>& gens, const VarSet& drop,
                                  StepBudget& budget) {
  VarSet all = support(gens);
  std::vector<VarIndex> dropped, kept;
  for (auto v : all) (drop.count(v) ? dropped : kept).push_back(v);
  GroebnerBasis G = buchberger(gens, TermOrder::elimination(dropped, kept), budget);
  std::vector<Polynomial> out;
  for (const auto& g : G.generators) {
    VarSet s = support(g);
    bool free = std::none_of(s.begin(), s.end(), [&](VarIndex v) { return drop.count(v) > 0; });
    if (free) out.push_back(g);
  }
  return out;
}

namespace {

using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;  // column descending

SparseRow row_sub(const SparseRow& a, const Scalar& c, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first > a[i].first) {
      out.emplace_back(b[j].first, -(c * b[j].second));
      ++j;
    } else {
      Scalar v = a[i].second - c * b[j].second;
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

void enumerate_monomials(const std::vector<VarIndex>& vars, std::size_t pos, std::uint32_t budget,
                         std::vector<Monomial::Entry>& cur, std::vector<Monomial>& out) {
  if (pos == vars.size()) {
    out.emplace_back(cur);
    return;
  }
  for (std::uint32_t e = 0; e <= budget; ++e) {
    if (e > 0) cur.emplace_back(vars[pos], e);
    enumerate_monomials(vars, pos + 1, budget - e, cur, out);
    if (e > 0) cur.pop_back();
  }
}

}  // namespace

Verdict macaulay_membership_oracle(const Polynomial& f, const std::vector<Polynomial>& gens,
                                   std::uint32_t degree_bound) {
  Verdict v;
  v.query = "macaulay";
  v.input = {{"field", to_string(f.field())}, {"gens", poly_list(gens)}, {"f", print_canonical(f)},
             {"degree_bound", degree_bound}};
  v.outcome = Outcome::Unknown;
  if (f.total_degree() > degree_bound) {
    v.witness = {{"reason", "degree bound below deg f"}};
    return v;
  }
  std::vector<Polynomial> all = gens;
  all.push_back(f);
  VarSet vs = support(all);
  std::vector<VarIndex> vars(vs.begin(), vs.end());
  std::vector<Monomial> monomials;
  std::vector<Monomial::Entry> cur;
  enumerate_monomials(vars, 0, degree_bound, cur, monomials);
  std::unordered_map<Monomial, std::size_t> column;
  std::sort(monomials.begin(), monomials.end(),
            [](const Monomial& a, const Monomial& b) { return grevlex_compare(a, b) < 0; });
  for (std::size_t i = 0; i < monomials.size(); ++i) column.emplace(monomials[i], i);

  auto to_row = [&](const Polynomial& p) {
    SparseRow row;
    for (const auto& t : p.terms()) row.emplace_back(column.at(t.monomial), t.coefficient);
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    return row;
  };

  std::unordered_map<std::size_t, SparseRow> pivots;
  auto reduce = [&](SparseRow row) {
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) break;
      Scalar c = row.front().second;
      row = row_sub(row, c, it->second);
    }
    return row;
  };

  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    std::uint64_t dg = g.total_degree();
    if (dg > degree_bound) continue;
    for (const auto& m : monomials) {
      if (m.degree() + dg > degree_bound) continue;
      SparseRow row = reduce(to_row(Polynomial::monomial(Scalar(f.field(), 1), m) * g));
      if (row.empty()) continue;
      Scalar inv = row.front().second.inverse();
      for (auto& [col, c] : row) c *= inv;
      pivots.emplace(row.front().first, std::move(row));
    }
  }
  SparseRow rest = reduce(to_row(f));
  if (rest.empty()) {
    v.outcome = Outcome::Proved;
    v.witness = {{"degree_bound", degree_bound}, {"rank", pivots.size()}};
  } else {
    v.witness = {{"reason", "no representation within the degree bound"},
                 {"degree_bound", degree_bound}};
  }
  return v;
}

}  // namespace germcalc
