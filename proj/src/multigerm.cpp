#include "germcalc/multigerm.hpp"

#include <algorithm>
#include <limits>

#include "germcalc/errors.hpp"
#include "germcalc/serialize.hpp"

namespace germcalc {

// ---------------------------------------------------------------- set-germs

SetGerm::SetGerm(BasePoint base, std::vector<Germ> defining)
    : base_(std::move(base)), defining_(std::move(defining)) {
  for (const auto& g : defining_)
    if (g.base() != base_) throw Error(ErrorKind::BaseMismatch, "defining germs must share the base point");
}

SetGerm SetGerm::of(const BasePoint& base, const std::vector<Polynomial>& defining) {
  std::vector<Germ> germs;
  for (const auto& p : defining) germs.emplace_back(p, base);
  return SetGerm(base, std::move(germs));
}

SetGerm SetGerm::point(const BasePoint& base, const VarSet& dims) {
  std::vector<Polynomial> ps;
  for (VarIndex t : dims)
    ps.push_back(Polynomial::variable(base.field(), t) - Polynomial::constant(base.coord(t)));
  return of(base, ps);
}

std::vector<Polynomial> SetGerm::polys() const {
  std::vector<Polynomial> out;
  for (const auto& g : defining_) out.push_back(g.poly());
  return out;
}

VarSet SetGerm::support() const { return germcalc::support(polys()); }

json SetGerm::to_json() const {
  return {{"field", germcalc::to_string(field())}, {"base", germcalc::to_json(base_)},
          {"gens", germcalc::to_json(polys())}};
}

bool setgerm_is_empty(const SetGerm& A) {
  return std::any_of(A.defining().begin(), A.defining().end(), [](const Germ& g) { return is_invertible(g); });
}

SetGerm setgerm_intersection(const SetGerm& A, const SetGerm& B) {
  if (A.base() != B.base()) throw Error(ErrorKind::BaseMismatch, "set-germs at different base points");
  std::vector<Germ> gens = A.defining();
  gens.insert(gens.end(), B.defining().begin(), B.defining().end());
  return SetGerm(A.base(), std::move(gens));
}

SetGerm setgerm_union(const SetGerm& A, const SetGerm& B) {
  if (A.base() != B.base()) throw Error(ErrorKind::BaseMismatch, "set-germs at different base points");
  std::vector<Polynomial> gens;
  for (const auto& a : A.defining())
    for (const auto& b : B.defining()) gens.push_back(a.poly() * b.poly());
  return SetGerm::of(A.base(), gens);
}

namespace {

std::string budget_key(const Context& ctx) {
  return std::to_string(ctx.limits.gb) + "/" + std::to_string(ctx.limits.enumeration) + "/" +
         std::to_string(ctx.limits.curves);
}

}  // namespace

Verdict setgerm_contains(const SetGerm& A, const SetGerm& B, Context& ctx) {
  if (A.base() != B.base()) throw Error(ErrorKind::BaseMismatch, "set-germs at different base points");
  std::string key = "contains|" + A.to_json().dump() + "|" + to_json(B.polys()).dump() + "|" + budget_key(ctx);
  if (auto hit = ctx.cache->find(key)) {
    ctx.used += hit->consumed;
    return *hit;
  }

  BudgetUse before = ctx.used;
  Verdict v;
  v.query = "contains";
  v.input = {{"field", to_string(A.field())}, {"base", to_json(A.base())}, {"A", to_json(A.polys())},
             {"B", to_json(B.polys())}};
  GermIdeal ideal = A.ideal();
  std::vector<Germ> targets;
  for (const auto& g : B.defining())
    if (!g.poly().is_zero()) targets.push_back(g);

  if (setgerm_is_empty(A)) {
    for (const auto& g : A.defining()) {
      if (is_invertible(g)) {
        v.outcome = Outcome::Proved;
        v.witness = {{"reason", "empty"}, {"unit", print_canonical(g.poly())}};
        break;
      }
    }
  } else if (A.field() == Field::Complex) {
    json members = json::array();
    v.outcome = Outcome::Proved;
    for (const auto& g : targets) {
      Verdict r = local_radical_member_complex(ideal, g, ctx);
      if (r.refuted()) {
        v.outcome = Outcome::Refuted;
        v.witness = {{"failing", r.to_json()}};
        break;
      }
      if (!r.proved()) v.outcome = Outcome::Unknown;
      members.push_back(r.to_json());
    }
    if (v.outcome != Outcome::Refuted) v.witness = {{"members", members}};
  } else {
    std::vector<Verdict> closure = real_radical_closure(ideal, targets, {}, ctx);
    v.outcome = Outcome::Proved;
    json members = json::array();
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (closure[i].proved()) {
        members.push_back(closure[i].to_json());
        continue;
      }
      Verdict r = refute_real_vanishing(ideal, targets[i], std::nullopt, ctx);
      if (r.refuted()) {
        v.outcome = Outcome::Refuted;
        v.witness = {{"failing", r.to_json()}};
        break;
      }
      v.outcome = Outcome::Unknown;
      members.push_back(closure[i].to_json());
    }
    if (v.outcome != Outcome::Refuted) v.witness = {{"members", members}};
  }
  v.consumed = ctx.used - before;
  ctx.cache->insert(key, v);
  return v;
}

// ---------------------------------------------------------------- enumeration helpers

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<std::uint64_t>(r);
}

// The r-th k-subset of {0..m-1} in lexicographic order.
std::vector<std::uint64_t> unrank_combination(std::uint64_t m, std::uint64_t k, std::uint64_t r) {
  std::vector<std::uint64_t> out;
  std::uint64_t x = 0;
  for (std::uint64_t i = 0; i < k; ++i) {
    for (;; ++x) {
      std::uint64_t c = binomial(m - 1 - x, k - 1 - i);
      if (r < c) break;
      r -= c;
    }
    out.push_back(x++);
  }
  return out;
}

// Number of nonempty subsets of an n-element set, saturated.
std::uint64_t subset_count(std::uint64_t n) {
  if (n >= 63) return std::numeric_limits<std::uint64_t>::max();
  return (std::uint64_t{1} << n) - 1;
}

bool subset_of(const VarSet& a, const VarSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

bool natural(const json& x) { return x.is_number_integer() && x.get<std::int64_t>() >= 0; }

std::vector<std::uint64_t> positions_of(const Index& i) {
  if (!i.is_array()) throw Error(ErrorKind::InvalidSystem, "index must be a list: " + i.dump());
  std::vector<std::uint64_t> out;
  for (const auto& x : i) {
    if (!natural(x)) throw Error(ErrorKind::InvalidSystem, "bad index " + i.dump());
    out.push_back(x.get<std::uint64_t>());
  }
  if (!std::is_sorted(out.begin(), out.end()) || std::adjacent_find(out.begin(), out.end()) != out.end())
    throw Error(ErrorKind::InvalidSystem, "index must be strictly increasing: " + i.dump());
  return out;
}

bool index_subset(const Index& a, const Index& b) {
  auto x = positions_of(a), y = positions_of(b);
  return std::includes(y.begin(), y.end(), x.begin(), x.end());
}

// All nonempty subsets of items in canonical fin order.
std::vector<Index> all_subsets(const std::vector<std::uint64_t>& items) {
  std::vector<Index> out;
  std::uint64_t total = subset_count(items.size());
  for (std::uint64_t n = 0; n < total; ++n) {
    Index idx = json::array();
    for (auto p : nth_finite_subset(n)) idx.push_back(items[p]);
    out.push_back(std::move(idx));
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> nth_finite_subset(std::uint64_t n) {
  std::uint64_t m = 0, start = 0;
  while (m < 63 && n - start >= (std::uint64_t{1} << m)) {
    start += std::uint64_t{1} << m;
    ++m;
  }
  std::uint64_t r = n - start;
  for (std::uint64_t k = 0; k <= m; ++k) {
    std::uint64_t c = binomial(m, k);
    if (r < c) {
      auto out = unrank_combination(m, k, r);
      out.push_back(m);
      return out;
    }
    r -= c;
  }
  throw Error(ErrorKind::InvalidSystem, "subset rank out of range");
}

json ValidationReport::to_json() const {
  json pairs = json::array();
  for (const auto& [a, b] : unknown) pairs.push_back({a, b});
  return {{"antitone", germcalc::to_string(antitone)}, {"unknown", pairs}, {"scope", scope}};
}

// ---------------------------------------------------------------- systems

struct SystemOfGerms::Impl {
  Kind kind;
  BasePoint base;
  ValidationReport report;

  Impl(Kind k, BasePoint b) : kind(k), base(std::move(b)) {}
  virtual ~Impl() = default;
  virtual std::optional<std::uint64_t> size() const = 0;
  virtual std::optional<Index> index_at(std::uint64_t n) const = 0;
  virtual SetGerm germ(const Index& i) const = 0;
  virtual bool related(const Index& a, const Index& b) const = 0;
  virtual std::optional<Index> top() const = 0;
  virtual std::optional<std::vector<Index>> window(const VarSet& dims, std::uint64_t limit) const = 0;
  virtual json to_json() const = 0;
};

namespace {

std::optional<Index> some(Index i) { return std::optional<Index>(std::in_place, std::move(i)); }

json header(const char* kind, const BasePoint& base) {
  return {{"kind", kind}, {"field", to_string(base.field())}, {"base", to_json(base)}};
}

struct ExplicitImpl : SystemOfGerms::Impl {
  std::vector<std::pair<Index, SetGerm>> elements;
  std::vector<std::vector<bool>> rel;
  std::vector<std::pair<Index, Index>> given;

  ExplicitImpl(BasePoint b) : Impl(SystemOfGerms::Kind::Explicit, std::move(b)) {}

  std::size_t position(const Index& i) const {
    for (std::size_t k = 0; k < elements.size(); ++k)
      if (elements[k].first == i) return k;
    throw Error(ErrorKind::InvalidSystem, "unknown index " + i.dump());
  }
  std::optional<std::uint64_t> size() const override { return elements.size(); }
  std::optional<Index> index_at(std::uint64_t n) const override {
    if (n >= elements.size()) return std::nullopt;
    return some(elements[n].first);
  }
  SetGerm germ(const Index& i) const override { return elements[position(i)].second; }
  bool related(const Index& a, const Index& b) const override { return rel[position(a)][position(b)]; }
  std::optional<Index> top() const override {
    if (report.antitone != Outcome::Proved) return std::nullopt;
    for (std::size_t u = 0; u < elements.size(); ++u) {
      bool above = true;
      for (std::size_t v = 0; v < elements.size() && above; ++v) above = rel[v][u];
      if (above) return some(elements[u].first);
    }
    return std::nullopt;
  }
  std::optional<std::vector<Index>> window(const VarSet& dims, std::uint64_t limit) const override {
    std::vector<Index> out;
    for (const auto& [label, g] : elements)
      if (subset_of(g.support(), dims)) out.push_back(label);
    if (out.size() > limit) return std::nullopt;
    return out;
  }
  json to_json() const override {
    json j = header("explicit", base);
    j["elements"] = json::array();
    for (const auto& [label, g] : elements) j["elements"].push_back({{"label", label}, {"gens", germcalc::to_json(g.polys())}});
    j["relation"] = json::array();
    for (const auto& [a, b] : given) j["relation"].push_back({a, b});
    return j;
  }
};

struct ZeroImpl : SystemOfGerms::Impl {
  GeneratorStream stream;

  explicit ZeroImpl(GeneratorStream s) : Impl(SystemOfGerms::Kind::Zero, s.base()), stream(std::move(s)) {}

  bool empty_ideal() const { return stream.size() && *stream.size() == 0; }

  std::optional<std::uint64_t> size() const override {
    if (!stream.size()) return std::nullopt;
    if (empty_ideal()) return 1;
    return subset_count(*stream.size());
  }
  std::optional<Index> index_at(std::uint64_t n) const override {
    if (empty_ideal()) return n == 0 ? std::optional<Index>(json::array()) : std::nullopt;
    if (auto s = size(); s && n >= *s) return std::nullopt;
    Index out = json::array();
    for (auto p : nth_finite_subset(n)) out.push_back(p);
    return out;
  }
  SetGerm germ(const Index& i) const override {
    auto ps = positions_of(i);
    if (ps.empty() && !empty_ideal()) throw Error(ErrorKind::InvalidSystem, "fin(I) has no empty index");
    std::vector<Germ> gens;
    for (auto p : ps) {
      auto g = stream.element(p);
      if (!g) throw Error(ErrorKind::InvalidSystem, "index beyond the generator list: " + i.dump());
      gens.push_back(*g);
    }
    return SetGerm(base, std::move(gens));
  }
  bool related(const Index& a, const Index& b) const override { return index_subset(a, b); }
  std::optional<Index> top() const override {
    if (!stream.size()) return std::nullopt;
    Index out = json::array();
    for (std::uint64_t p = 0; p < *stream.size(); ++p) out.push_back(p);
    return out;
  }

  // Stream positions whose element is indexed by dims.
  std::optional<std::vector<std::uint64_t>> qualifying(const VarSet& dims, std::uint64_t limit) const {
    std::vector<std::uint64_t> out;
    auto fits = [&](std::uint64_t p) { return subset_of(support(stream.element(p)->poly()), dims); };
    switch (stream.kind()) {
      case GeneratorStream::Kind::Finite:
        for (std::uint64_t p = 0; p < *stream.size(); ++p)
          if (fits(p)) out.push_back(p);
        break;
      case GeneratorStream::Kind::Coordinates:
        for (VarIndex t : dims) out.push_back(t - 1);
        break;
      case GeneratorStream::Kind::Templated: {
        if (dims.empty()) break;
        std::uint64_t max_dim = *dims.rbegin();
        const auto& ts = stream.templates();
        for (std::size_t j = 0; j < ts.size(); ++j) {
          // Positive-slope subscripts bound the parameter; constant
          // templates either never fit or fit at every k.
          std::optional<std::uint64_t> kmax;
          bool never = false;
          for (const auto& sub : ts[j].subscripts()) {
            if (sub.slope == 0) continue;
            if (sub.offset > max_dim) {
              never = true;
              break;
            }
            std::uint64_t bound = (max_dim - sub.offset) / sub.slope;
            kmax = kmax ? std::min(*kmax, bound) : bound;
          }
          if (never) continue;
          if (!kmax) {
            if (fits(j)) return std::nullopt;
            continue;
          }
          if (*kmax > limit) return std::nullopt;
          for (std::uint64_t k = 0; k <= *kmax; ++k)
            if (fits(k * ts.size() + j)) out.push_back(k * ts.size() + j);
        }
        std::sort(out.begin(), out.end());
        break;
      }
    }
    return out;
  }

  std::optional<std::vector<Index>> window(const VarSet& dims, std::uint64_t limit) const override {
    if (empty_ideal()) return std::vector<Index>{json::array()};
    auto q = qualifying(dims, limit);
    if (!q || subset_count(q->size()) > limit) return std::nullopt;
    return all_subsets(*q);
  }
  json to_json() const override { return {{"kind", "zero"}, {"stream", stream.to_json()}}; }
};

struct PointImpl : SystemOfGerms::Impl {
  explicit PointImpl(BasePoint b) : Impl(SystemOfGerms::Kind::Point, std::move(b)) {}

  std::optional<std::uint64_t> size() const override { return std::nullopt; }
  std::optional<Index> index_at(std::uint64_t n) const override {
    Index out = json::array();
    for (auto p : nth_finite_subset(n)) out.push_back(p + 1);
    return out;
  }
  SetGerm germ(const Index& i) const override {
    auto ps = positions_of(i);
    if (ps.empty() || ps.front() == 0 || ps.back() > std::numeric_limits<VarIndex>::max())
      throw Error(ErrorKind::InvalidSystem, "point index must be a nonempty set of variables");
    VarSet dims;
    for (auto p : ps) dims.insert(static_cast<VarIndex>(p));
    return SetGerm::point(base, dims);
  }
  bool related(const Index& a, const Index& b) const override { return index_subset(a, b); }
  std::optional<Index> top() const override { return std::nullopt; }
  std::optional<std::vector<Index>> window(const VarSet& dims, std::uint64_t limit) const override {
    if (subset_count(dims.size()) > limit) return std::nullopt;
    std::vector<std::uint64_t> items(dims.begin(), dims.end());
    return all_subsets(items);
  }
  json to_json() const override { return header("point", base); }
};

struct ChainImpl : SystemOfGerms::Impl {
  std::vector<ChainPart> parts;
  std::uint64_t start;
  std::uint64_t gap;

  ChainImpl(BasePoint b, std::vector<ChainPart> p, std::uint64_t s, std::uint64_t g)
      : Impl(SystemOfGerms::Kind::Chain, std::move(b)), parts(std::move(p)), start(s), gap(g) {}

  std::uint64_t number(const Index& i) const {
    if (!natural(i) || i.get<std::uint64_t>() < start)
      throw Error(ErrorKind::InvalidSystem, "bad chain index " + i.dump());
    return i.get<std::uint64_t>();
  }
  // Parameter values of a part at chain index n.
  std::vector<std::uint64_t> ks(const ChainPart& part, std::uint64_t n) const {
    std::vector<std::uint64_t> out;
    auto shifted = [n](std::int64_t d) -> std::optional<std::uint64_t> {
      std::int64_t v = static_cast<std::int64_t>(n) + d;
      if (v < 0) return std::nullopt;
      return static_cast<std::uint64_t>(v);
    };
    if (part.ranged) {
      auto hi = shifted(part.to);
      if (hi)
        for (std::uint64_t k = part.from; k <= *hi; ++k) out.push_back(k);
    } else if (auto k = shifted(part.at)) {
      out.push_back(*k);
    }
    return out;
  }
  // Largest variable index written in A^n.
  std::uint64_t syntactic_max(std::uint64_t n) const {
    std::uint64_t best = 0;
    for (const auto& part : parts) {
      auto k = ks(part, n);
      if (k.empty()) continue;
      for (const auto& sub : part.tmpl.subscripts()) best = std::max<std::uint64_t>(best, sub.at(k.back()));
    }
    return best;
  }
  std::optional<std::uint64_t> size() const override { return std::nullopt; }
  std::optional<Index> index_at(std::uint64_t n) const override { return Index(start + n); }
  SetGerm germ(const Index& i) const override {
    std::uint64_t n = number(i);
    std::vector<Polynomial> gens;
    for (const auto& part : parts)
      for (auto k : ks(part, n)) gens.push_back(part.tmpl.instantiate(k, base.field()));
    return SetGerm::of(base, gens);
  }
  bool related(const Index& a, const Index& b) const override {
    std::uint64_t x = number(a), y = number(b);
    return y == x || y >= x + gap;
  }
  std::optional<Index> top() const override { return std::nullopt; }
  std::optional<std::vector<Index>> window(const VarSet& dims, std::uint64_t limit) const override {
    std::vector<Index> out;
    std::uint64_t max_dim = dims.empty() ? 0 : *dims.rbegin();
    for (std::uint64_t n = start; n < start + limit; ++n) {
      bool fits = subset_of(germ(Index(n)).support(), dims);
      if (fits) out.push_back(Index(n));
      if (!fits && syntactic_max(n) > max_dim) return out;
    }
    return std::nullopt;
  }
  json to_json() const override {
    json j = header("chain", base);
    j["start"] = start;
    j["gap"] = gap;
    j["parts"] = json::array();
    for (const auto& p : parts) {
      json q = {{"template", p.tmpl.source()}};
      if (p.ranged) {
        q["from"] = p.from;
        q["to"] = p.to;
      } else {
        q["at"] = p.at;
      }
      j["parts"].push_back(q);
    }
    return j;
  }
};

struct ProductImpl : SystemOfGerms::Impl {
  SystemOfGerms::Op op;
  SystemOfGerms a, b;

  ProductImpl(SystemOfGerms::Op o, SystemOfGerms x, SystemOfGerms y)
      : Impl(SystemOfGerms::Kind::Product, x.base()), op(o), a(std::move(x)), b(std::move(y)) {}

  std::optional<std::uint64_t> size() const override {
    auto sa = a.size(), sb = b.size();
    if (!sa || !sb) return std::nullopt;
    if (*sa != 0 && *sb > std::numeric_limits<std::uint64_t>::max() / *sa)
      return std::numeric_limits<std::uint64_t>::max();
    return *sa * *sb;
  }
  std::optional<Index> index_at(std::uint64_t n) const override {
    auto sa = a.size(), sb = b.size();
    if (sa && sb) {
      if (*sb == 0 || n / *sb >= *sa) return std::nullopt;
      return Index::array({*a.index_at(n / *sb), *b.index_at(n % *sb)});
    }
    // Graded by max(i, j): (m, 0..m) then (0..m-1, m).
    std::uint64_t count = 0;
    auto valid = [&](std::uint64_t i, std::uint64_t j) { return (!sa || i < *sa) && (!sb || j < *sb); };
    for (std::uint64_t m = 0;; ++m) {
      for (std::uint64_t j = 0; j <= m; ++j)
        if (valid(m, j) && count++ == n) return Index::array({*a.index_at(m), *b.index_at(j)});
      for (std::uint64_t i = 0; i < m; ++i)
        if (valid(i, m) && count++ == n) return Index::array({*a.index_at(i), *b.index_at(m)});
    }
  }
  std::pair<Index, Index> split(const Index& i) const {
    if (!i.is_array() || i.size() != 2) throw Error(ErrorKind::InvalidSystem, "product index must be a pair");
    return {i[0], i[1]};
  }
  SetGerm germ(const Index& i) const override {
    auto [x, y] = split(i);
    return op == SystemOfGerms::Op::Intersection ? setgerm_intersection(a.germ(x), b.germ(y))
                                                 : setgerm_union(a.germ(x), b.germ(y));
  }
  bool related(const Index& i, const Index& j) const override {
    auto [x1, y1] = split(i);
    auto [x2, y2] = split(j);
    return a.related(x1, x2) && b.related(y1, y2);
  }
  std::optional<Index> top() const override {
    auto ta = a.top(), tb = b.top();
    if (!ta || !tb) return std::nullopt;
    return Index::array({*ta, *tb});
  }
  std::optional<std::vector<Index>> window(const VarSet& dims, std::uint64_t limit) const override {
    auto wa = a.window(dims, limit), wb = b.window(dims, limit);
    if (!wa || !wb) return std::nullopt;
    if (!wa->empty() && wb->size() > limit / wa->size()) return std::nullopt;
    std::vector<Index> out;
    for (const auto& x : *wa)
      for (const auto& y : *wb) out.push_back(Index::array({x, y}));
    return out;
  }
  json to_json() const override {
    return {{"kind", "product"},
            {"op", op == SystemOfGerms::Op::Intersection ? "intersection" : "union"},
            {"left", a.to_json()},
            {"right", b.to_json()}};
  }
};

}  // namespace

SystemOfGerms SystemOfGerms::explicit_system(const BasePoint& base, std::vector<std::pair<Index, SetGerm>> elements,
                                             std::vector<std::pair<Index, Index>> relation, Context& ctx) {
  auto impl = std::make_shared<ExplicitImpl>(base);
  if (elements.empty()) throw Error(ErrorKind::InvalidSystem, "a system needs at least one index");
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i].second.base() != base) throw Error(ErrorKind::BaseMismatch, "set-germ at another base point");
    for (std::size_t j = 0; j < i; ++j)
      if (elements[j].first == elements[i].first)
        throw Error(ErrorKind::InvalidSystem, "duplicate index " + elements[i].first.dump());
  }
  impl->elements = std::move(elements);
  std::size_t n = impl->elements.size();
  impl->rel.assign(n, std::vector<bool>(n, false));
  for (const auto& [x, y] : relation) impl->rel[impl->position(x)][impl->position(y)] = true;
  impl->given = std::move(relation);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (impl->rel[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (impl->rel[k][j]) impl->rel[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool bound = false;
      for (std::size_t k = 0; k < n && !bound; ++k) bound = impl->rel[i][k] && impl->rel[j][k];
      if (!bound)
        throw Error(ErrorKind::InvalidSystem, "Moore-Smith condition fails for " + impl->elements[i].first.dump() +
                                                  " and " + impl->elements[j].first.dump());
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !impl->rel[i][j]) continue;
      Verdict c = setgerm_contains(impl->elements[j].second, impl->elements[i].second, ctx);
      if (c.refuted())
        throw Error(ErrorKind::InvalidSystem, "not antitone: germ at " + impl->elements[j].first.dump() +
                                                  " is not inside the germ at " + impl->elements[i].first.dump());
      if (!c.proved()) {
        impl->report.antitone = Outcome::Unknown;
        impl->report.unknown.emplace_back(impl->elements[i].first, impl->elements[j].first);
      }
    }
  return SystemOfGerms(impl);
}

SystemOfGerms SystemOfGerms::constant(const SetGerm& germ, Context& ctx) {
  return explicit_system(germ.base(), {{Index(0), germ}}, {{Index(0), Index(0)}}, ctx);
}

SystemOfGerms SystemOfGerms::zero(const GeneratorStream& stream) {
  return SystemOfGerms(std::make_shared<ZeroImpl>(stream));
}

SystemOfGerms SystemOfGerms::point(const BasePoint& base) { return SystemOfGerms(std::make_shared<PointImpl>(base)); }

SystemOfGerms SystemOfGerms::chain(const BasePoint& base, std::vector<ChainPart> parts, std::uint64_t start,
                                   std::uint64_t gap, Context& ctx) {
  if (gap == 0) throw Error(ErrorKind::InvalidSystem, "chain gap must be positive");
  auto impl = std::make_shared<ChainImpl>(base, std::move(parts), start, gap);
  constexpr std::uint64_t kPrefix = 6;
  impl->report.scope = "indices " + std::to_string(start) + ".." + std::to_string(start + kPrefix - 1);
  for (std::uint64_t i = start; i < start + kPrefix; ++i)
    for (std::uint64_t j = i + 1; j < start + kPrefix; ++j) {
      if (!impl->related(Index(i), Index(j))) continue;
      Verdict c = setgerm_contains(impl->germ(Index(j)), impl->germ(Index(i)), ctx);
      if (c.refuted())
        throw Error(ErrorKind::InvalidSystem, "not antitone: A^" + std::to_string(j) + " is not inside A^" +
                                                  std::to_string(i));
      if (!c.proved()) {
        impl->report.antitone = Outcome::Unknown;
        impl->report.unknown.emplace_back(Index(i), Index(j));
      }
    }
  return SystemOfGerms(impl);
}

SystemOfGerms SystemOfGerms::product(Op op, const SystemOfGerms& a, const SystemOfGerms& b) {
  if (a.base() != b.base()) throw Error(ErrorKind::BaseMismatch, "systems at different base points");
  auto impl = std::make_shared<ProductImpl>(op, a, b);
  const auto& ra = a.validation();
  const auto& rb = b.validation();
  if (ra.antitone != Outcome::Proved || rb.antitone != Outcome::Proved) impl->report.antitone = Outcome::Unknown;
  return SystemOfGerms(impl);
}

SystemOfGerms::Kind SystemOfGerms::kind() const { return impl_->kind; }
const BasePoint& SystemOfGerms::base() const { return impl_->base; }
std::optional<std::uint64_t> SystemOfGerms::size() const { return impl_->size(); }
std::optional<Index> SystemOfGerms::index_at(std::uint64_t n) const { return impl_->index_at(n); }
SetGerm SystemOfGerms::germ(const Index& i) const { return impl_->germ(i); }
bool SystemOfGerms::related(const Index& i, const Index& j) const { return impl_->related(i, j); }
std::optional<Index> SystemOfGerms::top() const { return impl_->top(); }
std::optional<std::vector<Index>> SystemOfGerms::window(const VarSet& dims, std::uint64_t limit) const {
  return impl_->window(dims, limit);
}
const ValidationReport& SystemOfGerms::validation() const { return impl_->report; }
json SystemOfGerms::to_json() const { return impl_->to_json(); }

SystemOfGerms SystemOfGerms::from_json(const json& j, Context& ctx) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") return zero(GeneratorStream::from_json(j.at("stream")));
  if (kind == "product") {
    Op op = j.at("op").get<std::string>() == "union" ? Op::Union : Op::Intersection;
    return product(op, from_json(j.at("left"), ctx), from_json(j.at("right"), ctx));
  }
  Field field = field_from_string(j.at("field").get<std::string>());
  BasePoint base = base_from_json(j.at("base"), field);
  if (kind == "point") return point(base);
  if (kind == "explicit") {
    std::vector<std::pair<Index, SetGerm>> elements;
    for (const auto& e : j.at("elements"))
      elements.emplace_back(e.at("label"), SetGerm::of(base, polys_from_json(e.at("gens"), field)));
    std::vector<std::pair<Index, Index>> relation;
    for (const auto& p : j.at("relation")) relation.emplace_back(p.at(0), p.at(1));
    return explicit_system(base, std::move(elements), std::move(relation), ctx);
  }
  if (kind == "chain") {
    std::vector<ChainPart> parts;
    for (const auto& p : j.at("parts")) {
      ChainPart part{parse_template(p.at("template").get<std::string>())};
      if (p.contains("from")) {
        part.ranged = true;
        part.from = p.at("from").get<std::uint64_t>();
        part.to = p.at("to").get<std::int64_t>();
      } else {
        part.at = p.at("at").get<std::int64_t>();
      }
      parts.push_back(std::move(part));
    }
    return chain(base, std::move(parts), j.at("start").get<std::uint64_t>(), j.at("gap").get<std::uint64_t>(), ctx);
  }
  throw Error(ErrorKind::InvalidSystem, "unknown system kind '" + kind + "'");
}

SystemOfGerms sys_intersection(const SystemOfGerms& a, const SystemOfGerms& b) {
  return SystemOfGerms::product(SystemOfGerms::Op::Intersection, a, b);
}

SystemOfGerms sys_union(const SystemOfGerms& a, const SystemOfGerms& b) {
  return SystemOfGerms::product(SystemOfGerms::Op::Union, a, b);
}

SystemOfGerms zero_system(const GeneratorStream& stream) { return SystemOfGerms::zero(stream); }

// ---------------------------------------------------------------- quantifiers

namespace {

// Sufficient syntactic test for Z(A) inside Z(T): every defining germ of T
// is zero or a multiple of a defining germ of A, or A is empty.
bool obviously_contained(const SetGerm& A, const SetGerm& T) {
  if (setgerm_is_empty(A)) return true;
  for (const auto& g : T.defining()) {
    if (g.poly().is_zero()) continue;
    bool divided = false;
    for (const auto& h : A.defining()) {
      if (h.poly().is_zero()) continue;
      GroebnerBasis single{{h.poly()}, default_order({g.poly(), h.poly()}), false};
      if (normal_form(g.poly(), single).is_zero()) {
        divided = true;
        break;
      }
    }
    if (!divided) return false;
  }
  return true;
}

struct Search {
  Outcome outcome = Outcome::Unknown;
  json witness = json::object();
};

// Some index a of A with A^a inside T.
Search exists_index(const SystemOfGerms& A, const SetGerm& T, Context& ctx) {
  Search out;
  if (auto top = A.top()) {
    ctx.used.enumeration += 1;
    Verdict c = setgerm_contains(A.germ(*top), T, ctx);
    out.outcome = c.outcome;
    if (c.proved())
      out.witness = {{"alpha", *top}, {"containment", c.to_json()}};
    else if (c.refuted())
      out.witness = {{"exhaustive", "top"}, {"refutations", json::array({{{"alpha", *top}, {"containment", c.to_json()}}})}};
    else
      out.witness = {{"reason", "containment unknown at the top index"}, {"alpha", *top}};
    return out;
  }

  std::uint64_t limit = ctx.limits.enumeration;
  std::vector<Index> seen;
  for (std::uint64_t n = 0; n < limit; ++n) {
    auto idx = A.index_at(n);
    if (!idx) break;
    seen.push_back(*idx);
    if (obviously_contained(A.germ(*idx), T)) {
      Verdict c = setgerm_contains(A.germ(*idx), T, ctx);
      if (c.proved()) {
        ctx.used.enumeration += seen.size();
        out.outcome = Outcome::Proved;
        out.witness = {{"alpha", *idx}, {"containment", c.to_json()}};
        return out;
      }
    }
  }
  bool exhausted = A.size() && seen.size() == *A.size();
  json refutations = json::array();
  bool all_refuted = true;
  for (const auto& idx : seen) {
    Verdict c = setgerm_contains(A.germ(idx), T, ctx);
    if (c.proved()) {
      ctx.used.enumeration += seen.size();
      out.outcome = Outcome::Proved;
      out.witness = {{"alpha", idx}, {"containment", c.to_json()}};
      return out;
    }
    if (!c.refuted()) all_refuted = false;
    if (exhausted && all_refuted) refutations.push_back({{"alpha", idx}, {"containment", c.to_json()}});
  }
  ctx.used.enumeration += seen.size();
  if (exhausted && all_refuted) {
    out.outcome = Outcome::Refuted;
    out.witness = {{"exhaustive", "all"}, {"refutations", refutations}};
  } else {
    out.witness = {{"reason", exhausted ? "containment unknown" : "enumeration budget"}, {"frontier", seen.size()}};
  }
  return out;
}

json window_json(const std::optional<VarSet>& window) { return window ? to_json(*window) : json(nullptr); }

}  // namespace

Verdict precedes(const SystemOfGerms& A, const SystemOfGerms& B, Context& ctx, const std::optional<VarSet>& window) {
  if (A.base() != B.base()) throw Error(ErrorKind::BaseMismatch, "systems at different base points");
  BudgetUse before = ctx.used;
  Verdict v;
  v.query = "precedes";
  v.input = {{"A", A.to_json()}, {"B", B.to_json()}, {"window", window_json(window)}};
  std::uint64_t limit = ctx.limits.enumeration;

  std::vector<Index> betas;
  bool complete = false;
  std::string reason;
  if (window) {
    if (auto w = B.window(*window, limit)) {
      betas = std::move(*w);
      complete = true;
    } else {
      reason = "window has too many indices";
    }
  } else if (B.size() && *B.size() <= limit) {
    for (std::uint64_t n = 0; n < *B.size(); ++n) betas.push_back(*B.index_at(n));
    complete = true;
  } else {
    for (std::uint64_t n = 0; n < limit; ++n) {
      auto idx = B.index_at(n);
      if (!idx) break;
      betas.push_back(*idx);
    }
    reason = "infinite index set";
  }
  ctx.used.enumeration += betas.size();

  json pairs = json::array();
  json unknown = json::array();
  for (const auto& beta : betas) {
    Search s = exists_index(A, B.germ(beta), ctx);
    if (s.outcome == Outcome::Refuted) {
      v.outcome = Outcome::Refuted;
      v.witness = {{"beta", beta}, {"search", s.witness}};
      v.consumed = ctx.used - before;
      return v;
    }
    if (s.outcome == Outcome::Proved)
      pairs.push_back({{"beta", beta}, {"alpha", s.witness["alpha"]}, {"containment", s.witness["containment"]}});
    else
      unknown.push_back({{"beta", beta}, {"search", s.witness}});
  }
  if (complete && unknown.empty()) {
    v.outcome = Outcome::Proved;
    v.witness = {{"pairs", pairs}};
  } else {
    v.outcome = Outcome::Unknown;
    v.witness = {{"reason", reason.empty() ? "some containment unknown" : reason},
                 {"frontier", betas.size()},
                 {"unknown", unknown}};
  }
  v.consumed = ctx.used - before;
  return v;
}

Verdict equiv(const SystemOfGerms& A, const SystemOfGerms& B, Context& ctx, const std::optional<VarSet>& window) {
  BudgetUse before = ctx.used;
  Verdict forward = precedes(A, B, ctx, window);
  Verdict backward = precedes(B, A, ctx, window);
  Verdict v;
  v.query = "equiv";
  v.input = {{"A", A.to_json()}, {"B", B.to_json()}, {"window", window_json(window)}};
  if (forward.refuted() || backward.refuted())
    v.outcome = Outcome::Refuted;
  else if (forward.proved() && backward.proved())
    v.outcome = Outcome::Proved;
  else
    v.outcome = Outcome::Unknown;
  v.witness = {{"forward", forward.to_json()}, {"backward", backward.to_json()}};
  v.consumed = ctx.used - before;
  return v;
}

Verdict is_point_multigerm(const GeneratorStream& stream, const VarSet& dims, Context& ctx) {
  if (dims.empty()) throw Error(ErrorKind::ScriptError, "dims must be nonempty");
  BudgetUse before = ctx.used;
  Verdict v;
  v.query = "pointgerm";
  v.input = {{"stream", stream.to_json()}, {"dims", to_json(dims)}};
  Search s = exists_index(zero_system(stream), SetGerm::point(stream.base(), dims), ctx);
  v.outcome = s.outcome;
  v.witness = s.witness;
  v.consumed = ctx.used - before;
  return v;
}

Verdict zero_ideal_member(const Germ& f, const SystemOfGerms& A, Context& ctx) {
  if (f.base() != A.base()) throw Error(ErrorKind::BaseMismatch, "germ and system base points differ");
  BudgetUse before = ctx.used;
  Verdict v;
  v.query = "zeromember";
  v.input = {{"f", print_canonical(f.poly())}, {"A", A.to_json()}};
  Search s = exists_index(A, SetGerm(f.base(), {f}), ctx);
  v.outcome = s.outcome;
  v.witness = s.witness;
  v.consumed = ctx.used - before;
  return v;
}

json NullstellensatzReport::to_json() const {
  const char* name = status == Status::Agree ? "agree" : status == Status::Disagree ? "disagree" : "consistent";
  return {{"query", "nullstellensatz"},
          {"status", name},
          {"zero_side", zero_side.to_json()},
          {"radical_side", radical_side.to_json()}};
}

NullstellensatzReport nullstellensatz_check(const GermIdeal& I, const Germ& f, Context& ctx) {
  NullstellensatzReport report;
  report.zero_side = zero_ideal_member(f, zero_system(GeneratorStream::finite(I)), ctx);
  if (I.field() == Field::Complex) {
    report.radical_side = local_radical_member_complex(I, f, ctx);
  } else {
    report.radical_side = real_radical_closure(I, {f}, {}, ctx).front();
    if (!report.radical_side.proved()) {
      Verdict r = refute_real_vanishing(I, f, std::nullopt, ctx);
      if (r.refuted()) report.radical_side = r;
    }
  }
  const Verdict& a = report.zero_side;
  const Verdict& b = report.radical_side;
  if (a.conclusive() && b.conclusive())
    report.status = a.outcome == b.outcome ? NullstellensatzReport::Status::Agree
                                           : NullstellensatzReport::Status::Disagree;
  else
    report.status = NullstellensatzReport::Status::Consistent;
  return report;
}

}  // namespace germcalc
