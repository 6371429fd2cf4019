#include <gtest/gtest.h>

#include <random>

#include "systems.hpp"
#include "germcalc/errors.hpp"
#include "germcalc/serialize.hpp"

using namespace germcalc;
using germcalc::testing::empty_system;
using germcalc::testing::full_system;
using germcalc::testing::random_explicit;

namespace {

const BasePoint kOrigin(Field::Real);
const BasePoint kOriginC(Field::Complex);

Polynomial P(const char* text, Field f = Field::Real) { return parse_poly(text, f); }

SetGerm Z(std::initializer_list<const char*> gens, const BasePoint& x0 = kOrigin) {
  std::vector<Polynomial> ps;
  for (const char* g : gens) ps.push_back(P(g, x0.field()));
  return SetGerm::of(x0, ps);
}

GermIdeal I(std::initializer_list<const char*> gens, const BasePoint& x0 = kOrigin) {
  std::vector<Polynomial> ps;
  for (const char* g : gens) ps.push_back(P(g, x0.field()));
  return GermIdeal::of(x0, ps);
}

const char* kFamily = "x_{2k+1}^2 + (x_{2k+2} - x_{2k+3})^2";

GermIdeal family_prefix(int k) {
  GeneratorTemplate t = parse_template(kFamily);
  std::vector<Polynomial> ps;
  for (int j = 0; j < k; ++j) ps.push_back(t.instantiate(j));
  return GermIdeal::of(kOrigin, ps);
}

VarSet range(VarIndex lo, VarIndex hi) {
  VarSet out;
  for (VarIndex t = lo; t <= hi; ++t) out.insert(t);
  return out;
}

// A^n = Z(x_1, ..., x_{n-1}, x_n - x_{n+1}) for n >= 1.
SystemOfGerms staircase(const BasePoint& x0, std::uint64_t gap, Context& ctx) {
  ChainPart zeros{parse_template("x_{k+1}")};
  zeros.ranged = true;
  zeros.from = 0;
  zeros.to = -2;
  ChainPart diagonal{parse_template("x_{k+1} - x_{k+2}")};
  diagonal.at = -1;
  return SystemOfGerms::chain(x0, {zeros, diagonal}, 1, gap, ctx);
}

SystemOfGerms explicit_of(const std::vector<SetGerm>& germs, std::vector<std::pair<int, int>> rel, Context& ctx) {
  std::vector<std::pair<Index, SetGerm>> elements;
  for (std::size_t i = 0; i < germs.size(); ++i) elements.emplace_back(Index(i), germs[i]);
  std::vector<std::pair<Index, Index>> relation;
  for (auto [a, b] : rel) relation.emplace_back(Index(a), Index(b));
  return SystemOfGerms::explicit_system(germs.front().base(), elements, relation, ctx);
}

std::vector<std::string> texts(const SetGerm& g) {
  std::vector<std::string> out;
  for (const auto& p : g.polys()) out.push_back(print_canonical(p));
  return out;
}

}  // namespace

TEST(SetGerms, Emptiness) {
  EXPECT_TRUE(setgerm_is_empty(Z({"x_1 - 1"})));
  EXPECT_FALSE(setgerm_is_empty(Z({"x_1"})));
  EXPECT_FALSE(setgerm_is_empty(SetGerm(kOrigin, {})));
}

TEST(SetGerms, Containment) {
  Context ctx;
  EXPECT_EQ(setgerm_contains(Z({"x_1"}, kOriginC), Z({"x_1^2"}, kOriginC), ctx).outcome, Outcome::Proved);
  Verdict r = setgerm_contains(Z({"x_1*x_2"}, kOriginC), Z({"x_1"}, kOriginC), ctx);
  EXPECT_EQ(r.outcome, Outcome::Refuted);
  EXPECT_EQ(r.witness["failing"]["query"], "radmem");
  Verdict cert = setgerm_contains(Z({"x_1^2 + (x_2 - x_3)^2"}), Z({"x_1"}), ctx);
  EXPECT_EQ(cert.outcome, Outcome::Proved);
  EXPECT_EQ(cert.witness["members"][0]["query"], "realclosure");
  Verdict curve = setgerm_contains(Z({"x_1^2 + (x_2 - x_3)^2"}), Z({"x_2"}), ctx);
  EXPECT_EQ(curve.outcome, Outcome::Refuted);
  EXPECT_EQ(setgerm_contains(Z({"x_1 - 1"}), Z({"x_2"}), ctx).witness["reason"], "empty");
  EXPECT_EQ(setgerm_contains(Z({"x_1"}), SetGerm(kOrigin, {}), ctx).outcome, Outcome::Proved);
}

TEST(SetGerms, UnionAndIntersection) {
  Context ctx;
  SetGerm a = Z({"x_1"}, kOriginC), b = Z({"x_2"}, kOriginC);
  EXPECT_EQ(texts(setgerm_intersection(a, b)), (std::vector<std::string>{"x_1", "x_2"}));
  SetGerm u = setgerm_union(a, b);
  EXPECT_EQ(texts(u), (std::vector<std::string>{"x_1*x_2"}));
  SetGerm ref = Z({"x_1*x_2"}, kOriginC);
  EXPECT_TRUE(setgerm_contains(u, ref, ctx).proved());
  EXPECT_TRUE(setgerm_contains(ref, u, ctx).proved());
  EXPECT_TRUE(setgerm_contains(a, u, ctx).proved());
  EXPECT_TRUE(setgerm_contains(b, u, ctx).proved());

  SetGerm full(kOriginC, {});
  SetGerm meet = setgerm_intersection(a, full);
  EXPECT_TRUE(setgerm_contains(meet, a, ctx).proved());
  EXPECT_TRUE(setgerm_contains(a, meet, ctx).proved());
  EXPECT_TRUE(setgerm_union(a, full).defining().empty());

  try {
    setgerm_union(a, Z({"x_1"}, BasePoint(Field::Complex, {{1, Scalar(Field::Complex, 1)}})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BaseMismatch);
  }
}

TEST(FiniteSubsets, CanonicalOrder) {
  std::vector<std::vector<std::uint64_t>> head = {{0}, {1}, {0, 1}, {2}, {0, 2}, {1, 2}, {0, 1, 2}, {3}};
  for (std::size_t n = 0; n < head.size(); ++n) EXPECT_EQ(nth_finite_subset(n), head[n]);
  for (std::uint64_t m = 1; m <= 8; ++m) {
    std::set<std::vector<std::uint64_t>> seen;
    std::uint64_t total = (std::uint64_t{1} << m) - 1;
    for (std::uint64_t n = 0; n < total; ++n) {
      auto s = nth_finite_subset(n);
      ASSERT_LT(s.back(), m);
      ASSERT_TRUE(std::is_sorted(s.begin(), s.end()));
      if (n > 0) {
        auto prev = nth_finite_subset(n - 1);
        ASSERT_TRUE(prev.back() < s.back() || (prev.back() == s.back() && prev.size() <= s.size()));
      }
      seen.insert(s);
    }
    EXPECT_EQ(seen.size(), total);
  }
  EXPECT_EQ(nth_finite_subset((std::uint64_t{1} << 40) - 1), std::vector<std::uint64_t>{40});
}

TEST(Systems, ExplicitValidation) {
  Context ctx;
  SystemOfGerms s = explicit_of({Z({"x_1"}), Z({"x_1", "x_2"})}, {{0, 1}, {1, 1}}, ctx);
  EXPECT_EQ(s.validation().antitone, Outcome::Proved);
  EXPECT_EQ(s.top(), Index(1));
  EXPECT_TRUE(s.related(Index(0), Index(1)));
  EXPECT_FALSE(s.related(Index(1), Index(0)));

  auto invalid = [&](std::vector<SetGerm> germs, std::vector<std::pair<int, int>> rel) {
    try {
      explicit_of(germs, rel, ctx);
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidSystem);
    }
  };
  invalid({Z({"x_1"}), Z({"x_2"})}, {{0, 0}, {1, 1}});
  invalid({Z({"x_1", "x_2"}), Z({"x_1"})}, {{0, 1}, {1, 1}});
  invalid({Z({"x_1"})}, {{0, 3}});

  SystemOfGerms open = explicit_of({Z({"x_2"}), Z({"x_1^2 + x_2^4"})}, {{0, 1}, {1, 1}}, ctx);
  EXPECT_EQ(open.validation().antitone, Outcome::Proved);
}

TEST(Systems, TransitiveClosure) {
  Context ctx;
  SystemOfGerms s =
      explicit_of({Z({"x_1"}, kOriginC), Z({"x_1", "x_2"}, kOriginC), Z({"x_1", "x_2", "x_3"}, kOriginC)},
                  {{0, 1}, {1, 2}, {2, 2}}, ctx);
  EXPECT_TRUE(s.related(Index(0), Index(2)));
  EXPECT_EQ(s.top(), Index(2));
}

TEST(Systems, ZeroSystems) {
  Context ctx;
  SystemOfGerms one = zero_system(GeneratorStream::finite(I({"x_1"})));
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(texts(one.germ(*one.index_at(0))), std::vector<std::string>{"x_1"});

  SystemOfGerms lazy = zero_system(GeneratorStream::templated({parse_template(kFamily)}, kOrigin));
  EXPECT_FALSE(lazy.size());
  EXPECT_FALSE(lazy.top());
  EXPECT_EQ(texts(lazy.germ(Index::array({0}))), std::vector<std::string>{print_canonical(P("x_1^2 + (x_2 - x_3)^2"))});

  SystemOfGerms zero = zero_system(GeneratorStream::finite(GermIdeal(kOrigin)));
  EXPECT_EQ(zero.size(), 1u);
  EXPECT_TRUE(zero.germ(*zero.top()).defining().empty());

  SystemOfGerms three = zero_system(GeneratorStream::finite(I({"x_1", "x_2", "x_3"})));
  EXPECT_EQ(three.size(), 7u);
  EXPECT_EQ(three.top(), Index::array({0, 1, 2}));
  EXPECT_FALSE(three.index_at(7));
  try {
    three.germ(Index::array({3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidSystem);
  }
}

TEST(Systems, Windows) {
  Context ctx;
  SystemOfGerms coords = zero_system(GeneratorStream::coordinates(kOrigin));
  auto w = coords.window({2, 4}, 64);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, (std::vector<Index>{Index::array({1}), Index::array({3}), Index::array({1, 3})}));
  EXPECT_FALSE(coords.window(range(1, 7), 64));

  SystemOfGerms fam = zero_system(GeneratorStream::templated({parse_template(kFamily)}, kOrigin));
  auto fw = fam.window(range(1, 5), 64);
  ASSERT_TRUE(fw);
  EXPECT_EQ(fw->size(), 3u);

  SystemOfGerms stairs = staircase(kOrigin, 2, ctx);
  auto sw = stairs.window(range(1, 5), 64);
  ASSERT_TRUE(sw);
  EXPECT_EQ(*sw, (std::vector<Index>{Index(1), Index(2), Index(3), Index(4)}));
  EXPECT_EQ(SystemOfGerms::point(kOrigin).window(range(1, 3), 64)->size(), 7u);
}

TEST(Systems, JsonRoundTrip) {
  Context ctx;
  std::vector<SystemOfGerms> systems = {
      explicit_of({Z({"x_1"}), Z({"x_1", "x_2"})}, {{0, 1}, {1, 1}}, ctx),
      zero_system(GeneratorStream::templated({parse_template(kFamily)}, kOrigin)),
      SystemOfGerms::point(kOrigin),
      staircase(kOrigin, 2, ctx),
  };
  systems.push_back(sys_union(systems[0], systems[1]));
  for (const auto& s : systems) {
    json j = s.to_json();
    EXPECT_EQ(SystemOfGerms::from_json(j, ctx).to_json(), j);
  }
}

TEST(Precedes, Examples) {
  Context ctx;
  SystemOfGerms proper = explicit_of({Z({"x_1*x_2"}), Z({"x_1*x_2", "x_3"}), Z({"x_1^2 + x_2^3", "x_3", "x_2"})},
                                     {{0, 1}, {1, 2}, {2, 2}}, ctx);
  Verdict v = precedes(SystemOfGerms::point(kOrigin), proper, ctx);
  EXPECT_EQ(v.outcome, Outcome::Proved);
  EXPECT_EQ(v.witness["pairs"].size(), 3u);
  EXPECT_EQ(precedes(proper, proper, ctx).outcome, Outcome::Proved);

  SystemOfGerms coords = zero_system(GeneratorStream::coordinates(kOrigin));
  for (VarIndex n = 1; n <= 4; ++n)
    EXPECT_EQ(precedes(coords, SystemOfGerms::point(kOrigin), ctx, range(1, n)).outcome, Outcome::Proved) << n;
  EXPECT_EQ(precedes(coords, SystemOfGerms::point(kOrigin), ctx).outcome, Outcome::Unknown);
}

TEST(Precedes, RefutedWithoutWindow) {
  Context ctx;
  SystemOfGerms a = SystemOfGerms::constant(Z({"x_1"}, kOriginC), ctx);
  SystemOfGerms b = SystemOfGerms::constant(Z({"x_1", "x_2"}, kOriginC), ctx);
  EXPECT_EQ(precedes(b, a, ctx).outcome, Outcome::Proved);
  Verdict r = precedes(a, b, ctx);
  EXPECT_EQ(r.outcome, Outcome::Refuted);
  EXPECT_EQ(r.witness["search"]["exhaustive"], "top");
}

TEST(Equiv, StaircaseAgainstPointSystem) {
  for (Field field : {Field::Real, Field::Complex}) {
    BasePoint x0(field);
    Context ctx;
    SystemOfGerms stairs = staircase(x0, 2, ctx);
    EXPECT_EQ(stairs.validation().antitone, Outcome::Proved);
    Verdict v = equiv(stairs, SystemOfGerms::point(x0), ctx, range(1, 5));
    EXPECT_EQ(v.outcome, Outcome::Proved);
    for (const auto& pair : v.witness["forward"]["witness"]["pairs"]) {
      std::uint64_t biggest = pair["beta"].back().get<std::uint64_t>();
      EXPECT_EQ(pair["alpha"], Index(biggest + 1)) << pair.dump();
    }
    // No element of the chain is a point cylinder.
    for (std::uint64_t n = 1; n <= 4; ++n) {
      SetGerm an = stairs.germ(Index(n));
      for (VarIndex top = 1; top <= 5; ++top) {
        SetGerm cyl = SetGerm::point(x0, range(1, top));
        bool same = setgerm_contains(an, cyl, ctx).proved() && setgerm_contains(cyl, an, ctx).proved();
        EXPECT_FALSE(same) << n << " " << top;
      }
    }
  }
}

TEST(Equiv, StaircaseGapOneIsNotAntitone) {
  for (Field field : {Field::Real, Field::Complex}) {
    Context ctx;
    try {
      staircase(BasePoint(field), 1, ctx);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidSystem);
    }
  }
}

TEST(Equiv, Examples) {
  Context ctx;
  SystemOfGerms a = SystemOfGerms::constant(Z({"x_1"}, kOriginC), ctx);
  SystemOfGerms b = SystemOfGerms::constant(Z({"x_1^2"}, kOriginC), ctx);
  EXPECT_EQ(equiv(a, a, ctx).outcome, Outcome::Proved);
  EXPECT_EQ(equiv(a, b, ctx).outcome, Outcome::Proved);
  SystemOfGerms c = SystemOfGerms::constant(Z({"x_1", "x_2"}, kOriginC), ctx);
  EXPECT_EQ(equiv(a, c, ctx).outcome, Outcome::Refuted);
}

TEST(PointGerm, CoordinateStream) {
  Context ctx;
  Verdict v = is_point_multigerm(GeneratorStream::coordinates(kOrigin), {1, 2, 3}, ctx);
  ASSERT_EQ(v.outcome, Outcome::Proved);
  EXPECT_EQ(v.witness["alpha"], Index::array({0, 1, 2}));
  Verdict sparse = is_point_multigerm(GeneratorStream::coordinates(kOrigin), {2, 5}, ctx);
  ASSERT_EQ(sparse.outcome, Outcome::Proved);
  EXPECT_EQ(sparse.witness["alpha"], Index::array({1, 4}));
}

TEST(PointGerm, FinitePrefixesRefutedByCurve) {
  for (int k = 1; k <= 4; ++k) {
    Context ctx;
    Verdict v = is_point_multigerm(GeneratorStream::finite(family_prefix(k)), range(1, 2 * k + 1), ctx);
    ASSERT_EQ(v.outcome, Outcome::Refuted) << k;
    const json& failing = v.witness["refutations"][0]["containment"]["witness"]["failing"];
    json expect = {{std::to_string(2 * k), "s"}, {std::to_string(2 * k + 1), "s"}};
    EXPECT_EQ(failing["witness"]["curve"], expect) << failing.dump();
  }
}

TEST(PointGerm, TemplatedStreamProved) {
  GeneratorStream fam = GeneratorStream::templated({parse_template(kFamily)}, kOrigin);
  Context ctx;
  Verdict three = is_point_multigerm(fam, range(1, 3), ctx);
  ASSERT_EQ(three.outcome, Outcome::Proved);
  EXPECT_EQ(three.witness["alpha"], Index::array({0, 1}));
  std::set<std::string> rules;
  for (const auto& m : three.witness["containment"]["witness"]["members"])
    for (const auto& step : m["witness"]["steps"]) rules.insert(step["rule"].get<std::string>());
  EXPECT_TRUE(rules.count("R2"));
  EXPECT_TRUE(rules.count("R3"));
  Verdict five = is_point_multigerm(fam, range(1, 5), ctx);
  ASSERT_EQ(five.outcome, Outcome::Proved);
  EXPECT_EQ(five.witness["alpha"], Index::array({0, 1, 2}));
}

TEST(ZeroIdeal, Examples) {
  Context ctx;
  auto zc = [](std::initializer_list<const char*> g) { return zero_system(GeneratorStream::finite(I(g, kOriginC))); };
  EXPECT_EQ(zero_ideal_member(Germ(P("x_1", Field::Complex), kOriginC), zc({"x_1^2"}), ctx).outcome,
            Outcome::Proved);
  EXPECT_EQ(zero_ideal_member(Germ(P("x_1", Field::Complex), kOriginC), zc({"x_1*x_2"}), ctx).outcome,
            Outcome::Refuted);
  for (const BasePoint& x0 : {kOrigin, kOriginC}) {
    SystemOfGerms proper = SystemOfGerms::constant(Z({"x_1", "x_2^2"}, x0), ctx);
    EXPECT_EQ(zero_ideal_member(Germ(Polynomial::constant(x0.field(), 1), x0), proper, ctx).outcome,
              Outcome::Refuted);
  }
}

TEST(Nullstellensatz, Examples) {
  Context ctx;
  auto c = nullstellensatz_check(I({"x_1^2"}, kOriginC), Germ(P("x_1", Field::Complex), kOriginC), ctx);
  EXPECT_EQ(c.status, NullstellensatzReport::Status::Agree);
  EXPECT_TRUE(c.zero_side.proved());
  auto r = nullstellensatz_check(I({"x_1^2 + (x_2 - x_3)^2"}), Germ(P("x_2"), kOrigin), ctx);
  EXPECT_NE(r.status, NullstellensatzReport::Status::Disagree);
  EXPECT_TRUE(r.zero_side.refuted());
  for (const BasePoint& x0 : {kOrigin, kOriginC}) {
    auto t = nullstellensatz_check(GermIdeal::of(x0, {Polynomial::variable(x0.field(), 1)}),
                                   Germ(Polynomial::variable(x0.field(), 1), x0), ctx);
    EXPECT_EQ(t.status, NullstellensatzReport::Status::Agree);
    EXPECT_TRUE(t.zero_side.proved() && t.radical_side.proved());
  }
}

TEST(Lattice, LawsOnRandomSystems) {
  std::mt19937 rng(7);
  for (int i = 0; i < 12; ++i) {
    BasePoint x0(i % 2 ? Field::Complex : Field::Real);
    Context ctx;
    SystemOfGerms a = random_explicit(rng, x0, ctx), b = random_explicit(rng, x0, ctx),
                   c = random_explicit(rng, x0, ctx);
    SystemOfGerms full = full_system(x0, ctx), none = empty_system(x0, ctx), pt = SystemOfGerms::point(x0);
    auto expect_equiv = [&](const SystemOfGerms& l, const SystemOfGerms& r, const char* law,
                            std::optional<VarSet> w = std::nullopt) {
      Verdict v = equiv(l, r, ctx, w);
      EXPECT_EQ(v.outcome, Outcome::Proved) << law << " " << l.to_json().dump() << " vs " << r.to_json().dump();
    };
    expect_equiv(sys_intersection(a, b), sys_intersection(b, a), "meet commutes");
    expect_equiv(sys_union(a, b), sys_union(b, a), "join commutes");
    expect_equiv(sys_intersection(sys_intersection(a, b), c), sys_intersection(a, sys_intersection(b, c)),
                 "meet associates");
    expect_equiv(sys_union(sys_union(a, b), c), sys_union(a, sys_union(b, c)), "join associates");
    expect_equiv(sys_intersection(a, a), a, "meet idempotent");
    expect_equiv(sys_union(a, a), a, "join idempotent");
    expect_equiv(sys_intersection(a, full), a, "meet identity");
    expect_equiv(sys_union(a, none), a, "join identity");
    expect_equiv(sys_intersection(a, none), none, "meet zero");
    expect_equiv(sys_union(a, full), full, "join unit");
    expect_equiv(sys_intersection(a, pt), pt, "point absorption", range(1, 3));
  }
}

TEST(Preorder, ReflexiveAndTransitive) {
  std::mt19937 rng(11);
  Context ctx;
  std::vector<SystemOfGerms> pool;
  for (int i = 0; i < 6; ++i) pool.push_back(random_explicit(rng, kOriginC, ctx));
  for (int i = 0; i < 3; ++i) pool.push_back(sys_intersection(pool[i], pool[i + 3]));
  std::vector<std::vector<Outcome>> rel(pool.size(), std::vector<Outcome>(pool.size()));
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j) rel[i][j] = precedes(pool[i], pool[j], ctx).outcome;
  int chains = 0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    EXPECT_EQ(rel[i][i], Outcome::Proved);
    for (std::size_t j = 0; j < pool.size(); ++j)
      for (std::size_t k = 0; k < pool.size(); ++k)
        if (rel[i][j] == Outcome::Proved && rel[j][k] == Outcome::Proved) {
          EXPECT_EQ(rel[i][k], Outcome::Proved) << i << " " << j << " " << k;
          chains += i != j && j != k;
        }
  }
  EXPECT_GT(chains, 0);
}

TEST(ZeroSystems, Antitone) {
  std::mt19937 rng(5);
  for (int i = 0; i < 10; ++i) {
    BasePoint x0(i % 2 ? Field::Complex : Field::Real);
    Context ctx;
    auto gens = germcalc::testing::random_forms(rng, x0.field(), 3);
    std::vector<Polynomial> sub;
    for (int j = 0; j < 2; ++j) {
      Polynomial comb(x0.field());
      for (const auto& g : gens) comb = comb + germcalc::testing::random_poly(rng, x0.field(), 3, 1, 2) * g;
      sub.push_back(comb);
    }
    SystemOfGerms zi = zero_system(GeneratorStream::finite(GermIdeal::of(x0, gens)));
    SystemOfGerms zj = zero_system(GeneratorStream::finite(GermIdeal::of(x0, sub)));
    EXPECT_EQ(precedes(zi, zj, ctx).outcome, Outcome::Proved) << i;
  }
}

TEST(ZeroSystems, SumLaw) {
  std::mt19937 rng(9);
  for (int i = 0; i < 8; ++i) {
    BasePoint x0(i % 2 ? Field::Complex : Field::Real);
    Context ctx;
    auto a = germcalc::testing::random_forms(rng, x0.field(), 1 + static_cast<int>(rng() % 2));
    auto b = germcalc::testing::random_forms(rng, x0.field(), 1 + static_cast<int>(rng() % 2));
    auto ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    SystemOfGerms sum = zero_system(GeneratorStream::finite(GermIdeal::of(x0, ab)));
    SystemOfGerms meet = sys_intersection(zero_system(GeneratorStream::finite(GermIdeal::of(x0, a))),
                                          zero_system(GeneratorStream::finite(GermIdeal::of(x0, b))));
    EXPECT_EQ(precedes(sum, meet, ctx).outcome, Outcome::Proved);
    EXPECT_EQ(precedes(meet, sum, ctx).outcome, Outcome::Proved);
  }
}

TEST(ZeroSystems, RadicalStability) {
  std::mt19937 rng(13);
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    Context ctx;
    Polynomial p = germcalc::testing::random_poly(rng, Field::Complex, 3, 2, 2, false);
    Polynomial q = germcalc::testing::random_poly(rng, Field::Complex, 3, 2, 2, false);
    GermIdeal ideal = GermIdeal::of(kOriginC, {p * p, p * q});
    Polynomial f = (i % 3 == 0) ? q : p;
    if (!local_radical_member_complex(ideal, Germ(f, kOriginC), ctx).proved()) continue;
    ++checked;
    SystemOfGerms z = zero_system(GeneratorStream::finite(ideal));
    SystemOfGerms zf = zero_system(GeneratorStream::finite(ideal.with({f})));
    EXPECT_EQ(equiv(z, zf, ctx).outcome, Outcome::Proved) << print_canonical(f);
  }
  EXPECT_GE(checked, 10);
}

TEST(PointSystems, ExactCylindersEquivalent) {
  for (Field field : {Field::Real, Field::Complex}) {
    BasePoint x0(field);
    Context ctx;
    std::vector<std::pair<Index, SetGerm>> elements;
    std::vector<std::pair<Index, Index>> relation;
    std::vector<VarSet> sets;
    for (std::uint64_t n = 0; n < 7; ++n) {
      VarSet s;
      for (auto p : nth_finite_subset(n)) s.insert(static_cast<VarIndex>(p + 1));
      sets.push_back(s);
      elements.emplace_back(Index(n), SetGerm::point(x0, s));
    }
    elements.emplace_back(Index("extra"), SetGerm::of(x0, {parse_poly("x_1*x_2 - x_3^2", field)}));
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (std::size_t j = 0; j < sets.size(); ++j)
        if (std::includes(sets[j].begin(), sets[j].end(), sets[i].begin(), sets[i].end()))
          relation.emplace_back(Index(i), Index(j));
    }
    relation.emplace_back(Index("extra"), Index(6));
    SystemOfGerms sys = SystemOfGerms::explicit_system(x0, elements, relation, ctx);
    EXPECT_EQ(equiv(sys, SystemOfGerms::point(x0), ctx, range(1, 3)).outcome, Outcome::Proved);
  }
}

TEST(Coherence, EquivalentRepresentativesAgree) {
  std::mt19937 rng(17);
  for (int i = 0; i < 8; ++i) {
    Context ctx;
    SystemOfGerms a = random_explicit(rng, kOriginC, ctx), b = random_explicit(rng, kOriginC, ctx),
                   c = random_explicit(rng, kOriginC, ctx);
    std::vector<SystemOfGerms> reps = {sys_intersection(a, b), sys_intersection(b, a),
                                       sys_intersection(sys_intersection(a, b), sys_intersection(a, b))};
    std::set<Outcome> seen;
    for (const auto& r : reps) {
      Outcome o = precedes(r, c, ctx).outcome;
      if (o != Outcome::Unknown) seen.insert(o);
    }
    EXPECT_LE(seen.size(), 1u);
  }
}
