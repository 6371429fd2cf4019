// Runs the acceptance criteria and prints one PASS/FAIL line for each.
// Every conclusive verdict from criteria 1 to 6 is written to a JSON lines
// file that criterion 9 hands to `germcalc verify-witness`.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "systems.hpp"
#include "germcalc/errors.hpp"
#include "germcalc/serialize.hpp"
#include "germcalc/witness.hpp"

using namespace germcalc;
using germcalc::testing::random_explicit;
using germcalc::testing::random_forms;
using germcalc::testing::random_homogeneous;
using germcalc::testing::random_poly;

namespace {

const BasePoint kOrigin(Field::Real);
const BasePoint kOriginC(Field::Complex);
const char* kFamily = "x_{2k+1}^2 + (x_{2k+2} - x_{2k+3})^2";
const char* kCoordinates = "x_{k+1}";

std::vector<json> g_emitted;

void record(const Verdict& v) {
  if (v.conclusive()) g_emitted.push_back(v.to_json());
}

void record(const NullstellensatzReport& r) { g_emitted.push_back(r.to_json()); }

class Criterion {
 public:
  Criterion(int number, std::string name, double limit_seconds)
      : number_(number), name_(std::move(name)), limit_(limit_seconds), start_(std::chrono::steady_clock::now()) {}

  void check(bool condition, const std::string& what) {
    if (condition) return;
    if (failures_++ < 3) std::cerr << "  criterion " << number_ << ": " << what << '\n';
  }
  void note(std::string text) { notes_ = std::move(text); }

  bool finish() const {
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    bool in_time = limit_ <= 0 || seconds < limit_;
    bool ok = failures_ == 0 && in_time;
    std::printf("%s criterion %d: %s (%.2f s", ok ? "PASS" : "FAIL", number_, name_.c_str(), seconds);
    if (limit_ > 0) std::printf(" of %.0f s", limit_);
    std::printf(")%s%s%s\n", notes_.empty() ? "" : "; ", notes_.c_str(),
                failures_ ? ("; " + std::to_string(failures_) + " failed checks").c_str() : "");
    std::fflush(stdout);
    return ok;
  }

 private:
  int number_;
  std::string name_;
  double limit_;
  std::chrono::steady_clock::time_point start_;
  int failures_ = 0;
  std::string notes_;
};

VarSet range(VarIndex lo, VarIndex hi) {
  VarSet out;
  for (VarIndex t = lo; t <= hi; ++t) out.insert(t);
  return out;
}

GermIdeal prefix(int k) {
  GeneratorTemplate t = parse_template(kFamily);
  std::vector<Polynomial> ps;
  for (int j = 0; j < k; ++j) ps.push_back(t.instantiate(j));
  return GermIdeal::of(kOrigin, ps);
}

void walk(const json& j, const std::function<void(const json&)>& visit) {
  if (j.is_object()) {
    if (j.contains("query") && j.contains("outcome")) visit(j);
    for (const auto& [k, v] : j.items()) walk(v, visit);
  } else if (j.is_array()) {
    for (const auto& v : j) walk(v, visit);
  }
}

// ---------------------------------------------------------------------------

bool criterion1() {
  Criterion c(1, "coordinate stream is a point multigerm on every dims in {1..5}", 5);
  GeneratorStream coords = GeneratorStream::coordinates(kOrigin);
  Budgets budgets;
  budgets.enumeration = 32;
  int proved = 0;
  for (unsigned mask = 1; mask < 32; ++mask) {
    VarSet dims;
    json alpha = json::array();
    for (VarIndex t = 1; t <= 5; ++t)
      if (mask & (1u << (t - 1))) {
        dims.insert(t);
        alpha.push_back(t - 1);
      }
    Context ctx(budgets);
    Verdict v = is_point_multigerm(coords, dims, ctx);
    record(v);
    c.check(v.proved(), "dims " + to_json(dims).dump() + " gave " + to_string(v.outcome));
    c.check(v.witness.value("alpha", json()) == alpha, "alpha for dims " + to_json(dims).dump());
    c.check(v.consumed.enumeration <= 32, "enum budget exceeded");
    proved += v.proved();
  }
  c.note(std::to_string(proved) + "/31 nonempty dims Proved with enum budget 32");
  return c.finish();
}

bool criterion2() {
  Criterion c(2, "finite prefixes refuted by curves, templated family proved by closure", 30);
  for (int k = 1; k <= 4; ++k) {
    Context ctx;
    GeneratorStream s = GeneratorStream::finite(prefix(k));
    Verdict v = is_point_multigerm(s, range(1, static_cast<VarIndex>(2 * k + 1)), ctx);
    record(v);
    c.check(v.refuted(), "prefix k=" + std::to_string(k) + " gave " + to_string(v.outcome));
    if (!v.refuted()) continue;
    json expected = {{std::to_string(2 * k), "s"}, {std::to_string(2 * k + 1), "s"}};
    bool found = false;
    for (const auto& r : v.witness.at("refutations")) {
      if (r.at("alpha").size() != static_cast<std::size_t>(k)) continue;
      found = true;
      const json& curve = r.at("containment").at("witness").at("failing").at("witness").at("curve");
      c.check(curve == expected, "prefix k=" + std::to_string(k) + " curve " + curve.dump());
    }
    c.check(found, "no refutation of the full prefix for k=" + std::to_string(k));
  }
  GeneratorStream family = GeneratorStream::templated({parse_template(kFamily)}, kOrigin);
  for (VarIndex hi : {3u, 5u}) {
    Context ctx;
    Verdict v = is_point_multigerm(family, range(1, hi), ctx);
    record(v);
    c.check(v.proved(), "templated dims 1.." + std::to_string(hi) + " gave " + to_string(v.outcome));
    std::set<std::string> rules;
    walk(v.to_json(), [&](const json& n) {
      if (n.at("query") == "realclosure" && n.contains("witness") && n.at("witness").contains("steps"))
        for (const auto& step : n.at("witness").at("steps")) rules.insert(step.at("rule").get<std::string>());
    });
    for (const auto& r : rules) c.check(r == "R1" || r == "R2" || r == "R3", "unexpected rule " + r);
    c.check(rules.count("R3") == 1, "no R3 step in the closure derivation");
  }
  return c.finish();
}

struct Instance {
  std::vector<Polynomial> gens;
  std::vector<Polynomial> candidates;
};

std::vector<Instance> homogeneous_corpus() {
  std::mt19937 rng(314);
  std::vector<Instance> out;
  while (out.size() < 24) {
    Instance inst;
    int n = 1 + static_cast<int>(rng() % 2);
    for (int j = 0; j < n; ++j) {
      Polynomial g = random_homogeneous(rng, Field::Complex, 3, 1 + rng() % 3, 3);
      if (!g.is_zero()) inst.gens.push_back(g);
    }
    if (inst.gens.empty()) continue;
    Polynomial l = random_homogeneous(rng, Field::Complex, 3, 1, 2);
    inst.candidates = {inst.gens[0], l, random_homogeneous(rng, Field::Complex, 3, 2, 3),
                       inst.gens.back() * l};
    std::erase_if(inst.candidates, [](const Polynomial& p) { return p.is_zero(); });
    if (inst.candidates.size() >= 3) out.push_back(std::move(inst));
  }
  return out;
}

bool criterion3() {
  Criterion c(3, "complex zero-ideal, radical and Macaulay routes agree", 120);
  auto corpus = homogeneous_corpus();
  int pairs = 0, conclusive = 0, macaulay = 0;
  Polynomial one = Polynomial::constant(Field::Complex, 1);
  Polynomial u = Polynomial::variable(Field::Complex, 4);
  for (const auto& inst : corpus) {
    GermIdeal I = GermIdeal::of(kOriginC, inst.gens);
    for (const auto& f : inst.candidates) {
      ++pairs;
      Context ctx;
      NullstellensatzReport r = nullstellensatz_check(I, Germ(f, kOriginC), ctx);
      record(r);
      record(r.zero_side);
      record(r.radical_side);
      c.check(r.status != NullstellensatzReport::Status::Disagree, "disagreement on " + print_canonical(f));
      bool both = r.zero_side.conclusive() && r.radical_side.conclusive();
      conclusive += both;
      if (both) c.check(r.zero_side.outcome == r.radical_side.outcome, "routes differ on " + print_canonical(f));
      std::vector<Polynomial> rab = inst.gens;
      rab.push_back(one - u * f);
      Verdict mac = macaulay_membership_oracle(one, rab, 8);
      if (mac.proved()) {
        ++macaulay;
        c.check(r.radical_side.proved(), "Macaulay proves what radmem does not: " + print_canonical(f));
        c.check(!r.zero_side.refuted(), "Macaulay proves what the zero route refutes: " + print_canonical(f));
      }
    }
  }
  c.check(corpus.size() >= 20, "corpus too small");
  c.note(std::to_string(corpus.size()) + " ideals, " + std::to_string(pairs) + " pairs, " +
         std::to_string(conclusive) + " conclusive on both routes, " + std::to_string(macaulay) +
         " settled by Macaulay at bound 8");
  return c.finish();
}

bool criterion4() {
  Criterion c(4, "no real instance is both certified and refuted by a curve", 0);
  // Instances: every real closure and curve verdict emitted so far, plus a
  // random corpus of sums of squares.
  std::map<std::string, std::pair<GermIdeal, Germ>> instances;
  auto add = [&](const GermIdeal& I, const Germ& f) {
    std::string key = ideal_to_json(I).dump() + "|" + print_canonical(f.poly());
    instances.emplace(key, std::make_pair(I, f));
  };
  std::vector<json> snapshot = g_emitted;
  for (const auto& j : snapshot)
    walk(j, [&](const json& n) {
      const json& in = n.at("input");
      if (!in.is_object() || in.value("field", "") != "real") return;
      if (n.at("query") == "realclosure") {
        GermIdeal I = ideal_from_json(in);
        add(I, Germ(parse_poly(in.at("target").get<std::string>(), Field::Real), I.base()));
      } else if (n.at("query") == "refute" && n.at("outcome") == "Refuted") {
        GermIdeal I = ideal_from_json(in);
        const json& targets = in.at("targets");
        std::size_t which = n.at("witness").at("target").get<std::size_t>();
        add(I, Germ(parse_poly(targets.at(which).get<std::string>(), Field::Real), I.base()));
      }
    });
  std::mt19937 rng(41);
  for (int i = 0; i < 40; ++i) {
    Polynomial a = random_homogeneous(rng, Field::Real, 3, 1, 2);
    Polynomial b = random_homogeneous(rng, Field::Real, 3, 1, 2);
    std::vector<Polynomial> gens = {a * a + b * b};
    if (i % 2) gens.push_back(random_homogeneous(rng, Field::Real, 3, 2, 2));
    GermIdeal I = GermIdeal::of(kOrigin, gens);
    add(I, Germ(random_homogeneous(rng, Field::Real, 3, 1, 2), kOrigin));
    add(I, Germ(a, kOrigin));
    add(I, Germ(b, kOrigin));
  }
  for (int k = 1; k <= 4; ++k)
    for (VarIndex t = 1; t <= static_cast<VarIndex>(2 * k + 2); ++t)
      add(prefix(k), Germ(Polynomial::variable(Field::Real, t), kOrigin));

  int proved = 0, refuted = 0;
  WitnessVerifier verifier;
  for (const auto& [key, inst] : instances) {
    const auto& [I, f] = inst;
    Context ctx;
    Verdict p = real_radical_closure(I, {f}, {}, ctx).front();
    Verdict r = refute_real_vanishing(I, f, std::nullopt, ctx);
    bool p_ok = p.proved() && verifier.check(p.to_json()).ok;
    bool r_ok = r.refuted() && verifier.check(r.to_json()).ok;
    c.check(!(p_ok && r_ok), "both outcomes verified for " + key);
    proved += p_ok;
    refuted += r_ok;
  }
  c.check(proved > 0 && refuted > 0, "corpus does not exercise both routes");
  c.note(std::to_string(instances.size()) + " instances, " + std::to_string(proved) + " certified, " +
         std::to_string(refuted) + " refuted");
  return c.finish();
}

bool criterion5() {
  Criterion c(5, "lattice laws and preorder on 50 explicit systems", 120);
  std::mt19937 rng(2718);
  int laws = 0, proved_laws = 0, relations = 0, unknown = 0, unproved_transitive = 0;
  for (Field field : {Field::Real, Field::Complex}) {
    BasePoint x0(field);
    Context ctx;
    std::vector<SystemOfGerms> pool;
    for (int i = 0; i < 25; ++i) pool.push_back(random_explicit(rng, x0, ctx));
    SystemOfGerms full = germcalc::testing::full_system(x0, ctx);
    SystemOfGerms none = germcalc::testing::empty_system(x0, ctx);
    auto law = [&](const SystemOfGerms& l, const SystemOfGerms& r, const char* name) {
      Verdict v = equiv(l, r, ctx);
      record(v);
      ++laws;
      proved_laws += v.proved();
      c.check(v.proved(), std::string(name) + " gave " + to_string(v.outcome));
    };
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const SystemOfGerms& a = pool[i];
      const SystemOfGerms& b = pool[(i + 1) % pool.size()];
      const SystemOfGerms& d = pool[(i + 2) % pool.size()];
      law(sys_intersection(a, b), sys_intersection(b, a), "meet commutes");
      law(sys_union(a, b), sys_union(b, a), "join commutes");
      law(sys_intersection(sys_intersection(a, b), d), sys_intersection(a, sys_intersection(b, d)),
          "meet associates");
      law(sys_union(sys_union(a, b), d), sys_union(a, sys_union(b, d)), "join associates");
      law(sys_intersection(a, a), a, "meet idempotent");
      law(sys_union(a, a), a, "join idempotent");
      law(sys_intersection(a, full), a, "full is the meet identity");
      law(sys_union(a, none), a, "empty is the join identity");
      law(sys_intersection(a, sys_union(a, b)), a, "meet absorbs join");
      law(sys_union(a, sys_intersection(a, b)), a, "join absorbs meet");
    }
    std::size_t n = pool.size();
    std::vector<std::vector<Outcome>> rel(n, std::vector<Outcome>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Verdict v = precedes(pool[i], pool[j], ctx);
        record(v);
        rel[i][j] = v.outcome;
        unknown += !v.conclusive();
      }
    for (std::size_t i = 0; i < n; ++i) {
      c.check(rel[i][i] == Outcome::Proved, "reflexivity");
      for (std::size_t j = 0; j < n; ++j) {
        if (rel[i][j] != Outcome::Proved) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (rel[j][k] == Outcome::Proved) {
            ++relations;
            c.check(rel[i][k] != Outcome::Refuted, "transitivity refuted");
            unproved_transitive += rel[i][k] != Outcome::Proved;
          }
      }
    }
  }
  c.note(std::to_string(proved_laws) + "/" + std::to_string(laws) + " laws Proved, " + std::to_string(relations) +
         " composable pairs checked, " + std::to_string(unknown) + " of 1250 comparisons Unknown, " +
         std::to_string(unproved_transitive) + " transitive consequences not Proved");
  return c.finish();
}

bool criterion6() {
  Criterion c(6, "sum law on 20 random ideal pairs", 60);
  std::mt19937 rng(1618);
  int proved = 0;
  for (int i = 0; i < 20; ++i) {
    BasePoint x0(i % 2 ? Field::Complex : Field::Real);
    Context ctx;
    auto a = random_forms(rng, x0.field(), 1 + static_cast<int>(rng() % 2));
    auto b = random_forms(rng, x0.field(), 1 + static_cast<int>(rng() % 2));
    auto ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    SystemOfGerms sum = zero_system(GeneratorStream::finite(GermIdeal::of(x0, ab)));
    SystemOfGerms meet = sys_intersection(zero_system(GeneratorStream::finite(GermIdeal::of(x0, a))),
                                          zero_system(GeneratorStream::finite(GermIdeal::of(x0, b))));
    Verdict fwd = precedes(sum, meet, ctx), back = precedes(meet, sum, ctx);
    record(fwd);
    record(back);
    c.check(fwd.proved() && back.proved(), "pair " + std::to_string(i));
    proved += fwd.proved() + back.proved();
  }
  c.note(std::to_string(proved) + "/40 directions Proved");
  return c.finish();
}

bool criterion7() {
  Criterion c(7, "Groebner bases satisfy the criterion, are idempotent and order-independent", 0);
  int bases = 0, verdicts = 0;
  auto check_basis = [&](const std::vector<Polynomial>& gens, const TermOrder& order) {
    StepBudget budget(100000);
    GroebnerBasis G = buchberger(gens, order, budget);
    ++bases;
    c.check(satisfies_buchberger_criterion(G), "S-polynomial check");
    StepBudget again(100000);
    c.check(buchberger(G.generators, G.order, again).generators == G.generators, "idempotence");
    for (const auto& g : gens) c.check(normal_form(g, G).is_zero(), "generator does not reduce to zero");
  };
  for (const auto& inst : homogeneous_corpus()) {
    check_basis(inst.gens, default_order(inst.gens));
    for (const auto& f : inst.candidates) {
      std::optional<Outcome> first;
      for (auto vars : {std::vector<VarIndex>{1, 2, 3}, {3, 1, 2}, {2, 3, 1}}) {
        StepBudget budget(100000);
        Verdict v = is_member(f, inst.gens, TermOrder::grevlex(vars), budget);
        ++verdicts;
        c.check(v.conclusive(), "membership inconclusive");
        if (!first) first = v.outcome;
        c.check(v.outcome == *first, "membership depends on the order: " + print_canonical(f));
      }
    }
  }
  // Bases that appear inside emitted witnesses.
  for (const auto& j : g_emitted)
    walk(j, [&](const json& n) {
      if (n.at("query") != "member" || !n.at("witness").contains("basis")) return;
      const json& in = n.at("input");
      Field field = field_from_string(in.at("field").get<std::string>());
      GroebnerBasis G{polys_from_json(n.at("witness").at("basis"), field), TermOrder::from_json(in.at("order")),
                      true};
      ++bases;
      c.check(satisfies_buchberger_criterion(G), "emitted basis fails the S-polynomial check");
    });
  c.note(std::to_string(bases) + " bases, " + std::to_string(verdicts) + " membership verdicts");
  return c.finish();
}

bool criterion8() {
  Criterion c(8, "parser round trip and family instantiation", 0);
  std::mt19937 rng(8);
  for (int i = 0; i < 100; ++i) {
    Field field = i % 4 == 0 ? Field::Complex : Field::Real;
    Polynomial p = random_poly(rng, field, 9, 4, 6);
    std::string text = print_canonical(p);
    Polynomial q = parse_poly(text, field);
    c.check(q == p && print_canonical(q) == text, "round trip of " + text);
  }
  for (const char* source : {kFamily, kCoordinates}) {
    GeneratorTemplate t = parse_template(source);
    std::string text = print_template(t);
    GeneratorTemplate u = parse_template(text);
    c.check(text == source && print_template(u) == text, std::string("template round trip of ") + source);
    c.check(u.subscripts() == t.subscripts(), "template subscripts");
    for (std::uint64_t k = 0; k < 4; ++k) c.check(u.instantiate(k) == t.instantiate(k), "template instantiation");
  }
  GeneratorTemplate family = parse_template(kFamily);
  c.check(print_canonical(family.instantiate(0)) == print_canonical(parse_poly("x_1^2+(x_2-x_3)^2", Field::Real)),
          "k = 0 generator");
  c.check(family.instantiate(0) == parse_poly("x_1^2+(x_2-x_3)^2", Field::Real), "k = 0 generator");
  c.check(family.instantiate(1) == parse_poly("x_3^2+(x_4-x_5)^2", Field::Real), "k = 1 generator");
  c.check(parse_template(kCoordinates).instantiate(4) == Polynomial::variable(Field::Real, 5), "coordinate family");
  return c.finish();
}

bool criterion9(const std::string& path) {
  Criterion c(9, "every emitted verdict re-verifies under germcalc verify-witness", 0);
  {
    std::ofstream out(path);
    for (const auto& j : g_emitted) out << j.dump() << '\n';
  }
  std::string report = path + ".report";
  std::string command = std::string("\"") + GERMCALC_CLI + "\" verify-witness \"" + path + "\" > \"" + report + "\" 2>&1";
  int status = std::system(command.c_str());
  c.check(status == 0, "verify-witness exited with status " + std::to_string(status));
  std::ifstream in(report);
  std::size_t ok = 0, bad = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line.front() != '{') continue;
    json j = json::parse(line);
    (j.value("ok", false) ? ok : bad)++;
  }
  c.check(bad == 0, std::to_string(bad) + " witnesses rejected");
  c.check(ok > 0, "nothing was checked");
  c.note(std::to_string(g_emitted.size()) + " verdict lines, " + std::to_string(ok) + " verified, " +
         std::to_string(bad) + " rejected");
  return c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  std::string path = argc > 1 ? argv[1] : "acceptance_verdicts.jsonl";
  bool all = true;
  try {
    for (auto* run : {criterion1, criterion2, criterion3, criterion4, criterion5, criterion6, criterion7, criterion8})
      all = run() && all;
    all = criterion9(path) && all;
  } catch (const std::exception& e) {
    std::printf("FAIL unexpected exception: %s\n", e.what());
    return 1;
  }
  return all ? 0 : 1;
}
