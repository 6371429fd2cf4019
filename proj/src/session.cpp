#include "germcalc/session.hpp"

#include <iostream>
#include <regex>
#include <sstream>

#include "germcalc/errors.hpp"
#include "germcalc/multigerm.hpp"
#include "germcalc/serialize.hpp"

namespace germcalc {

namespace {

[[noreturn]] void script_error(std::size_t line, const std::string& message) {
  throw Error(ErrorKind::ScriptError, "line " + std::to_string(line) + ": " + message);
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

// Pieces of s between top-level separators; brackets of all three kinds nest.
std::vector<std::string> split_top(std::string_view s, std::size_t line, bool (*is_sep)(char)) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') {
      if (--depth < 0) script_error(line, "unbalanced '" + std::string(1, c) + "'");
    }
    if (depth == 0 && is_sep(c)) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (depth != 0) script_error(line, "unclosed bracket");
  out.push_back(trim(cur));
  return out;
}

std::vector<std::string> nonempty(std::vector<std::string> v) {
  std::erase_if(v, [](const std::string& s) { return s.empty(); });
  return v;
}

std::vector<std::string> tokens_of(std::string_view s, std::size_t line) {
  return nonempty(split_top(s, line, [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }));
}

std::vector<std::string> commas(std::string_view s, std::size_t line) {
  return nonempty(split_top(s, line, [](char c) { return c == ','; }));
}

bool is_name(const std::string& t) {
  static const std::regex name("[A-Za-z][A-Za-z0-9_]*");
  static const std::regex variable("x_[0-9]+");
  return t != "i" && std::regex_match(t, name) && !std::regex_match(t, variable);
}

std::string unwrap(const std::string& t, char open, char close, std::size_t line) {
  if (t.size() < 2 || t.front() != open || t.back() != close)
    script_error(line, "expected " + std::string(1, open) + "..." + std::string(1, close) + ", got '" + t + "'");
  return t.substr(1, t.size() - 2);
}

std::uint64_t natural(const std::string& t, std::size_t line) {
  static const std::regex digits("[0-9]+");
  if (!std::regex_match(t, digits)) script_error(line, "expected a natural number, got '" + t + "'");
  try {
    return std::stoull(t);
  } catch (const std::exception&) {
    script_error(line, "number out of range: " + t);
  }
}

// "1..5" or "{1, 3}"
VarSet varset(const std::string& t, std::size_t line) {
  VarSet out;
  auto dots = t.find("..");
  if (dots != std::string::npos && t.front() != '{') {
    std::uint64_t lo = natural(t.substr(0, dots), line), hi = natural(t.substr(dots + 2), line);
    if (lo == 0 || hi > 0xffffffffULL || lo > hi) script_error(line, "bad range '" + t + "'");
    for (std::uint64_t v = lo; v <= hi; ++v) out.insert(static_cast<VarIndex>(v));
    return out;
  }
  for (const auto& item : commas(unwrap(t, '{', '}', line), line)) {
    std::uint64_t v = natural(item, line);
    if (v == 0 || v > 0xffffffffULL) script_error(line, "variable index out of range: " + item);
    out.insert(static_cast<VarIndex>(v));
  }
  return out;
}

// "{2: 5, 3: s}" as an object with string values.
json keyed_map(const std::string& t, std::size_t line) {
  json out = json::object();
  for (const auto& item : commas(unwrap(t, '{', '}', line), line)) {
    auto colon = item.find(':');
    if (colon == std::string::npos) script_error(line, "expected key: value, got '" + item + "'");
    std::string key = trim(item.substr(0, colon));
    natural(key, line);
    out[key] = trim(item.substr(colon + 1));
  }
  return out;
}

json label(const std::string& t) {
  static const std::regex digits("[0-9]+");
  if (std::regex_match(t, digits)) return json(std::stoull(t));
  return json(t);
}

std::int64_t n_offset(const std::string& t, std::size_t line) {
  static const std::regex form("n([+-][0-9]+)?");
  if (!std::regex_match(t, form)) script_error(line, "expected n, n+c or n-c, got '" + t + "'");
  if (t.size() == 1) return 0;
  std::int64_t v = static_cast<std::int64_t>(natural(t.substr(2), line));
  return t[1] == '-' ? -v : v;
}

Field field_named(const std::string& name, std::size_t line) {
  if (name == "real") return Field::Real;
  if (name == "complex") return Field::Complex;
  script_error(line, "unknown field '" + name + "'");
}

}  // namespace

struct Session::Statement {
  std::size_t line;
  std::string keyword;
  std::vector<std::string> args;
  std::optional<Field> field;
  std::string raw;  // text after the keyword
};

Session::Session(Budgets budgets) : budgets_(budgets) {}

void Session::define(const std::string& kind, const std::string& name) { kinds_[name] = kind; }

json Session::dump() const {
  json base = json::object();
  for (const auto& [k, v] : base_) base[std::to_string(k)] = v;
  json streams = json::object(), systems = json::object();
  for (const auto& [k, v] : streams_) streams[k] = v;
  for (const auto& [k, v] : systems_) systems[k] = v;
  return {{"query", "dump"},
          {"field", field_},
          {"point", {{"name", base_name_}, {"coords", base}}},
          {"budgets", {{"enum", budgets_.enumeration}, {"gb", budgets_.gb}, {"curve", budgets_.curves}}},
          {"germs", germs_},
          {"ideals", ideals_},
          {"streams", streams},
          {"systems", systems}};
}

void Session::execute(const std::string& line, std::size_t line_no, std::ostream& out, std::ostream& err) {
  std::string text = line;
  if (auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
  for (const auto& stmt : split_top(text, line_no, [](char c) { return c == ';'; }))
    if (!stmt.empty()) statement(stmt, line_no, out, err);
}

void Session::statement(const std::string& text, std::size_t line_no, std::ostream& out, std::ostream& err) {
  const std::size_t L = line_no;
  Statement st{L, {}, {}, std::nullopt, {}};
  auto toks = tokens_of(text, L);
  st.keyword = toks.front();
  st.raw = trim(std::string_view(text).substr(text.find(st.keyword) + st.keyword.size()));
  for (std::size_t i = 1; i < toks.size(); ++i) {
    if (toks[i] == "--field") {
      if (i + 1 == toks.size()) script_error(L, "--field needs a value");
      st.field = field_named(toks[++i], L);
    } else {
      st.args.push_back(toks[i]);
    }
  }
  const std::string& kw = st.keyword;
  const auto& args = st.args;

  Field field = st.field.value_or(field_named(field_, L));
  auto base_point = [&](Field f) {
    std::map<VarIndex, Scalar> coords;
    for (const auto& [k, v] : base_) {
      Scalar s = parse_scalar(v, f);
      if (!s.is_zero()) coords.emplace(k, s);
    }
    return BasePoint(f, coords);
  };
  BasePoint x0 = base_point(field);
  Context ctx(budgets_);
  ctx.cache = cache_;

  auto need = [&](std::size_t n, const char* usage) {
    if (args.size() < n) script_error(L, std::string("usage: ") + usage);
  };
  auto lookup = [&](const std::string& name, const char* kind) -> bool {
    if (!is_name(name)) return false;
    auto it = kinds_.find(name);
    if (it == kinds_.end()) script_error(L, "undefined name '" + name + "'");
    return it->second == kind;
  };
  auto germ_text = [&](const std::string& t) -> std::string {
    if (!is_name(t)) return t;
    if (!lookup(t, "germ")) script_error(L, "'" + t + "' is a " + kinds_.at(t) + ", expected a germ");
    return germs_.at(t);
  };
  auto list_texts = [&](const std::string& t) {
    std::vector<std::string> out;
    for (const auto& item : commas(unwrap(t, '[', ']', L), L)) out.push_back(germ_text(item));
    return out;
  };
  auto ideal_texts = [&](const std::string& t) -> std::vector<std::string> {
    if (!t.empty() && t.front() == '[') return list_texts(t);
    if (!lookup(t, "ideal")) script_error(L, "expected an ideal, got '" + t + "'");
    return ideals_.at(t);
  };
  auto polys_of = [&](const std::vector<std::string>& texts) {
    std::vector<Polynomial> ps;
    for (const auto& s : texts) ps.push_back(parse_poly(s, field));
    return ps;
  };
  auto poly_of = [&](const std::string& t) { return parse_poly(germ_text(t), field); };
  auto stream_recipe = [&](const std::string& t) -> json {
    if (is_name(t) && lookup(t, "stream")) return streams_.at(t);
    return {{"kind", "finite"}, {"gens", ideal_texts(t)}};
  };
  auto system_recipe = [&](const std::string& t) -> json {
    if (is_name(t) && lookup(t, "system")) return systems_.at(t);
    return {{"kind", "zero"}, {"stream", stream_recipe(t)}};
  };
  auto stream_json = [&](json r, Field f) {
    r["field"] = to_string(f);
    r["base"] = to_json(base_point(f));
    return r;
  };
  std::function<json(const json&, Field)> system_json = [&](const json& r, Field f) -> json {
    std::string kind = r.at("kind");
    if (kind == "zero") return {{"kind", "zero"}, {"stream", stream_json(r.at("stream"), f)}};
    if (kind == "product")
      return {{"kind", "product"}, {"op", r.at("op")}, {"left", system_json(r.at("left"), f)},
              {"right", system_json(r.at("right"), f)}};
    json j = r;
    j["field"] = to_string(f);
    j["base"] = to_json(base_point(f));
    if (kind == "constant") {
      j["kind"] = "explicit";
      j["elements"] = json::array({{{"label", 0}, {"gens", r.at("gens")}}});
      j["relation"] = json::array({json::array({0, 0})});
      j.erase("gens");
    }
    return j;
  };
  auto system_of = [&](const std::string& t) { return SystemOfGerms::from_json(system_json(system_recipe(t), field), ctx); };
  auto emit = [&](const json& j) { out << j.dump() << '\n'; };
  auto emit_verdict = [&](const Verdict& v) {
    emit(v.to_json());
    err << "line " << L << ": " << v.query << " " << to_string(v.outcome) << '\n';
  };
  auto keyword_arg = [&](const std::string& key) -> std::optional<std::string> {
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
      if (args[i] == key) return args[i + 1];
    return std::nullopt;
  };
  auto definition = [&]() -> std::pair<std::string, std::string> {
    auto eq = st.raw.find('=');
    if (eq == std::string::npos) script_error(L, "expected '" + kw + " NAME = ...'");
    std::string name = trim(st.raw.substr(0, eq));
    if (!is_name(name)) script_error(L, "bad name '" + name + "'");
    if (kinds_.count(name)) script_error(L, "name '" + name + "' is already defined");
    if (st.field) script_error(L, "--field applies to queries only");
    return {name, trim(st.raw.substr(eq + 1))};
  };

  try {
    if (kw == "field") {
      need(1, "field real|complex");
      field_named(args[0], L);
      field_ = args[0];
    } else if (kw == "point") {
      need(1, "point [name] {k: v, ...}");
      std::string name = args.size() > 1 ? args[0] : base_name_;
      const std::string& coords = args.back();
      std::map<std::uint32_t, std::string> base;
      if (coords != "origin") {
        json m = keyed_map(coords, L);
        for (auto& [k, v] : m.items()) {
          std::uint64_t idx = natural(k, L);
          if (idx == 0 || idx > 0xffffffffULL) script_error(L, "bad coordinate index " + k);
          parse_scalar(v.get<std::string>(), field_named(field_, L));
          base[static_cast<std::uint32_t>(idx)] = v.get<std::string>();
        }
      }
      base_name_ = name;
      base_ = std::move(base);
    } else if (kw == "let") {
      auto [name, rhs] = definition();
      std::string t = germ_text(rhs);
      parse_poly(t, field);
      germs_[name] = t;
      define("germ", name);
    } else if (kw == "ideal") {
      auto [name, rhs] = definition();
      auto texts = ideal_texts(rhs);
      polys_of(texts);
      ideals_[name] = texts;
      define("ideal", name);
    } else if (kw == "stream") {
      auto [name, rhs] = definition();
      auto parts = tokens_of(rhs, L);
      if (parts.empty()) script_error(L, "usage: stream NAME = finite I | templated [..] | coordinates");
      json recipe;
      if (parts[0] == "coordinates" && parts.size() == 1) {
        recipe = {{"kind", "coordinates"}};
      } else if (parts[0] == "finite" && parts.size() == 2) {
        recipe = {{"kind", "finite"}, {"gens", ideal_texts(parts[1])}};
      } else if (parts[0] == "templated" && parts.size() == 2) {
        json ts = json::array();
        for (const auto& t : commas(unwrap(parts[1], '[', ']', L), L)) ts.push_back(t);
        recipe = {{"kind", "templated"}, {"templates", ts}};
      } else {
        script_error(L, "usage: stream NAME = finite I | templated [..] | coordinates");
      }
      GeneratorStream::from_json(stream_json(recipe, field));
      streams_[name] = recipe;
      define("stream", name);
    } else if (kw == "system") {
      auto [name, rhs] = definition();
      auto parts = tokens_of(rhs, L);
      if (parts.empty()) script_error(L, "usage: system NAME = zero|point|constant|meet|join|chain|explicit ...");
      const std::string& kind = parts[0];
      json recipe;
      if (kind == "zero" && parts.size() == 2) {
        recipe = {{"kind", "zero"}, {"stream", stream_recipe(parts[1])}};
      } else if (kind == "point" && parts.size() == 1) {
        recipe = {{"kind", "point"}};
      } else if (kind == "constant" && parts.size() == 2) {
        recipe = {{"kind", "constant"}, {"gens", ideal_texts(parts[1])}};
      } else if ((kind == "meet" || kind == "join") && parts.size() == 3) {
        recipe = {{"kind", "product"},
                  {"op", kind == "meet" ? "intersection" : "union"},
                  {"left", system_recipe(parts[1])},
                  {"right", system_recipe(parts[2])}};
      } else if (kind == "chain") {
        recipe = {{"kind", "chain"}, {"start", 1}, {"gap", 1}, {"parts", json::array()}};
        static const std::set<std::string> keys = {"start", "gap", "part", "from", "to", "at"};
        std::size_t i = 1;
        auto value = [&](const char* what) {
          if (i + 1 >= parts.size()) script_error(L, std::string(what) + " needs a value");
          return parts[++i];
        };
        for (; i < parts.size(); ++i) {
          if (parts[i] == "start") {
            recipe["start"] = natural(value("start"), L);
          } else if (parts[i] == "gap") {
            recipe["gap"] = natural(value("gap"), L);
          } else if (parts[i] == "part") {
            std::string tmpl;
            while (i + 1 < parts.size() && !keys.count(parts[i + 1])) tmpl += (tmpl.empty() ? "" : " ") + parts[++i];
            if (tmpl.empty()) script_error(L, "part needs a template");
            json part = {{"template", tmpl}};
            if (i + 1 < parts.size() && parts[i + 1] == "from") {
              ++i;
              part["from"] = natural(value("from"), L);
              if (i + 1 >= parts.size() || parts[i + 1] != "to") script_error(L, "part ... from a needs 'to n+c'");
              ++i;
              part["to"] = n_offset(value("to"), L);
            } else if (i + 1 < parts.size() && parts[i + 1] == "at") {
              ++i;
              part["at"] = n_offset(value("at"), L);
            } else {
              script_error(L, "part needs 'from a to n+c' or 'at n+c'");
            }
            recipe["parts"].push_back(part);
          } else {
            script_error(L, "unexpected '" + parts[i] + "' in chain");
          }
        }
        if (recipe["parts"].empty()) script_error(L, "chain needs at least one part");
      } else if (kind == "explicit" && parts.size() >= 2) {
        recipe = {{"kind", "explicit"}, {"elements", json::array()}, {"relation", json::array()}};
        std::set<json> labels;
        for (const auto& item : nonempty(split_top(unwrap(parts[1], '{', '}', L), L, [](char c) { return c == ';'; }))) {
          auto colon = item.find(':');
          if (colon == std::string::npos) script_error(L, "expected label: [gens], got '" + item + "'");
          json lab = label(trim(item.substr(0, colon)));
          recipe["elements"].push_back({{"label", lab}, {"gens", ideal_texts(trim(item.substr(colon + 1)))}});
          recipe["relation"].push_back({lab, lab});
          labels.insert(lab);
        }
        if (parts.size() > 2) {
          if (parts[2] != "order") script_error(L, "expected 'order' after the elements");
          std::string rel;
          for (std::size_t i = 3; i < parts.size(); ++i) rel += parts[i];
          for (const auto& pair : commas(rel, L)) {
            auto lt = pair.find('<');
            if (lt == std::string::npos) script_error(L, "expected a<b, got '" + pair + "'");
            json a = label(trim(pair.substr(0, lt))), b = label(trim(pair.substr(lt + 1)));
            if (!labels.count(a) || !labels.count(b)) script_error(L, "unknown label in '" + pair + "'");
            recipe["relation"].push_back({a, b});
          }
        }
      } else {
        script_error(L, "usage: system NAME = zero|point|constant|meet|join|chain|explicit ...");
      }
      SystemOfGerms::from_json(system_json(recipe, field), ctx);
      systems_[name] = recipe;
      define("system", name);
    } else if (kw == "budget") {
      std::string spec;
      for (const auto& a : args) spec += (spec.empty() ? "" : ",") + a;
      budgets_ = Budgets::parse(spec, budgets_);
    } else if (kw == "dump") {
      emit(dump());
    } else if (kw == "member") {
      need(2, "member I f");
      StepBudget budget = ctx.gb_budget();
      emit_verdict(is_member(poly_of(args[1]), polys_of(ideal_texts(args[0])), budget));
    } else if (kw == "macaulay") {
      need(2, "macaulay I f [bound N]");
      std::uint32_t bound = 8;
      if (auto b = keyword_arg("bound")) bound = static_cast<std::uint32_t>(natural(*b, L));
      emit_verdict(macaulay_membership_oracle(poly_of(args[1]), polys_of(ideal_texts(args[0])), bound));
    } else if (kw == "radmem") {
      need(2, "radmem I f");
      if (field != Field::Complex) throw Error(ErrorKind::FieldError, "radmem needs the complex field");
      GermIdeal I = GermIdeal::of(x0, polys_of(ideal_texts(args[0])));
      emit_verdict(local_radical_member_complex(I, Germ(poly_of(args[1]), x0), ctx));
    } else if (kw == "realclosure") {
      need(2, "realclosure I f ...");
      GermIdeal I = GermIdeal::of(x0, polys_of(ideal_texts(args[0])));
      std::vector<Germ> targets;
      for (std::size_t i = 1; i < args.size(); ++i) targets.emplace_back(poly_of(args[i]), x0);
      for (const auto& v : real_radical_closure(I, targets, {}, ctx)) emit_verdict(v);
    } else if (kw == "certificate") {
      need(2, "certificate I f [m M] [b [..]] [weights [..]]");
      RealCertificate cert{Germ(poly_of(args[1]), x0), 1, {}, {}, GermIdeal::of(x0, polys_of(ideal_texts(args[0])))};
      if (auto m = keyword_arg("m")) cert.m = static_cast<std::uint32_t>(natural(*m, L));
      if (auto b = keyword_arg("b"))
        for (const auto& p : polys_of(list_texts(*b))) cert.b.emplace_back(p, x0);
      if (auto w = keyword_arg("weights"))
        for (const auto& item : commas(unwrap(*w, '[', ']', L), L)) cert.weights.push_back(parse_scalar(item, Field::Real).re());
      emit_verdict(verify_real_certificate(cert, ctx));
    } else if (kw == "refute") {
      need(2, "refute I f [curve {k: p(s)}]");
      GermIdeal I = GermIdeal::of(x0, polys_of(ideal_texts(args[0])));
      std::optional<RationalCurve> curve;
      if (auto c = keyword_arg("curve")) curve = curve_from_json(keyed_map(*c, L), x0);
      emit_verdict(refute_real_vanishing(I, Germ(poly_of(args[1]), x0), curve, ctx));
    } else if (kw == "contains") {
      need(2, "contains I J");
      emit_verdict(setgerm_contains(SetGerm::of(x0, polys_of(ideal_texts(args[0]))),
                                    SetGerm::of(x0, polys_of(ideal_texts(args[1]))), ctx));
    } else if (kw == "precedes" || kw == "equiv") {
      need(2, "precedes|equiv A B [window SET]");
      std::optional<VarSet> window;
      if (auto w = keyword_arg("window")) window = varset(*w, L);
      SystemOfGerms a = system_of(args[0]), b = system_of(args[1]);
      emit_verdict(kw == "precedes" ? precedes(a, b, ctx, window) : equiv(a, b, ctx, window));
    } else if (kw == "pointgerm") {
      need(3, "pointgerm S dims SET");
      auto dims = keyword_arg("dims");
      if (!dims) script_error(L, "usage: pointgerm S dims SET");
      GeneratorStream s = GeneratorStream::from_json(stream_json(stream_recipe(args[0]), field));
      emit_verdict(is_point_multigerm(s, varset(*dims, L), ctx));
    } else if (kw == "zeromember") {
      need(2, "zeromember f A");
      emit_verdict(zero_ideal_member(Germ(poly_of(args[0]), x0), system_of(args[1]), ctx));
    } else if (kw == "nullstellensatz") {
      need(2, "nullstellensatz I f");
      GermIdeal I = GermIdeal::of(x0, polys_of(ideal_texts(args[0])));
      NullstellensatzReport r = nullstellensatz_check(I, Germ(poly_of(args[1]), x0), ctx);
      emit(r.to_json());
      std::string status = r.to_json().at("status");
      err << "line " << L << ": nullstellensatz " << status << '\n';
      if (r.status == NullstellensatzReport::Status::Disagree) defect_ = true;
    } else if (kw == "invertible") {
      need(1, "invertible f");
      std::string text = args[0];
      if (args.size() > 1) {
        for (std::size_t i = 1; i < args.size(); ++i) text += " " + args[i];
        text = "(" + text + ")";
      }
      Germ g(poly_of(text), x0);
      emit({{"query", "invertible"}, {"f", print_canonical(g.poly())}, {"value", g.value().to_string()},
            {"result", is_invertible(g)}});
      err << "line " << L << ": invertible " << (is_invertible(g) ? "true" : "false") << '\n';
    } else if (kw == "restrict" || kw == "extend") {
      need(2, "restrict|extend f SET");
      Germ g(poly_of(args[0]), x0);
      VarSet s = varset(args[1], L);
      Germ r = kw == "restrict" ? restrict(g, s) : extend_indexing(g, s);
      emit({{"query", kw}, {"f", print_canonical(r.poly())}, {"indexing_set", to_json(r.indexing_set())}});
    } else if (kw == "eliminate") {
      need(2, "eliminate I SET");
      auto gens = polys_of(ideal_texts(args[0]));
      VarSet drop = varset(args[1], L);
      StepBudget budget = ctx.gb_budget();
      emit({{"query", "eliminate"}, {"gens", to_json(gens)}, {"drop", to_json(drop)},
            {"result", to_json(eliminate(gens, drop, budget))}});
    } else if (kw == "validate") {
      need(1, "validate A");
      SystemOfGerms s = system_of(args[0]);
      emit({{"query", "validate"}, {"system", s.to_json()}, {"validation", s.validation().to_json()}});
    } else {
      script_error(L, "unknown command '" + kw + "'");
    }
  } catch (const ParseError& e) {
    script_error(L, std::string(to_string(e.kind())) + " at column " + std::to_string(e.column()) + ": " + e.detail());
  } catch (const NotIndexedBy& e) {
    json missing = json::array();
    for (auto v : e.missing()) missing.push_back(v);
    emit({{"query", kw}, {"error", to_string(e.kind())}, {"message", e.what()}, {"missing", missing}});
    err << "line " << L << ": " << kw << " error " << to_string(e.kind()) << '\n';
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ScriptError) throw;
    emit({{"query", kw}, {"error", to_string(e.kind())}, {"message", e.what()}});
    err << "line " << L << ": " << kw << " error " << to_string(e.kind()) << '\n';
  } catch (const json::exception& e) {
    script_error(L, e.what());
  }
}

int run_script(std::istream& in, std::ostream& out, std::ostream& err, Budgets budgets) {
  Session session(budgets);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    try {
      session.execute(line, n, out, err);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return session.defect() ? 2 : 0;
}

int run_repl(std::istream& in, std::ostream& out, std::ostream& err, Budgets budgets, bool prompt) {
  Session session(budgets);
  std::string line;
  std::size_t n = 0;
  if (prompt) err << "germcalc> " << std::flush;
  while (std::getline(in, line)) {
    ++n;
    try {
      session.execute(line, n, out, err);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
    }
    out << std::flush;
    if (prompt) err << "germcalc> " << std::flush;
  }
  return session.defect() ? 2 : 0;
}

}  // namespace germcalc
