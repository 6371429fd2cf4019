#include "germcalc/verdict.hpp"

#include <charconv>
#include <sstream>

#include "germcalc/errors.hpp"

namespace germcalc {

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Proved: return "Proved";
    case Outcome::Refuted: return "Refuted";
    case Outcome::Unknown: return "Unknown";
  }
  return "Unknown";
}

Outcome outcome_from_string(const std::string& name) {
  if (name == "Proved") return Outcome::Proved;
  if (name == "Refuted") return Outcome::Refuted;
  if (name == "Unknown") return Outcome::Unknown;
  throw Error(ErrorKind::InvalidWitness, "unknown outcome '" + name + "'");
}

json BudgetUse::to_json() const {
  return json{{"gb", gb}, {"enum", enumeration}, {"curve", curves}};
}

Budgets Budgets::parse(const std::string& spec, Budgets defaults) {
  Budgets out = defaults;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ScriptError, "bad budget entry '" + item + "'");
    std::string key = item.substr(0, eq);
    std::uint64_t value = 0;
    const char* first = item.data() + eq + 1;
    const char* last = item.data() + item.size();
    auto [end, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || end != last || first == last)
      throw Error(ErrorKind::ScriptError, "bad budget value in '" + item + "'");
    if (value == 0) throw Error(ErrorKind::ScriptError, "budgets must be positive");
    if (key == "gb")
      out.gb = value;
    else if (key == "enum")
      out.enumeration = value;
    else if (key == "curve")
      out.curves = value;
    else
      throw Error(ErrorKind::ScriptError, "unknown budget '" + key + "'");
  }
  return out;
}

json Verdict::to_json() const {
  json j;
  j["query"] = query;
  j["outcome"] = to_string(outcome);
  j["input"] = input;
  j["witness"] = witness;
  j["budget_consumed"] = consumed.to_json();
  return j;
}

Verdict Verdict::from_json(const json& j) {
  Verdict v;
  v.query = j.at("query").get<std::string>();
  v.outcome = outcome_from_string(j.at("outcome").get<std::string>());
  v.input = j.value("input", json::object());
  v.witness = j.value("witness", json::object());
  if (j.contains("budget_consumed")) {
    const auto& b = j["budget_consumed"];
    v.consumed.gb = b.value("gb", std::uint64_t{0});
    v.consumed.enumeration = b.value("enum", std::uint64_t{0});
    v.consumed.curves = b.value("curve", std::uint64_t{0});
  }
  return v;
}

void StepBudget::charge() {
  if (consumed_ >= max_) throw BudgetExhausted(consumed_);
  ++consumed_;
}

std::shared_ptr<const Verdict> VerdictCache::find(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : it->second;
}

void VerdictCache::insert(const std::string& key, const Verdict& verdict) {
  std::lock_guard<std::mutex> lock(mutex_);
  entries_.try_emplace(key, std::make_shared<const Verdict>(verdict));
}

std::size_t VerdictCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

}  // namespace germcalc
