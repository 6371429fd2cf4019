// Three-valued query outcomes with replayable witnesses, and the budgets
// that bound every search.
#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace germcalc {

using json = nlohmann::json;

enum class Outcome { Proved, Refuted, Unknown };

const char* to_string(Outcome outcome);
Outcome outcome_from_string(const std::string& name);

/// Work actually spent by a query.
struct BudgetUse {
  std::uint64_t gb = 0;     // pair reductions
  std::uint64_t enumeration = 0;  // fin(I) subsets / system indices visited
  std::uint64_t curves = 0;  // curve candidates tried

  BudgetUse& operator+=(const BudgetUse& other) {
    gb += other.gb;
    enumeration += other.enumeration;
    curves += other.curves;
    return *this;
  }
  json to_json() const;
};

inline BudgetUse operator-(const BudgetUse& a, const BudgetUse& b) {
  return {a.gb - b.gb, a.enumeration - b.enumeration, a.curves - b.curves};
}

/// Per-search limits. gb applies to each basis computation, enumeration to
/// each quantifier search, curves to each curve search.
struct Budgets {
  std::uint64_t gb = 10000;
  std::uint64_t enumeration = 64;
  std::uint64_t curves = 256;

  /// Parses "enum=64,gb=10000,curve=256" (any subset, any order).
  static Budgets parse(const std::string& spec, Budgets defaults);
};

struct Verdict {
  std::string query;
  Outcome outcome = Outcome::Unknown;
  json input = json::object();
  json witness = json::object();
  BudgetUse consumed;

  bool proved() const { return outcome == Outcome::Proved; }
  bool refuted() const { return outcome == Outcome::Refuted; }
  bool conclusive() const { return outcome != Outcome::Unknown; }

  json to_json() const;
  static Verdict from_json(const json& j);
};

/// Pair-reduction counter for one basis computation.
class StepBudget {
 public:
  explicit StepBudget(std::uint64_t max_pair_reductions = 10000)
      : max_(max_pair_reductions) {}

  std::uint64_t max() const noexcept { return max_; }
  std::uint64_t consumed() const noexcept { return consumed_; }
  /// Counts one reduction; throws BudgetExhausted past the limit.
  void charge();

 private:
  std::uint64_t max_;
  std::uint64_t consumed_ = 0;
};

/// Memo of containment verdicts keyed by a canonical query string. Entries
/// are written once; a racing insert of an equal value is harmless.
class VerdictCache {
 public:
  std::shared_ptr<const Verdict> find(const std::string& key) const;
  void insert(const std::string& key, const Verdict& verdict);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<const Verdict>> entries_;
};

/// Limits plus the running tally for one top-level query.
struct Context {
  Budgets limits;
  BudgetUse used;
  std::shared_ptr<VerdictCache> cache = std::make_shared<VerdictCache>();

  Context() = default;
  explicit Context(Budgets b) : limits(b) {}

  StepBudget gb_budget() const { return StepBudget(limits.gb); }
};

}  // namespace germcalc
