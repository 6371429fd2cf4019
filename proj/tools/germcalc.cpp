#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "germcalc/errors.hpp"
#include "germcalc/session.hpp"
#include "germcalc/witness.hpp"

using namespace germcalc;

namespace {

int verify_file(std::istream& in) {
  WitnessVerifier verifier;
  std::string line;
  std::size_t n = 0, checked = 0, failed = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      std::cout << json{{"line", n}, {"ok", false}, {"detail", std::string("bad JSON: ") + e.what()}}.dump() << '\n';
      ++failed;
      continue;
    }
    WitnessCheck c = verifier.check(j);
    if (!c.checked) continue;
    ++checked;
    if (!c.ok) ++failed;
    json report = {{"line", n}, {"ok", c.ok}};
    if (j.is_object() && j.contains("query")) report["query"] = j.at("query");
    if (!c.ok) report["detail"] = c.detail;
    std::cout << report.dump() << '\n';
  }
  std::cerr << checked << " witnesses checked, " << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"germcalc: exact computation with polynomial germs and multigerms"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> enum_budget, gb_budget, curve_budget;
  app.add_option("--enum-budget", enum_budget, "index subsets tried per quantifier search");
  app.add_option("--gb-budget", gb_budget, "pair reductions per basis computation");
  app.add_option("--curve-budget", curve_budget, "curve candidates per curve search");

  std::string script;
  auto* run = app.add_subcommand("run", "run a script, printing one JSON line per query");
  run->add_option("file", script, "script path, or - for standard input")->required();
  run->fallthrough();

  auto* repl = app.add_subcommand("repl", "read statements line by line");
  repl->fallthrough();

  std::string witnesses;
  auto* verify = app.add_subcommand("verify-witness", "re-check every verdict in a JSON lines file");
  verify->add_option("file", witnesses, "JSON lines path, or - for standard input")->required();

  CLI11_PARSE(app, argc, argv);

  Budgets budgets;
  try {
    if (const char* env = std::getenv("GERMCALC_BUDGETS")) budgets = Budgets::parse(env, budgets);
  } catch (const Error& e) {
    std::cerr << "GERMCALC_BUDGETS: " << e.what() << '\n';
    return 1;
  }
  if (enum_budget) budgets.enumeration = *enum_budget;
  if (gb_budget) budgets.gb = *gb_budget;
  if (curve_budget) budgets.curves = *curve_budget;

  if (*run) {
    if (script == "-") return run_script(std::cin, std::cout, std::cerr, budgets);
    std::ifstream in(script);
    if (!in) {
      std::cerr << "cannot open " << script << '\n';
      return 1;
    }
    return run_script(in, std::cout, std::cerr, budgets);
  }
  if (*repl) return run_repl(std::cin, std::cout, std::cerr, budgets, isatty(STDIN_FILENO) != 0);

  if (witnesses == "-") return verify_file(std::cin);
  std::ifstream in(witnesses);
  if (!in) {
    std::cerr << "cannot open " << witnesses << '\n';
    return 1;
  }
  return verify_file(in);
}
