// The germcalc command language: a session of named germs, ideals, streams
// and systems, queried one statement at a time.
//
//   field real|complex
//   point [name] {2: 5, 3: 5}          coordinates not listed are 0
//   let g = x_1^2 + (x_2 - x_3)^2
//   ideal I = [g, x_4]
//   stream S = finite I | finite [..] | templated [x_{k+1}, ..] | coordinates
//   system A = zero S | point | constant I | meet A B | join A B
//            | chain start 1 gap 2 part x_{k+1} from 0 to n-2 part x_{k+1} - x_{k+2} at n-1
//            | explicit {a: [x_1]; b: [x_1, x_2]} order a<b
//   member I f          macaulay I f [bound 8]   radmem I f
//   realclosure I f..   certificate I f [m 1] [b [..]] [weights [..]]
//   refute I f [curve {2: s, 3: s}]               contains I J
//   precedes A B [window 1..5]   equiv A B [window 1..5]
//   pointgerm S dims 1..3        zeromember f A    nullstellensatz I f
//   invertible f   restrict f {1}   extend f {1, 2}   eliminate I {3}
//   validate A     budget enum=64 gb=10000 curve=256   dump
//
// Statements are separated by newlines or ';'. Operands containing spaces
// go in parentheses. Any query accepts --field real|complex.
#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "germcalc/verdict.hpp"

namespace germcalc {

class Session {
 public:
  explicit Session(Budgets budgets = {});

  /// Runs every statement of one input line. Script errors (syntax,
  /// undefined names) throw Error with kind ScriptError or a ParseError;
  /// engine errors are reported as JSON objects on out.
  void execute(const std::string& line, std::size_t line_no, std::ostream& out, std::ostream& err);

  /// A nullstellensatz check found a conclusive disagreement.
  bool defect() const noexcept { return defect_; }
  json dump() const;

 private:
  struct Statement;

  void statement(const std::string& text, std::size_t line_no, std::ostream& out, std::ostream& err);
  void define(const std::string& kind, const std::string& name);

  Budgets budgets_;
  std::string field_ = "real";
  std::string base_name_ = "x0";
  std::map<std::uint32_t, std::string> base_;
  std::map<std::string, std::string> kinds_;
  std::map<std::string, std::string> germs_;
  std::map<std::string, std::vector<std::string>> ideals_;
  std::map<std::string, json> streams_;
  std::map<std::string, json> systems_;
  std::shared_ptr<VerdictCache> cache_ = std::make_shared<VerdictCache>();
  bool defect_ = false;
};

/// Batch mode: stops at the first script error. Returns 0, 1 (script
/// error) or 2 (nullstellensatz disagreement).
int run_script(std::istream& in, std::ostream& out, std::ostream& err, Budgets budgets);

/// Line-by-line mode: script errors are reported and the loop continues.
int run_repl(std::istream& in, std::ostream& out, std::ostream& err, Budgets budgets, bool prompt);

}  // namespace germcalc
