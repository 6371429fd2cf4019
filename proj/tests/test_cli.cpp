#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "germcalc/errors.hpp"
#include "germcalc/session.hpp"
#include "germcalc/witness.hpp"

using namespace germcalc;

namespace {

struct Transcript {
  int code;
  std::string out;
  std::string err;
  std::vector<json> lines;
};

Transcript run(const std::string& script, bool repl = false, Budgets budgets = {}) {
  std::istringstream in(script);
  std::ostringstream out, err;
  int code = repl ? run_repl(in, out, err, budgets, false) : run_script(in, out, err, budgets);
  Transcript r{code, out.str(), err.str(), {}};
  std::istringstream lines(r.out);
  for (std::string line; std::getline(lines, line);) r.lines.push_back(json::parse(line));
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kFamily = "stream I = templated [x_{2k+1}^2 + (x_{2k+2} - x_{2k+3})^2]\n";

}  // namespace

TEST(Cli, FamilyScriptProvesPointGerm) {
  Transcript r = run(std::string(kFamily) + "pointgerm I dims 1..3 --field real\n");
  EXPECT_EQ(r.code, 0);
  ASSERT_EQ(r.lines.size(), 1u);
  EXPECT_EQ(r.lines[0]["query"], "pointgerm");
  EXPECT_EQ(r.lines[0]["outcome"], "Proved");
  EXPECT_EQ(r.lines[0]["witness"]["alpha"], json::array({0, 1}));
}

TEST(Cli, RadicalScript) {
  Transcript r = run("let f = x_1; ideal I = [x_1^2]; radmem I f --field complex");
  EXPECT_EQ(r.code, 0);
  ASSERT_EQ(r.lines.size(), 1u);
  EXPECT_EQ(r.lines[0]["outcome"], "Proved");
}

TEST(Cli, EmptyScript) {
  Transcript r = run("");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  r = run("# only a comment\n\n;;\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ReplRingExamples) {
  Transcript r = run("point x0 {2: 5, 3: 5}\n"
              "let g = x_1^2 + (x_2-x_3)^2\n"
              "invertible g\n"
              "invertible 1 + x_1\n"
              "restrict g {1}\n",
              true);
  EXPECT_EQ(r.code, 0);
  ASSERT_EQ(r.lines.size(), 3u);
  EXPECT_EQ(r.lines[0]["result"], false);
  EXPECT_EQ(r.lines[1]["result"], true);
  EXPECT_EQ(r.lines[2]["error"], "NotIndexedBy");
  EXPECT_EQ(r.lines[2]["missing"], json::array({2, 3}));

  r = run("invertible 1 + x_1\ninvertible x_1 --field complex\n", true);
  EXPECT_EQ(r.lines[0]["result"], true);
  EXPECT_EQ(r.lines[1]["result"], false);
}

TEST(Cli, ReplTranscriptReplaysAsScript) {
  std::string transcript = slurp(GERMCALC_TEST_DATA "/session.gc");
  Transcript script = run(transcript);
  Transcript repl = run(transcript, true);
  EXPECT_EQ(script.code, 0);
  EXPECT_EQ(repl.code, 0);
  EXPECT_FALSE(script.out.empty());
  EXPECT_EQ(script.out, repl.out);
  EXPECT_EQ(run(transcript).out, script.out);
}

TEST(Cli, EmittedWitnessesVerify) {
  Transcript r = run(slurp(GERMCALC_TEST_DATA "/session.gc"));
  WitnessVerifier verifier;
  std::size_t checked = 0;
  for (const auto& j : r.lines) {
    WitnessCheck c = verifier.check(j);
    if (!c.checked) continue;
    ++checked;
    EXPECT_TRUE(c.ok) << c.detail << "\n" << j.dump();
  }
  EXPECT_GE(checked, 12u);
}

TEST(Cli, ScriptErrorsStopBatchButNotRepl) {
  std::string text = "let f = x_1\nmember I f\nlet g = x_2\ninvertible g\n";
  Transcript batch = run(text);
  EXPECT_EQ(batch.code, 1);
  EXPECT_TRUE(batch.out.empty());
  EXPECT_NE(batch.err.find("line 2"), std::string::npos);
  EXPECT_NE(batch.err.find("undefined name 'I'"), std::string::npos);

  Transcript repl = run(text, true);
  EXPECT_EQ(repl.code, 0);
  ASSERT_EQ(repl.lines.size(), 1u);
  EXPECT_EQ(repl.lines[0]["query"], "invertible");

  EXPECT_EQ(run("let f = x_1\nlet f = x_2\n").code, 1);
  EXPECT_EQ(run("frobnicate x_1\n").code, 1);
  EXPECT_EQ(run("let f = x_1 + * 2\n").code, 1);
  EXPECT_EQ(run("let f = x_{k}\n").code, 1);
  EXPECT_EQ(run("ideal I = [x_1\n").code, 1);
  EXPECT_EQ(run("ideal I = [x_1]\nlet I2 = I\n").code, 1);
  EXPECT_EQ(run("let g = i * x_1\n").code, 1);
  EXPECT_EQ(run("field complex\nlet g = i * x_1\n").code, 0);
}

TEST(Cli, EngineErrorsAreReportedInline) {
  Transcript r = run("radmem [x_1] x_1\n"
              "system A = explicit {a: [x_1]; b: [x_2]} order a<b\n"
              "member [x_1] x_1\n");
  EXPECT_EQ(r.code, 0);
  ASSERT_EQ(r.lines.size(), 3u);
  EXPECT_EQ(r.lines[0]["error"], "FieldError");
  EXPECT_EQ(r.lines[1]["error"], "InvalidSystem");
  EXPECT_EQ(r.lines[2]["outcome"], "Proved");
  // A rejected definition leaves the name unbound.
  EXPECT_EQ(run("system A = chain gap 0 part x_{k+1} at n\nvalidate A\n").code, 1);
}

TEST(Cli, FieldAndPointAreSessionWide) {
  Transcript r = run("ideal I = [x_1^2]\n"
              "field complex\n"
              "radmem I x_1\n"
              "point {1: 1}\n"
              "radmem I x_1\n"
              "radmem [x_1 - 1] (x_1^2 - 1)\n");
  ASSERT_EQ(r.lines.size(), 3u);
  EXPECT_EQ(r.lines[0]["outcome"], "Proved");
  EXPECT_EQ(r.lines[1]["outcome"], "Proved");  // (x_1^2) is the unit ideal away from 0
  EXPECT_EQ(r.lines[2]["outcome"], "Proved");
  EXPECT_EQ(r.lines[1]["input"]["base"], json({{"1", "1"}}));
}

TEST(Cli, BudgetsLimitSearches) {
  std::string text = "stream C = coordinates\npointgerm C dims 1..5\n";
  Transcript roomy = run(text);
  EXPECT_EQ(roomy.lines[0]["outcome"], "Proved");
  Transcript tight = run("budget enum=3\n" + text);
  EXPECT_EQ(tight.lines[0]["outcome"], "Unknown");
  EXPECT_LE(tight.lines[0]["budget_consumed"]["enum"].get<int>(), 3);
  Budgets b;
  b.enumeration = 3;
  EXPECT_EQ(run(text, false, b).lines[0]["outcome"], "Unknown");
  EXPECT_EQ(run("budget enum=-1\n").code, 1);
}

TEST(Cli, SystemsAndStreamsFromTheDsl) {
  Transcript r = run(std::string(kFamily) +
              "ideal P = [x_1^2 + (x_2 - x_3)^2, x_3^2 + (x_4 - x_5)^2]\n"
              "pointgerm P dims 1..5\n"
              "system S = chain start 1 gap 2 part x_{k+1} from 0 to n-2 part x_{k+1} - x_{k+2} at n-1\n"
              "system Pt = point\n"
              "equiv S Pt window 1..3\n"
              "system Z = zero I\n"
              "system E = explicit {0: [x_1]; 1: [x_1, x_2]} order 0<1\n"
              "system C = constant [x_1]\n"
              "system M = join E C\n"
              "equiv M C\n"
              "validate E\n"
              "zeromember (x_1*x_2) E\n"
              "dump\n");
  EXPECT_EQ(r.code, 0);
  ASSERT_EQ(r.lines.size(), 6u);
  EXPECT_EQ(r.lines[0]["outcome"], "Refuted");
  EXPECT_EQ(r.lines[0]["witness"]["refutations"][0]["containment"]["witness"]["failing"]["witness"]["curve"],
            json({{"4", "s"}, {"5", "s"}}));
  EXPECT_EQ(r.lines[1]["outcome"], "Proved");
  EXPECT_EQ(r.lines[2]["outcome"], "Proved");
  EXPECT_EQ(r.lines[3]["validation"]["antitone"], "Proved");
  EXPECT_EQ(r.lines[3]["system"]["relation"].size(), 3u);
  EXPECT_EQ(r.lines[4]["outcome"], "Proved");
  const json& dump = r.lines[5];
  EXPECT_EQ(dump["field"], "real");
  EXPECT_EQ(dump["streams"]["I"]["kind"], "templated");
  EXPECT_EQ(dump["systems"]["M"]["op"], "union");
  EXPECT_EQ(dump["ideals"]["P"].size(), 2u);
}

TEST(Cli, EliminateAndExtend) {
  Transcript r = run("eliminate [x_1 - x_2, x_2 - x_3] {2}\nextend x_1 {1, 4}\nrefute [x_1^2 + x_2^2] x_3 curve {3: s}\n");
  ASSERT_EQ(r.lines.size(), 3u);
  EXPECT_EQ(r.lines[0]["result"], json::array({"x_1 - x_3"}));
  EXPECT_EQ(r.lines[1]["indexing_set"], json::array({1, 4}));
  EXPECT_EQ(r.lines[2]["outcome"], "Refuted");
}
