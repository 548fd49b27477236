#include <gtest/gtest.h>

#include <sstream>

#include "coproc/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = coproc::cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(COPROC_SAMPLES) + "/" + name; }

}  // namespace

TEST(Cli, RealPhi) {
  const auto r = run({"real", "phi", "++---+--"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "73/64\n");
  EXPECT_EQ(run({"real", "phi", "inf"}).out, "inf\n");
}

TEST(Cli, SignStringsAndNegativesAreNotFlags) {
  EXPECT_EQ(run({"real", "phi", "--"}).out, "-2\n");
  EXPECT_EQ(run({"real", "phi", "-+-"}).out, "-3/4\n");
  EXPECT_EQ(run({"real", "encode", "-3/4"}).out, "-+-\n");
  EXPECT_EQ(run({"real", "encode", "-inf"}).out, "-inf\n");
  EXPECT_EQ(run({"real", "cmp", "-", "+"}).out, "<\n");
  EXPECT_EQ(run({"game", "leq", "-1", "1"}).code, 0);
}

TEST(Cli, RealEncode) {
  EXPECT_EQ(run({"real", "encode", "0"}).out, "\"\"\n");
  EXPECT_EQ(run({"real", "encode", "1/2"}).out, "+-\n");
  EXPECT_EQ(run({"real", "encode", "1/3"}).code, 2);
  EXPECT_EQ(run({"real", "encode", "1/3", "--max-len", "5"}).code, 0);
}

TEST(Cli, GameValue) {
  auto r = run({"game", "value", sample("half.sg")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 2), "+-");
  r = run({"game", "value", "{0|1}"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "+- (1/2)\n");
  EXPECT_EQ(run({"game", "value", "*"}).code, 2);
}

TEST(Cli, GameBooleans) {
  EXPECT_EQ(run({"game", "leq", "0", "1"}).code, 0);
  EXPECT_EQ(run({"game", "leq", "1", "0"}).code, 1);
  EXPECT_EQ(run({"game", "transitive", "{0,1|}"}).code, 0);
  EXPECT_EQ(run({"game", "transitive", "*"}).code, 1);
  EXPECT_EQ(run({"game", "strategy", "0", "1"}).code, 0);
  EXPECT_EQ(run({"game", "strategy", "1", "0"}).code, 1);
  EXPECT_EQ(run({"game", "strategy", "1", "1", "--mode", "sync"}).code, 0);
  EXPECT_EQ(run({"game", "strategy", "1", "1", "--mode", "bogus"}).code, 2);
  EXPECT_EQ(run({"game", "leq", sample("loop.sg"), "0"}).code, 2);
}

TEST(Cli, GameArithmetic) {
  EXPECT_EQ(run({"game", "neg", "1"}).out, "{|{|}}\n");
  EXPECT_EQ(run({"game", "mul", "*", "1"}).code, 2);
  EXPECT_EQ(run({"real", "upsilon", "{0|1}"}).out, "+-\n");
  EXPECT_EQ(run({"real", "gamma", "+-"}).out, "{{|}|{{|}|}}\n");
}

TEST(Cli, ProcBisim) {
  EXPECT_EQ(run({"proc", "bisim", sample("ab.spec"), sample("xy.spec")}).code, 0);
  EXPECT_EQ(run({"proc", "bisim", "--mode", "strong", sample("ab.spec"), sample("x.spec")}).code, 1);
  EXPECT_EQ(run({"proc", "bisim", "--mode", "weak", sample("aab.spec"), sample("ab_short.spec")}).code, 0);
  EXPECT_EQ(run({"proc", "bisim", "--mode", "fuzzy", sample("ab.spec"), sample("ab.spec")}).code, 2);
  EXPECT_EQ(run({"proc", "compose", sample("ab.spec"), sample("xy.spec"), sample("ab.spec")}).code, 0);
}

TEST(Cli, ProcMachines) {
  const auto r = run({"proc", "unfold", sample("parity.mealy"), "--depth", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1 1 -> 0"), std::string::npos) << r.out;
  EXPECT_EQ(run({"proc", "cumulative", sample("blink.mealy")}).code, 2);
  EXPECT_EQ(run({"proc", "cumulative", "--async", sample("blink.mealy")}).code, 0);
}

TEST(Cli, Hfset) {
  EXPECT_EQ(run({"hfset", "bisim", sample("omega.hg"), sample("cycle2.hg")}).code, 0);
  EXPECT_EQ(run({"hfset", "bisim", sample("omega.hg"), sample("vn2.hg")}).code, 1);
  const auto r = run({"hfset", "tower", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 21), "stage 3: 16 elements\n");
  EXPECT_EQ(run({"hfset", "tower", "4"}).code, 2);
  EXPECT_EQ(run({"hfset", "canon", sample("missing.hg")}).code, 2);
}

TEST(Cli, Int) {
  EXPECT_EQ(run({"int", "znorm", "5", "3"}).out, "<2,0>  (-2)\n");
  const auto r = run({"int", "trace", sample("trace_chain.rel"), "--blocks", "A=1,Y=1,B=1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("a0 -> b0"), std::string::npos);
  EXPECT_EQ(run({"int", "compose", sample("swap.rel"), sample("swap.rel")}).out, "rel a2 b2\na0 -> b0\na1 -> b1\n");
}

TEST(Cli, Comp) {
  EXPECT_EQ(run({"comp", "eval", "(app (lam (var 0)) (lit 7))"}).out, "(lit 7)\n");
  EXPECT_EQ(run({"comp", "eval", sample("omega.tm"), "--fuel", "100"}).code, 1);
  EXPECT_EQ(run({"comp", "eval", "(var 0)"}).code, 2);
  EXPECT_EQ(run({"comp", "specialize", sample("const.tm"), "1"}).out, "(app (lam (lam (var 1))) (lit 1))\n");
  EXPECT_EQ(run({"comp", "step", sample("const.tm"), "1"}).code, 2);
  EXPECT_EQ(run({"comp", "compile", sample("parity.mealy")}).code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"game", "frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"real", "phi"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
