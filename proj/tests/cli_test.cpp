#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "sunits_cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  std::vector<std::string> lines() const {
    std::vector<std::string> v;
    std::istringstream in(out);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
  }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sunits");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = sunits::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

void expect_round_trip(const Result& r) {
  ASSERT_EQ(r.code, 0) << r.err;
  auto lines = r.lines();
  ASSERT_FALSE(lines.empty());
  for (const auto& l : lines) EXPECT_EQ(nlohmann::json::parse(l).dump(), l);
}

}  // namespace

TEST(Cli, Enumerate) {
  auto r = run({"enumerate", "--primes", "2,3", "--count", "10"});
  ASSERT_EQ(r.code, 0);
  auto lines = r.lines();
  ASSERT_EQ(lines.size(), 10u);
  EXPECT_EQ(lines.back(), "18");
  EXPECT_EQ(run({"enumerate", "--primes", "2", "--count", "1"}).out, "1\n");
  EXPECT_EQ(run({"enumerate", "--primes", "2,3", "--bound", "10"}).lines().size(), 7u);
  auto bad = run({"enumerate", "--primes", "4,6", "--count", "3"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("not prime"), std::string::npos);
  EXPECT_EQ(run({"enumerate", "--primes", "2"}).code, 2);
}

TEST(Cli, Solve) {
  auto r = run({"solve", "1,1=1 over 2,3", "--exp-bound", "12", "--domain", "s-integers"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto lines = r.lines();
  std::sort(lines.begin(), lines.end());
  EXPECT_EQ(lines, (std::vector<std::string>{"(-1,2)", "(-2,3)", "(-3,4)", "(-8,9)", "(2,-1)", "(3,-2)", "(4,-3)",
                                             "(9,-8)"}));
  EXPECT_EQ(run({"solve", "2=4 over 2", "--exp-bound", "3"}).out, "(2)\n");

  auto deg = run({"solve", "1,1,1=1 over 2,3", "--exp-bound", "1", "--domain", "s-integers"});
  EXPECT_NE(deg.out.find("(2,-2,1) degenerate"), std::string::npos);
  auto nd = run({"solve", "1,1,1=1 over 2,3", "--exp-bound", "1", "--nondegenerate-only"});
  EXPECT_EQ(nd.out.find("degenerate"), std::string::npos);
}

TEST(Cli, WitnessAndDecompose) {
  auto w = run({"witness", "1,1=1 over 2,3", "--exp-bound", "12", "--domain", "s-integers"});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_EQ(w.lines().front(), "V1 = {-8, -3, -2, -1, 1, 2, 3, 4, 9}");

  auto d = run({"decompose", "1,1,1=1 over 2,3", "4,-4,1"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(d.out, "J = {1,2}\nI = {3}\nresidual = (1)\n");
  EXPECT_EQ(run({"decompose", "1,1=1 over 2,3", "4,4"}).code, 2);
  EXPECT_EQ(run({"decompose", "1,1=1 over 2,3", "5,-4"}).code, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"solve", "1,1 = 1 over"}).code, 2);
  EXPECT_EQ(run({"solve", "garbage", "--exp-bound", "2"}).code, 2);
  EXPECT_EQ(run({"solve", "1,1,1,1=1 over 2,3,5", "--exp-bound", "6", "--ceiling", "1000"}).code, 3);
  EXPECT_EQ(run({"tseq", "violations", "--seq", "primes", "--c", "-1,-1,1", "--M", "1", "--horizon", "300",
                 "--budget", "10"})
                .code,
            3);
  EXPECT_EQ(run({"tseq", "check", "--seq", "primes", "--kmax", "3", "--horizon", "100", "--budget", "10"}).code, 3);
  EXPECT_EQ(run({"nope"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, TseqCommands) {
  auto c = run({"tseq", "check", "--seq", "geom 1*2^n + 1*3^n", "--kmax", "2", "--cbound", "2", "--mbound", "20",
                "--horizon", "50", "--format", "json-lines"});
  ASSERT_EQ(c.code, 0) << c.err;
  auto summary = nlohmann::json::parse(c.lines().back());
  EXPECT_EQ(summary["record"], "summary");
  EXPECT_EQ(summary["finite_tail"], summary["cells"]);
  EXPECT_NE(summary["caveat"].get<std::string>().find("not proof"), std::string::npos);

  auto v = run({"tseq", "violations", "--seq", "primes", "--c", "-1,1", "--M", "2", "--horizon", "10000", "--tail",
                "9000"});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_NE(v.out.find("status: violations-found"), std::string::npos);

  auto est = run({"tseq", "violations", "--seq", "primes", "--c", "-1,1", "--M", "2", "--horizon", "2000",
                  "--estimate-tail"});
  ASSERT_EQ(est.code, 0);
  EXPECT_NE(est.out.find("status: no-tail-found"), std::string::npos);

  EXPECT_EQ(run({"tseq", "universal", "--primes", "2,3", "--count", "8"}).out, "-1 1 -2 2 -3 3 -4 4\n");

  auto e = run({"tseq", "embed", "--primes", "2,3", "--d", "2,4,8,16,32", "--tail", "10"});
  EXPECT_EQ(e.out, "status: embedded\nk: 3\n");
  auto none = run({"tseq", "embed", "--primes", "2,3", "--d", "2,4", "--tail", "100"});
  EXPECT_EQ(none.code, 0);
  EXPECT_EQ(none.out, "status: no-tail-found\n");
  EXPECT_EQ(run({"tseq", "embed", "--primes", "2,3", "--seq", "geom 2^n + 3^n", "--count", "5"}).code, 2);
  EXPECT_EQ(run({"tseq", "embed", "--primes", "2,3", "--seq", "geom 6^n", "--count", "40", "--tail", "100"}).code, 0);
}

TEST(Cli, StructuredOutputRoundTrips) {
  const std::vector<std::vector<std::string>> commands = {
      {"enumerate", "--primes", "2,3,5", "--count", "30"},
      {"solve", "1,1,1=1 over 2,3", "--exp-bound", "2"},
      {"witness", "1,1=1 over 2,3", "--exp-bound", "6"},
      {"decompose", "1,1,1,1=1 over 2,3", "2,-2,3,-2"},
      {"tseq", "check", "--seq", "primes", "--kmax", "2", "--cbound", "1", "--mbound", "4", "--horizon", "40"},
      {"tseq", "violations", "--seq", "universal 2,3", "--c", "1,1", "--M", "5", "--horizon", "40"},
      {"tseq", "violations", "--seq", "primes", "--c", "1", "--M", "7", "--horizon", "40", "--estimate-tail"},
      {"tseq", "universal", "--primes", "2,3", "--count", "20"},
      {"tseq", "embed", "--primes", "2,3", "--d", "6,36,216", "--tail", "5"},
  };
  for (auto cmd : commands) {
    cmd.push_back("--format");
    cmd.push_back("json-lines");
    SCOPED_TRACE(cmd[0]);
    expect_round_trip(run(cmd));
  }
}

TEST(Cli, Deterministic) {
  std::vector<std::string> cmd = {"solve", "1,2,-3=1 over 2,3", "--exp-bound", "2", "--format", "json-lines"};
  auto a = run(cmd);
  auto threaded = cmd;
  threaded.insert(threaded.end(), {"--threads", "3"});
  EXPECT_EQ(a.out, run(cmd).out);
  EXPECT_EQ(a.out, run(threaded).out);
}
