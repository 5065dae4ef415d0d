#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "support.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = lve::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string chain6() { return support::fixture("chain6.lve").string(); }

bool contains(const std::string& s, const std::string& part) {
  return s.find(part) != std::string::npos;
}

}  // namespace

TEST(Cli, Check) {
  auto r = run({"check", chain6()});
  EXPECT_EQ(r.code, lve::cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "type: Bool * Bool"));
  EXPECT_TRUE(contains(r.out, "size: 20"));
}

TEST(Cli, Denote) {
  auto r = run({"denote", chain6()});
  EXPECT_EQ(r.code, lve::cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "(t, t)  0.231453125"));
  EXPECT_TRUE(contains(r.out, "(f, f)  0.3120625"));

  r = run({"denote", support::fixture("chain6.json").string(), "--json"});
  ASSERT_EQ(r.code, lve::cli::kOk) << r.err;
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["columns"][1], "(t, f)");
  EXPECT_NEAR(doc["entries"][0][1].get<double>(), 0.393546875, 1e-12);
}

TEST(Cli, CompareReportsTableSizes) {
  auto r = run({"compare", chain6(), "--order", "x1,x2,x4,x5"});
  EXPECT_EQ(r.code, lve::cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "max_table 16, multiply_adds 84\n")) << r.out;
  EXPECT_TRUE(contains(r.out, "(agree)"));

  r = run({"compare", chain6(), "--order", "x5,x4,x2,x1"});
  EXPECT_EQ(r.code, lve::cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "max_table 32, multiply_adds 168\n")) << r.out;
}

TEST(Cli, VefAndCost) {
  auto r = run({"vef", chain6(), "--order", "x1,x2,x4,x5"});
  EXPECT_EQ(r.code, lve::cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "max table 16"));
  r = run({"cost", chain6(), "--order", "x1,x2,x4,x5"});
  EXPECT_EQ(r.code, lve::cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "term size 20 ->"));
}

TEST(Cli, VelTraceAndTerm) {
  auto r = run({"vel", chain6(), "--order", "x1,x2,x4,x5", "--trace"});
  EXPECT_EQ(r.code, lve::cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "step 14: Swap3"));
  EXPECT_FALSE(contains(r.out, "step 15:"));

  r = run({"vel", chain6(), "--order", "x1", "--emit-term"});
  EXPECT_EQ(r.code, lve::cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "matrix M1"));
  auto p = lve::parse_program(r.out);
  EXPECT_EQ(p.term.defs.size(), 5u);

  auto s = run({"vel", chain6(), "--order", "x1,x2", "--emit-term", "--simplify"});
  EXPECT_EQ(s.code, lve::cli::kOk) << s.err;
  EXPECT_NO_THROW(lve::parse_program(s.out));
}

TEST(Cli, FactsAndOrderings) {
  auto r = run({"facts", chain6()});
  EXPECT_EQ(r.code, lve::cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "factor 7"));
  EXPECT_FALSE(contains(r.out, "factor 8"));
  r = run({"orderings", chain6(), "--heuristic", "min-degree"});
  EXPECT_EQ(r.code, lve::cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "min-degree (heuristic): "));
}

TEST(Cli, SuiteAndGenerate) {
  auto r = run({"--seed", "5", "suite", "--instances", "5", "--nodes", "5"});
  EXPECT_EQ(r.code, lve::cli::kOk) << r.err << r.out;
  EXPECT_TRUE(contains(r.out, "5 instances"));
  EXPECT_TRUE(contains(r.out, " 0 failures"));

  auto g1 = run({"--seed", "9", "generate", "--nodes", "5"});
  auto g2 = run({"--seed", "9", "generate", "--nodes", "5"});
  EXPECT_EQ(g1.code, lve::cli::kOk);
  EXPECT_EQ(g1.out, g2.out);
  EXPECT_NO_THROW(nlohmann::json::parse(g1.out));
}

TEST(Cli, InputErrors) {
  auto r = run({"vef", chain6(), "--order", "x1,x9"});
  EXPECT_EQ(r.code, lve::cli::kInputError);
  EXPECT_TRUE(contains(r.err, "UnknownVariable")) << r.err;

  r = run({"check", support::fixture("nope.lve").string()});
  EXPECT_EQ(r.code, lve::cli::kInputError);
  EXPECT_TRUE(contains(r.err, "IoError")) << r.err;

  r = run({"vel", chain6(), "--order", "x3"});
  EXPECT_EQ(r.code, lve::cli::kInputError);
  EXPECT_TRUE(contains(r.err, "InOutput")) << r.err;

  r = run({"frobnicate"});
  EXPECT_EQ(r.code, lve::cli::kInputError);

  r = run({"denote", chain6(), "--web-cap", "2"});
  EXPECT_EQ(r.code, lve::cli::kInputError);
  EXPECT_TRUE(contains(r.err, "WebCapExceeded")) << r.err;
}

TEST(Cli, StochasticFlag) {
  auto path = std::filesystem::temp_directory_path() / "lve_cli_unnormalised.lve";
  {
    std::ofstream f(path);
    f << "matrix M : -> Bool = [0.5, 0.7];\nx = M; in x\n";
  }
  auto r = run({"denote", path.string()});
  EXPECT_EQ(r.code, lve::cli::kInputError);
  EXPECT_TRUE(contains(r.err, "NotStochastic")) << r.err;
  r = run({"--no-stochastic-check", "denote", path.string()});
  EXPECT_EQ(r.code, lve::cli::kOk) << r.err;
  EXPECT_TRUE(contains(r.out, "0.7"));
  std::filesystem::remove(path);
}

TEST(Cli, OutputIsStable) {
  auto a = run({"compare", chain6(), "--order", "x2,x1,x5,x4"});
  auto b = run({"compare", chain6(), "--order", "x2,x1,x5,x4"});
  EXPECT_EQ(a.out, b.out);
}
