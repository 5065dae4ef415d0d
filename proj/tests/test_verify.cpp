#include <gtest/gtest.h>

#include "lve/denote.hpp"
#include "lve/network.hpp"
#include "lve/ordering.hpp"
#include "lve/verify.hpp"
#include "oracle/oracle.hpp"
#include "support.hpp"

using namespace lve;
using support::error_kind;

TEST(Generator, Deterministic) {
  GeneratorConfig cfg;
  cfg.seed = 42;
  cfg.nodes = 8;
  EXPECT_EQ(to_json(random_network(cfg)), to_json(random_network(cfg)));
  auto other = cfg;
  other.seed = 43;
  EXPECT_NE(to_json(random_network(cfg)), to_json(random_network(other)));
}

TEST(Generator, SingleNode) {
  GeneratorConfig cfg;
  cfg.seed = 0;
  cfg.nodes = 1;
  cfg.max_parents = 0;
  auto net = random_network(cfg);
  ASSERT_EQ(net.nodes.size(), 1u);
  EXPECT_TRUE(net.nodes[0].parents.empty());
  EXPECT_EQ(net.query, std::vector<std::string>{net.nodes[0].var});
  auto l = ingest_network(net).term;
  EXPECT_LE(support::max_abs_diff(brute_force_joint(l), net.nodes[0].cpt), 1e-12);
}

TEST(Generator, Invariants) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.nodes = 2 + seed % 7;
    cfg.max_parents = 3;
    auto net = random_network(cfg);
    ASSERT_EQ(net.nodes.size(), cfg.nodes);
    std::set<std::string> earlier, parents;
    for (const auto& n : net.nodes) {
      EXPECT_LE(n.parents.size(), cfg.max_parents);
      for (const auto& p : n.parents) {
        EXPECT_TRUE(earlier.count(p));
        parents.insert(p);
      }
      earlier.insert(n.var);
      for (std::size_t r = 0; r < n.cpt.size(); r += 2) {
        EXPECT_NEAR(n.cpt[r] + n.cpt[r + 1], 1.0, 1e-12);
        EXPECT_GE(n.cpt[r], 0.0);
      }
    }
    // sinks are always queried
    for (const auto& n : net.nodes) {
      if (!parents.count(n.var)) {
        EXPECT_NE(std::find(net.query.begin(), net.query.end(), n.var), net.query.end());
      }
    }
    EXPECT_GE(net.query.size(), std::min<std::size_t>(cfg.query_size, cfg.nodes));
    EXPECT_NO_THROW(ingest_network(net));
  }
}

TEST(BruteForce, AgreesWithCptEnumeration) {
  auto net = parse_network_json(read_file(support::fixture("chain6.json")));
  auto l = ingest_network(net).term;
  EXPECT_LE(support::max_abs_diff(brute_force_joint(l), oracle::network_joint(net)), 1e-12);
  EXPECT_LE(support::max_abs_diff(brute_force_joint(l), denote(l).entries), 1e-12);
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.nodes = 8;
    cfg.max_parents = 3;
    auto n = random_network(cfg);
    EXPECT_LE(support::max_abs_diff(brute_force_joint(ingest_network(n).term), oracle::network_joint(n)),
              1e-12)
        << seed;
  }
}

TEST(BruteForce, CoinCopy) {
  auto p = support::parse("matrix C : -> Bool = [0.3, 0.7];\nv = C; w = v; in (v, w)");
  EXPECT_LE(support::max_abs_diff(brute_force_joint(p.term), {0.3, 0, 0, 0.7}), 1e-12);
}

TEST(BruteForce, Limits) {
  GeneratorConfig cfg;
  cfg.nodes = 6;
  auto l = ingest_network(random_network(cfg)).term;
  EXPECT_EQ(error_kind([&] { brute_force_joint(l, 32); }), "WebCapExceeded");
  auto open = support::parse("matrix N : Bool -> Bool = [1, 0; 0, 1];\ny = N(x); in y");
  EXPECT_EQ(error_kind([&] { brute_force_joint(open.term); }), "NotClosed");
}

TEST(Compare, NetworkPaths) {
  auto l = support::chain6().term;
  std::vector<std::string> good{"x1", "x2", "x4", "x5"}, bad{"x5", "x4", "x2", "x1"};
  auto c = compare_paths(l, good);
  EXPECT_TRUE(c.ok) << c.text();
  EXPECT_LE(c.max_discrepancy, 1e-9);
  EXPECT_EQ(c.path("vef").max_table, 16u);
  EXPECT_EQ(compare_paths(l, bad).path("vef").max_table, 32u);
  for (const char* name : {"denote", "facts", "vef", "vel"}) EXPECT_NO_THROW(c.path(name));
}

TEST(Orders, SuiteOrders) {
  auto l = support::chain6().term;
  auto orders = suite_orders(l, 3);
  std::vector<std::string> labels;
  for (const auto& [label, order] : orders) labels.push_back(label);
  EXPECT_EQ(labels, (std::vector<std::string>{"identity", "reverse", "random", "min-degree", "subset"}));
  EXPECT_EQ(orders[0].second, (std::vector<std::string>{"x1", "x2", "x4", "x5"}));
  EXPECT_EQ(orders[1].second, (std::vector<std::string>{"x5", "x4", "x2", "x1"}));
  auto md = min_degree_order(l);
  EXPECT_EQ(md.size(), 4u);
  EXPECT_EQ(orders[3].second, md);
}

TEST(Suite, SmallBatchPasses) {
  std::vector<GeneratorConfig> cfgs;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorConfig c;
    c.seed = seed;
    c.nodes = 3 + seed % 4;
    cfgs.push_back(c);
  }
  auto r = run_suite(cfgs);
  EXPECT_EQ(r.instances, 20u);
  EXPECT_EQ(r.failures(), 0u) << r.lines();
  EXPECT_GT(r.results.size(), 20u * 10u);
}

TEST(Suite, EmptyBatch) {
  auto r = run_suite({});
  EXPECT_EQ(r.instances, 0u);
  EXPECT_TRUE(r.results.empty());
  EXPECT_EQ(r.lines(), "");
}

TEST(Suite, ReplayIsIdentical) {
  GeneratorConfig c;
  c.seed = 77;
  c.nodes = 6;
  std::vector<GeneratorConfig> one{c};
  EXPECT_EQ(run_suite(one).lines(), run_suite(one).lines());
}
