#include <benchmark/benchmark.h>

#include <filesystem>

#include "lve/denote.hpp"
#include "lve/facts.hpp"
#include "lve/network.hpp"
#include "lve/ordering.hpp"
#include "lve/parser.hpp"
#include "lve/rewrite.hpp"
#include "lve/verify.hpp"

namespace {

lve::LetTerm chain6() {
  return lve::load_program(std::filesystem::path(LVE_FIXTURES_DIR) / "chain6.lve").term;
}

lve::LetTerm random_term(std::size_t nodes) {
  lve::GeneratorConfig cfg;
  cfg.seed = 11;
  cfg.nodes = nodes;
  cfg.max_parents = 2;
  cfg.query_size = 2;
  return lve::ingest_network(lve::random_network(cfg)).term;
}

void BM_DenoteChain6(benchmark::State& state) {
  auto l = chain6();
  for (auto _ : state) benchmark::DoNotOptimize(lve::denote(l));
}
BENCHMARK(BM_DenoteChain6);

void BM_VefChain6(benchmark::State& state) {
  auto g = lve::facts(chain6());
  std::vector<std::string> order{"x1", "x2", "x4", "x5"};
  for (auto _ : state) benchmark::DoNotOptimize(lve::vef(g, order));
}
BENCHMARK(BM_VefChain6);

void BM_VelChain6(benchmark::State& state) {
  auto l = chain6();
  std::vector<std::string> order{"x1", "x2", "x4", "x5"};
  for (auto _ : state) benchmark::DoNotOptimize(lve::vel_seq(l, order));
}
BENCHMARK(BM_VelChain6);

void BM_DenoteRandom(benchmark::State& state) {
  auto l = random_term(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lve::denote(l));
}
BENCHMARK(BM_DenoteRandom)->DenseRange(4, 12, 4);

void BM_VefRandom(benchmark::State& state) {
  auto l = random_term(static_cast<std::size_t>(state.range(0)));
  auto g = lve::facts(l);
  auto order = lve::min_degree_order(l);
  for (auto _ : state) benchmark::DoNotOptimize(lve::vef(g, order));
}
BENCHMARK(BM_VefRandom)->DenseRange(4, 16, 4);

void BM_VelRandom(benchmark::State& state) {
  auto l = random_term(static_cast<std::size_t>(state.range(0)));
  auto order = lve::min_degree_order(l);
  for (auto _ : state) benchmark::DoNotOptimize(lve::vel_seq(l, order));
}
BENCHMARK(BM_VelRandom)->DenseRange(4, 16, 4);

}  // namespace

BENCHMARK_MAIN();
