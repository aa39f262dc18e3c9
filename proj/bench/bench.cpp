// Serial reference vs OpenMP kernels on synthetic graphs.
#include <benchmark/benchmark.h>

#include <map>

#include "mathkg/dataset.hpp"
#include "mathkg/query.hpp"
#include "mathkg/recommender.hpp"
#include "mathkg/synthetic.hpp"
#include "mathkg/validator.hpp"

namespace {

using namespace mathkg;

const Graph& graph_for(int64_t entities) {
  static std::map<int64_t, Graph> cache;
  auto it = cache.find(entities);
  if (it == cache.end()) it = cache.emplace(entities, synthetic_graph(entities, entities * 10, 1)).first;
  return it->second;
}

const query::SelectQuery& fruit() {
  static const query::SelectQuery q =
      query::parse_query(read_text(std::string(MATHKG_SOURCE_DIR) + "/queries/fruit.rq"));
  return q;
}

Execution mode(const benchmark::State& state) { return state.range(1) ? Execution::Parallel : Execution::Serial; }

void BM_FruitQuery(benchmark::State& state) {
  const Graph& g = graph_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(query::evaluate(g, fruit(), {.execution = mode(state)}));
  state.SetLabel(state.range(1) ? "parallel" : "serial");
}

void BM_Validate(benchmark::State& state) {
  const Graph& g = graph_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(validate(g, mode(state)));
  state.SetLabel(state.range(1) ? "parallel" : "serial");
}

void BM_Recommend(benchmark::State& state) {
  const Graph& g = graph_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(recommend(g, mmdb("GravitationalEffectsOnFruit"), mode(state)));
  state.SetLabel(state.range(1) ? "parallel" : "serial");
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int64_t n : {1000, 5000}) {
    b->Args({n, 0});
    b->Args({n, 1});
  }
  b->Unit(benchmark::kMillisecond);
}

BENCHMARK(BM_FruitQuery)->Apply(sizes);
BENCHMARK(BM_Validate)->Apply(sizes);
BENCHMARK(BM_Recommend)->Apply(sizes);

}  // namespace

BENCHMARK_MAIN();
