// Microbenchmarks for the pipeline phases on random regular graphs.

#include <benchmark/benchmark.h>

#include <map>
#include <utility>

#include "regtsp/cycle_cover_coloring.hpp"
#include "regtsp/generators.hpp"
#include "regtsp/long_cycles.hpp"
#include "regtsp/regular_decompose.hpp"
#include "regtsp/rng.hpp"
#include "regtsp/tour.hpp"

namespace {

using namespace regtsp;

const Graph& instance(Vertex n, unsigned k) {
  static std::map<std::pair<Vertex, unsigned>, Graph> cache;
  auto it = cache.find({n, k});
  if (it == cache.end()) it = cache.emplace(std::pair{n, k}, gen_random_regular(n, k, 1)).first;
  return it->second;
}

void args(benchmark::internal::Benchmark* b) {
  for (auto [n, k] : {std::pair{10000, 16}, {10000, 64}, {20000, 64}, {2000, 256}}) b->Args({n, k});
  b->Unit(benchmark::kMillisecond);
}

void BM_RegularSubgraph(benchmark::State& state) {
  const Digraph d = bidirect(instance(static_cast<Vertex>(state.range(0)), static_cast<unsigned>(state.range(1))));
  const unsigned target = static_cast<unsigned>(state.range(1)) / 2;
  for (auto _ : state) benchmark::DoNotOptimize(regular_subgraph(d, target));
}
BENCHMARK(BM_RegularSubgraph)->Apply(args);

void BM_Coloring(benchmark::State& state) {
  const Digraph d = bidirect(instance(static_cast<Vertex>(state.range(0)), static_cast<unsigned>(state.range(1))));
  Rng rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(rand_cycle_cover_coloring(d, rng));
}
BENCHMARK(BM_Coloring)->Apply(args);

void BM_Randomized(benchmark::State& state) {
  const Graph& g = instance(static_cast<Vertex>(state.range(0)), static_cast<unsigned>(state.range(1)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(randomized_tsp(g, ++seed));
}
BENCHMARK(BM_Randomized)->Apply(args);

void BM_Deterministic(benchmark::State& state) {
  const Graph& g = instance(static_cast<Vertex>(state.range(0)), static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(deterministic_tsp(g));
}
BENCHMARK(BM_Deterministic)->Apply(args);

}  // namespace

BENCHMARK_MAIN();
