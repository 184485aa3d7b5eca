#include <benchmark/benchmark.h>

#include "islsim/allocation.hpp"
#include "islsim/graph.hpp"
#include "islsim/matching.hpp"

using namespace islsim;

namespace {

Constellation snapshot(int planes) {
  ConstellationConfig cfg;
  cfg.planes = planes;
  return Constellation(cfg).propagate(30.0);
}

void BM_BuildGraph(benchmark::State& state) {
  const Constellation c = snapshot(static_cast<int>(state.range(0)));
  const RadioConfig radio;
  for (auto _ : state) benchmark::DoNotOptimize(build_feasibility_graph(c, radio));
}
BENCHMARK(BM_BuildGraph)->DenseRange(5, 8);

void BM_Giem(benchmark::State& state) {
  const Constellation c = snapshot(static_cast<int>(state.range(0)));
  const RadioConfig radio;
  const FeasibilityGraph g = build_feasibility_graph(c, radio);
  for (auto _ : state) benchmark::DoNotOptimize(giem(g, 2, radio.min_rate));
}
BENCHMARK(BM_Giem)->DenseRange(5, 8);

void BM_Gmm(benchmark::State& state) {
  const Constellation c = snapshot(static_cast<int>(state.range(0)));
  const RadioConfig radio;
  const Matching prev = giem(build_feasibility_graph(c, radio), 2, radio.min_rate).matching;
  const FeasibilityGraph g = build_feasibility_graph(c.propagate(30.0), radio);
  for (auto _ : state) benchmark::DoNotOptimize(gmm(g, 2, radio.min_rate, prev));
}
BENCHMARK(BM_Gmm)->DenseRange(5, 8);

void BM_Geo(benchmark::State& state) {
  const Constellation c = snapshot(static_cast<int>(state.range(0)));
  const RadioConfig radio;
  const FeasibilityGraph g = build_feasibility_graph(c, radio);
  for (auto _ : state) benchmark::DoNotOptimize(geo(c, g, 2, radio.min_rate));
}
BENCHMARK(BM_Geo)->DenseRange(5, 8);

void BM_Gra(benchmark::State& state) {
  const Constellation c = snapshot(7);
  RadioConfig radio;
  radio.antenna = AntennaScenario::isotropic;
  const Matching m = giem(build_feasibility_graph(c, radio), 2, radio.min_rate).matching;
  const ResourceSet rs{static_cast<int>(state.range(0)), AccessScheme::ofdma};
  for (auto _ : state) benchmark::DoNotOptimize(gra(c, radio, rs, m));
}
BENCHMARK(BM_Gra)->Arg(1)->Arg(3)->Arg(7);

}  // namespace
BENCHMARK_MAIN();
