#include <benchmark/benchmark.h>

#include "tropdiv/break_divisors.hpp"
#include "tropdiv/families.hpp"
#include "tropdiv/jacobian.hpp"
#include "tropdiv/parallel.hpp"
#include "tropdiv/rank_apps.hpp"
#include "tropdiv/spanning_trees.hpp"

using namespace tropdiv;

namespace {

// Arg 0 runs the serial reference, arg 1 the OpenMP kernel.
Execution mode(benchmark::State& state) {
  Execution exec = state.range(0) == 0 ? Execution::serial : Execution::parallel;
  state.SetLabel(exec == Execution::serial ? "serial" : "parallel x" + std::to_string(worker_count()));
  return exec;
}

void BM_SpanningTrees(benchmark::State& state) {
  Execution exec = mode(state);
  FiniteGraph g = families::complete(6);
  for (auto _ : state) benchmark::DoNotOptimize(spanning_trees(g, 10'000'000, exec).size());
}
BENCHMARK(BM_SpanningTrees)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BreakEnumeration(benchmark::State& state) {
  Execution exec = mode(state);
  FiniteGraph g = families::complete(5);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_integral_break_divisors(g, exec));
}
BENCHMARK(BM_BreakEnumeration)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OrientationLaw(benchmark::State& state) {
  Execution exec = mode(state);
  FiniteGraph g = families::complete_bipartite(2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(orientation_rank_law(g, exec));
}
BENCHMARK(BM_OrientationLaw)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_BrillNoetherRank(benchmark::State& state) {
  Execution exec = mode(state);
  FiniteGraph g = families::complete(4);
  for (auto _ : state) benchmark::DoNotOptimize(brill_noether_rank(g, 1, 3, exec));
}
BENCHMARK(BM_BrillNoetherRank)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Gonality(benchmark::State& state) {
  Execution exec = mode(state);
  MetricGraph g = MetricGraph::unit(families::complete(4));
  for (auto _ : state) benchmark::DoNotOptimize(gonality(g, 3, 1, exec));
}
BENCHMARK(BM_Gonality)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Zhang(benchmark::State& state) {
  Execution exec = mode(state);
  MetricGraph g = MetricGraph::unit(families::petersen());
  for (auto _ : state) benchmark::DoNotOptimize(zhang_measure(g, exec));
}
BENCHMARK(BM_Zhang)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
