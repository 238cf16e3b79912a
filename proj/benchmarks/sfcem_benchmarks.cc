#include <benchmark/benchmark.h>

#include "sfcem/drl.h"
#include "sfcem/oracle.h"
#include "sfcem/routing.h"
#include "support/fixtures.h"

namespace sfcem {
namespace {

// Chain routing for every request of a full-size scenario.
void BM_RouteChainLinks(benchmark::State& state) {
  const auto set = testing::MakeScenarios(
      testing::Shape{10, 12, 4, 3, static_cast<int>(state.range(0)), 6, 3}, 1, 1);
  const Scenario& sc = set[0];
  for (auto _ : state) {
    benchmark::DoNotOptimize(RouteChainLinks(sc.network, sc.initial_placement, sc, 0));
  }
}
BENCHMARK(BM_RouteChainLinks)->Arg(10)->Arg(50)->Arg(100);

void BM_TrainEpisodes(benchmark::State& state) {
  const auto set = testing::MakeScenarios(testing::Shape{10, 12, 4, 3, 50, 6, 3}, 4, 2);
  TrainingConfig c;
  c.episodes = 10;
  c.filter_mode = static_cast<FilterMode>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Train(set, c));
  state.SetItemsProcessed(state.iterations() * c.episodes);
}
BENCHMARK(BM_TrainEpisodes)
    ->Arg(static_cast<int>(FilterMode::kNone))
    ->Arg(static_cast<int>(FilterMode::kHybrid))
    ->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const auto set = testing::MakeScenarios(testing::Shape{2, 2, 2, 1, 2, 2, 1}, 1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(EnumerateOptimal(set[0], {}));
}
BENCHMARK(BM_Oracle)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace sfcem

BENCHMARK_MAIN();
