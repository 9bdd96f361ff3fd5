#include <benchmark/benchmark.h>

#include <random>

#include "goalbench/benchmarking.hpp"
#include "goalbench/io.hpp"
#include "goalbench/oracle.hpp"
#include "goalbench/payments.hpp"
#include "support/fixtures.hpp"

using namespace goalbench;

namespace {

const Dataset & table1()
{
  static const Dataset d = load_dataset(fixtures::table1_dir());
  return d;
}

Dataset synthetic(std::size_t indicators, std::size_t dmus, std::size_t group_size)
{
  std::mt19937_64 rng(7);
  return fixtures::random_instance(rng, {indicators, dmus, group_size});
}

void BM_Payment(benchmark::State & state)
{
  double s = -3.0;
  for(auto _ : state)
  {
    benchmark::DoNotOptimize(payment(s, 25.0, 0.5, 4.0));
    s = s > 6.0 ? -3.0 : s + 0.01;
  }
}
BENCHMARK(BM_Payment);

void BM_ExtremeEfficientSet(benchmark::State & state)
{
  const auto d = synthetic(3, static_cast<std::size_t>(state.range(0)), 1);
  for(auto _ : state) benchmark::DoNotOptimize(extreme_efficient_set(d));
}
BENCHMARK(BM_ExtremeEfficientSet)->Arg(6)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_Table1(benchmark::State & state)
{
  EngineSettings settings;
  settings.grouping_mode = state.range(0) == 0 ? GroupingMode::Singletons : GroupingMode::SingleGroup;
  for(auto _ : state) benchmark::DoNotOptimize(run_analysis(table1(), settings));
}
BENCHMARK(BM_Table1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SolveGroup(benchmark::State & state)
{
  const auto d = synthetic(3, 12, static_cast<std::size_t>(state.range(0)));
  const auto efficient = extreme_efficient_set(d);
  const auto capabilities = make_backend("highs")->capabilities();
  const auto problem = build_problem(d.grouping.groups.front(), d, efficient, {}, capabilities);
  for(auto _ : state) benchmark::DoNotOptimize(solve_group(problem, d, {}));
}
BENCHMARK(BM_SolveGroup)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State & state)
{
  const auto d = synthetic(2, 8, static_cast<std::size_t>(state.range(0)));
  const auto efficient = extreme_efficient_set(d);
  for(auto _ : state) benchmark::DoNotOptimize(oracle::solve_group(d.grouping.groups.front(), d, efficient));
}
BENCHMARK(BM_Oracle)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
