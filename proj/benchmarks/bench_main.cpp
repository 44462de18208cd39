#include "ppring/analysis.hpp"
#include "ppring/harness.hpp"
#include "ppring/lottery.hpp"
#include "ppring/orientation.hpp"
#include "ppring/scheduler.hpp"
#include "ppring/simulation.hpp"

#include <benchmark/benchmark.h>

using namespace ppring;

static void BM_StepRandom(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    auto config = random_configuration(make_params(n), 1);
    Scheduler sch(2, n);
    for (auto _ : state)
        step_in_place(config, sch.next());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StepRandom)->Arg(16)->Arg(64)->Arg(1024);

static void BM_StepSafe(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    auto config = construct_S_PL(make_params(n), 1);
    Scheduler sch(2, n);
    for (auto _ : state)
        step_in_place(config, sch.next());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StepSafe)->Arg(16)->Arg(64);

static void BM_InSPL(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    const auto config = construct_S_PL(make_params(n), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(in_S_PL(config));
}
BENCHMARK(BM_InSPL)->Arg(16)->Arg(64)->Arg(1024);

static void BM_ConvergeToSafe(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    ExperimentSpec spec;
    spec.n_values = {n};
    std::uint64_t seed = 0;
    for (auto _ : state)
    {
        spec.base_seed = ++seed;
        benchmark::DoNotOptimize(run_trial(spec, n, 0));
    }
}
BENCHMARK(BM_ConvergeToSafe)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_OrientStep(benchmark::State &state)
{
    const int n = static_cast<int>(state.range(0));
    auto config = generate_two_hop_coloring(n, 1);
    ArcScheduler sch(2, n);
    for (auto _ : state)
        orient_step(config, sch.next());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_OrientStep)->Arg(64);

static void BM_Lottery(benchmark::State &state)
{
    std::uint64_t seed = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(play_lottery(4, 256, ++seed));
}
BENCHMARK(BM_Lottery);
BENCHMARK_MAIN();
