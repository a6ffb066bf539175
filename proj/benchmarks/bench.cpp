#include <benchmark/benchmark.h>

#include "demonwalk/envelope.hpp"
#include "demonwalk/oracle.hpp"
#include "demonwalk/strategies.hpp"

using namespace demonwalk;

static void BM_StepCircular(benchmark::State& state) {
    Track track(9);
    RngStream stream = derive_stream(Seed{1}, 0);
    WalkState walk{0, 0};
    for (auto _ : state) {
        walk = step_circular(track, walk, flip_coin(stream));
        benchmark::DoNotOptimize(walk);
    }
}
BENCHMARK(BM_StepCircular);

static void BM_PostdictionTrial(benchmark::State& state) {
    Track track(static_cast<int>(state.range(0)));
    RngStream stream = derive_stream(Seed{1}, 0);
    for (auto _ : state) {
        auto event = run_postdiction_trial(track, stream);
        benchmark::DoNotOptimize(event);
    }
}
BENCHMARK(BM_PostdictionTrial)->Arg(9)->Arg(41);

static void BM_PredictionStep(benchmark::State& state) {
    Track track(9);
    RngStream stream = derive_stream(Seed{1}, 0);
    const Policy policy = Policy::pointer();
    WalkState walk{0, 0};
    for (auto _ : state) {
        auto [next, event] = run_prediction_step(track, walk, GridPoint{1}, policy, stream);
        benchmark::DoNotOptimize(event);
        walk = next;
    }
}
BENCHMARK(BM_PredictionStep);

static void BM_DemonRecordedStep(benchmark::State& state) {
    Track track(9);
    RngStream stream = derive_stream(Seed{1}, 0);
    DemonLedger ledger(9, BinMode::CurrentStation, 1e-3, 1000);
    WalkState walk{0, 0};
    for (auto _ : state) {
        auto [next, event] = run_prediction_step(track, walk, GridPoint{1},
                                                 ledger.current_policy(), stream);
        ledger.record(event);
        walk = next;
    }
}
BENCHMARK(BM_DemonRecordedStep);

static void BM_SimulateBets(benchmark::State& state) {
    const EnvelopePair pair(1, 2);
    const auto dist = ThresholdDistribution::uniform(0, 4);
    RngStream stream = derive_stream(Seed{1}, 0);
    for (auto _ : state) {
        auto tally = simulate_bets(pair, dist, 1000, stream);
        benchmark::DoNotOptimize(tally);
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SimulateBets);

static void BM_ExactPredictionTable(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto table = exact_prediction_table(n, GridPoint{1});
        benchmark::DoNotOptimize(table);
    }
}
BENCHMARK(BM_ExactPredictionTable)->Arg(9)->Arg(41);

static void BM_ExactLineTable(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto table = exact_line_table(n);
        benchmark::DoNotOptimize(table);
    }
}
BENCHMARK(BM_ExactLineTable)->Arg(5)->Arg(41);

BENCHMARK_MAIN();
