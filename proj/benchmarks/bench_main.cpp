#include <benchmark/benchmark.h>

#include "rotorwalk/engine.hpp"
#include "rotorwalk/green.hpp"
#include "rotorwalk/odometer.hpp"

using namespace rotorwalk;

static void BM_EscapeUp(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const auto n = static_cast<std::uint64_t>(state.range(1));
    std::uint64_t steps = 0;
    for (auto _ : state) {
        const auto res = run_escape_experiment(Mechanism::standard(dim), DefaultRule::up(dim), n);
        steps += res.stats.steps_total;
        benchmark::DoNotOptimize(res.stats.escaped);
    }
    state.counters["steps/s"] = benchmark::Counter(static_cast<double>(steps), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_EscapeUp)->Args({2, 1000})->Args({2, 4000})->Args({3, 5000})->Unit(benchmark::kMillisecond);

static void BM_FiniteBallRandom(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        const auto res = run_finite_ball(Mechanism::standard(3), DefaultRule::iid_random(3, 1), n,
                                         Ball(3, Ball::default_radius(3, n)));
        benchmark::DoNotOptimize(res.exited);
    }
}
BENCHMARK(BM_FiniteBallRandom)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_Odometer(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        const auto run = compute_odometer(Mechanism::standard(2), DefaultRule::up(2), n,
                                          Ball(2, static_cast<std::int64_t>(n)));
        benchmark::DoNotOptimize(run.steps_total);
    }
}
BENCHMARK(BM_Odometer)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_GreenSor(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    const std::int64_t r = state.range(1);
    for (auto _ : state) {
        const GreenTable g = green_exact(dim, r);
        benchmark::DoNotOptimize(g.at_origin());
    }
}
BENCHMARK(BM_GreenSor)->Args({2, 64})->Args({2, 128})->Args({3, 16})->Args({3, 32})->Unit(benchmark::kMillisecond);

static void BM_AlphaSampler(benchmark::State& state) {
    const auto horizon = static_cast<std::uint64_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(alpha_mc(3, 1000, horizon, seed++).estimate);
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_AlphaSampler)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
