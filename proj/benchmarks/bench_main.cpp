#include <benchmark/benchmark.h>

#include <numbers>

#include "kmbqkd/protocol_sim.hpp"
#include "kmbqkd/rates_kmb09.hpp"
#include "kmbqkd/rates_variant.hpp"
#include "kmbqkd/sweep_analysis.hpp"

namespace {

using namespace kmbqkd;

constexpr double kDeg = std::numbers::pi / 180.0;

void BM_Kmb09Rates(benchmark::State& state) {
    double theta3 = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kmb09_rates({54 * kDeg, theta3, 3.0}));
        theta3 += 1e-6;
    }
}
BENCHMARK(BM_Kmb09Rates);

void BM_VariantRates(benchmark::State& state) {
    double theta3 = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(variant_rates({110 * kDeg, 225 * kDeg, 0.0, theta3, 3.0}));
        theta3 += 1e-6;
    }
}
BENCHMARK(BM_VariantRates);

void BM_SweepEve(benchmark::State& state) {
    const auto spec = ProtocolSpec::variant(65 * kDeg, 65 * kDeg, 280 * kDeg);
    const auto grid = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sweep_eve(spec, grid));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid * grid));
}
BENCHMARK(BM_SweepEve)->Arg(90)->Arg(360)->Unit(benchmark::kMillisecond);

void BM_FitSignature(benchmark::State& state) {
    const auto records = sweep_eve(ProtocolSpec::kmb09(54 * kDeg), 360);
    for (auto _ : state) benchmark::DoNotOptimize(fit_signature(records));
}
BENCHMARK(BM_FitSignature)->Unit(benchmark::kMillisecond);

void BM_RunSession(benchmark::State& state) {
    const auto spec = ProtocolSpec::variant(90 * kDeg, 90 * kDeg, 90 * kDeg);
    SessionOptions opts;
    opts.n_photons = static_cast<std::uint64_t>(state.range(0));
    opts.seed = 1;
    opts.keep_trace = state.range(1) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_session(spec, EveStrategy::intercept_resend(0.3, 1.2), NoiseSpec{0.01}, opts));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunSession)->Args({100000, 0})->Args({100000, 1})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
