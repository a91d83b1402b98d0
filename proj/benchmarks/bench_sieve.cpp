#include <benchmark/benchmark.h>

#include <psibound/oracle_sieve.hpp>

namespace {

void BM_SieveRange(benchmark::State& state) {
    const auto hi = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(psibound::sieve_range(0, hi));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SieveRange)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

void BM_RemainderExtrema(benchmark::State& state) {
    const auto hi = static_cast<std::uint64_t>(state.range(0));
    const psibound::SieveTables s = psibound::sieve_range(0, hi);
    for (auto _ : state) benchmark::DoNotOptimize(psibound::remainder_extrema(s, 100.0, static_cast<double>(hi)));
}
BENCHMARK(BM_RemainderExtrema)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
