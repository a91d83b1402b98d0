#include <benchmark/benchmark.h>

#include <psibound/trig_eval.hpp>

#include <numbers>
#include <random>

namespace {

psibound::TrigSum random_sum(std::size_t n) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    psibound::TrigSum s;
    for (std::size_t j = 0; j < n; ++j) {
        s.freqs.push_back(U(rng) * 2 * std::numbers::pi);
        s.coeffs.push_back(std::polar(U(rng), U(rng) * 2 * std::numbers::pi));
    }
    return s;
}

void BM_FftMultiEval(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const psibound::TrigSum s = random_sum(n);
    const double tol = std::max(1.0 / (double(n) * double(n)), 1e-9);
    for (auto _ : state) benchmark::DoNotOptimize(psibound::fft_multi_eval(s, static_cast<std::int64_t>(n), tol));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FftMultiEval)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity()->Unit(benchmark::kMillisecond);

// Direct evaluation at the same 2N+1 points, for comparison.
void BM_DirectEval(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const psibound::TrigSum s = random_sum(n);
    const auto Y = static_cast<std::int64_t>(n);
    for (auto _ : state)
        for (std::int64_t y = -Y; y <= Y; ++y) benchmark::DoNotOptimize(psibound::direct_eval(s, static_cast<double>(y)));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DirectEval)->RangeMultiplier(4)->Range(1 << 10, 1 << 12)->Complexity()->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
