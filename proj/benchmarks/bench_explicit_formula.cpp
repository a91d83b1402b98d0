// Needs a zero table reaching 2e5; set PSIBOUND_ZEROS to its path.
#include <benchmark/benchmark.h>

#include <psibound/bound_assembly.hpp>
#include <psibound/explicit_formula.hpp>
#include <psibound/zeros.hpp>

#include <cstdlib>
#include <optional>

namespace {

const psibound::ZeroTable* zeros() {
    static const std::optional<psibound::ZeroTable> table = []() -> std::optional<psibound::ZeroTable> {
        const char* path = std::getenv("PSIBOUND_ZEROS");
        if (!path) return std::nullopt;
        return psibound::load_zeros(path);
    }();
    return table ? &*table : nullptr;
}

void BM_ZeroSum(benchmark::State& state) {
    const psibound::ZeroTable* t = zeros();
    if (!t) {
        state.SkipWithError("PSIBOUND_ZEROS not set");
        return;
    }
    const psibound::MollifierParams p{18.0, 1e-4, 0.0};
    const psibound::CoefficientSet cs = psibound::make_coefficients(*t, p, 1.8e5);
    double x = 1e6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(psibound::zero_sum(x, cs));
        x += 1.0;
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cs.size()));
}
BENCHMARK(BM_ZeroSum)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
    const psibound::ZeroTable* t = zeros();
    if (!t) {
        state.SkipWithError("PSIBOUND_ZEROS not set");
        return;
    }
    psibound::PipelineConfig config;
    config.x0 = 1e7;
    config.t_available = t->t_max();
    for (auto _ : state) benchmark::DoNotOptimize(psibound::run_pipeline(config, *t));
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
