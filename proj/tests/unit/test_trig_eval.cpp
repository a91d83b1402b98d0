#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "psibound/errors.hpp"
#include "psibound/trig_eval.hpp"

using namespace psibound;

namespace {

TrigSum random_sum(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    TrigSum s;
    for (std::size_t j = 0; j < n; ++j) {
        s.freqs.push_back(U(rng) * 2 * std::numbers::pi);
        s.coeffs.push_back(std::polar(U(rng), U(rng) * 2 * std::numbers::pi));
    }
    return s;
}

}  // namespace

TEST_CASE("chebyshev correction meets its bound") {
    const ChebCorrection P = cheb_correction(8, std::numbers::pi / 2);
    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double t = -1.0 + 2.0 * i / 2000;
        worst = std::max(worst, std::abs(P(t) - std::exp(std::complex<double>(0.0, t * std::numbers::pi / 2))));
    }
    CHECK(worst <= P.err_bound + P.coeff_error + 1e-15);
    CHECK(cheb_error_bound(8, std::numbers::pi / 2) == doctest::Approx(P.err_bound));
}

TEST_CASE("fft multi-evaluation matches direct evaluation") {
    const TrigSum s = random_sum(1024, 11);
    const MultiEvalResult r = fft_multi_eval(s, 1024, 1e-8);
    CHECK(r.error_bound <= 1e-8);
    CHECK(r.R == 1024);
    for (std::int64_t y = -1024; y <= 1024; y += 7) CHECK(std::abs(r.at(y) - direct_eval(s, static_cast<double>(y))) <= r.error_bound);
}

TEST_CASE("unreachable accuracy is reported") {
    const TrigSum s = random_sum(64, 3);
    CHECK_THROWS_AS(fft_multi_eval(s, 64, 1e-30), AccuracyError);
}

TEST_CASE("bandlimited interpolation within its certificate") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    TrigSum s;
    for (int j = 0; j < 32; ++j) {
        s.freqs.push_back((2 * U(rng) - 1) * 0.8);
        s.coeffs.push_back(std::polar(U(rng), U(rng) * 6.28));
    }
    BandlimitSpec sp;
    sp.lam = 1.0;
    sp.beta = 1.25;
    sp.kernel_c = 20.0;
    sp.kernel_eps = 0.125;
    sp.tau = 0.8;
    sp.coeff_l1 = s.l1_norm();
    SampleSet ss;
    ss.n_first = -600;
    for (int n = -600; n <= 600; ++n) ss.values.push_back(direct_eval(s, std::numbers::pi * n / sp.beta));
    ss.error = 1e-14;
    for (int i = 0; i < 50; ++i) {
        const double y = (2 * U(rng) - 1) * 100.0;
        const InterpResult r = bandlimited_interp(ss, sp, y);
        CHECK(std::abs(r.value - direct_eval(s, y)) <= r.error_bound);
    }
    CHECK_THROWS_AS(bandlimited_interp(ss, sp, 1450.0), PreconditionError);
}

TEST_CASE("block envelope brackets the grid values") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    CoefficientSet cs;
    std::vector<double> g;
    for (int j = 0; j < 96; ++j) g.push_back(14 + U(rng) * 300);
    std::sort(g.begin(), g.end());
    for (double x : g) {
        cs.gammas.push_back(x);
        cs.a.push_back(std::polar(1.0 / x, U(rng) * 6.28));
    }
    cs.T = 400;
    const GridSpec gr{10.0, 0.01, 300};
    const TrigSum ts = build_grid_sum(cs, gr);
    double mn = 1e9, mx = -1e9;
    for (std::int64_t y = -300; y <= 300; ++y) {
        const double v = direct_eval(ts, static_cast<double>(y)).real();
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    for (std::size_t bs : {96u, 32u}) {
        const BlockEnvelope env = block_envelope_eval(cs, gr, bs);
        CHECK(env.lower <= mn);
        CHECK(env.upper >= mx);
    }
    CHECK(block_size_for(1e8, 0.25) == 100);
}
