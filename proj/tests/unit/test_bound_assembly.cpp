#include <doctest.h>

#include <cmath>

#include "psibound/bound_assembly.hpp"
#include "psibound/errors.hpp"

using namespace psibound;

TEST_CASE("constant regimes") {
    CHECK(std::string(constants_for(1e9).label) == "paper");
    CHECK(constants_for(5e8).grid_factor == 1.004);
    CHECK(constants_for(1e7).theorem_factor == 1.04);
    CHECK_THROWS_AS(constants_for(9e6), PreconditionError);
}

TEST_CASE("grid extension") {
    // 1.001 (M + log a/sqrt a (Delta/log Delta + log log a^2)), mpmath
    const ExtendedBounds e = grid_extend(-0.6, 0.6, 1e9, 2e9, 100.0);
    CHECK(e.M == doctest::Approx(0.617287623824161084587250422169).epsilon(1e-14));
    CHECK(e.m == doctest::Approx(-0.617287623824161084587250422169).epsilon(1e-14));
    CHECK(e.M >= 0.617287623824161);
    const ExtendedBounds d = grid_extend(-0.6, 0.6, 1e7, 2e7, 50.0);
    CHECK(d.M == doctest::Approx(0.685578878338028340335228468367).epsilon(1e-14));
    CHECK_THROWS_AS(grid_extend(0.1, 0.6, 1e9, 2e9, 100.0), SignAssumptionError);
    CHECK_THROWS_AS(grid_extend(-0.6, 0.6, 1e9, 2e9, 5.0), PreconditionError);
    CHECK_THROWS_AS(grid_extend(-0.6, 0.6, 1e9, 2e9, 2e4), PreconditionError);
}

TEST_CASE("config validation") {
    PipelineConfig c;
    c.x0 = 1e7;
    c.t_available = 2e5;
    CHECK_NOTHROW(c.validate());
    c.delta = 0.0;
    CHECK_THROWS_AS(c.validate(), PreconditionError);
    c.delta = 0.5;
    c.L = 1.0;
    CHECK_THROWS_AS(c.validate(), PreconditionError);
    c.L = 2.0;
    c.e2_share = 0.9;
    CHECK_THROWS_AS(c.validate(), PreconditionError);
    c.e2_share = 0.6;
    CHECK(c.slack() == 0.5);
    CHECK(c.b() == 2e7);
}

TEST_CASE("parameter choice at the desk configuration") {
    PipelineConfig c;
    c.x0 = 1e7;
    c.t_available = 2e5;
    const PipelinePlan p = choose_parameters(c);
    const double lx = std::log(1e7);
    // c = theta log x0 + log log x0 + log log log x0 - log(delta/40)
    CHECK(p.params.c == doctest::Approx(0.5 * lx + std::log(lx) + std::log(std::log(lx)) - std::log(0.5 / 40)).epsilon(1e-12));
    CHECK(p.params.c == doctest::Approx(16.2434473324144548).epsilon(1e-14));
    CHECK(p.params.eps < 1e-4);
    CHECK(p.params.eps == doctest::Approx(1e-4).epsilon(1e-10));
    CHECK(p.T == doctest::Approx(p.params.c / p.params.eps));
    CHECK(p.grid.h <= std::pow(1e7, -0.5) / lx);
    CHECK(p.grid.h == doctest::Approx(3.93363242505704609e-06).epsilon(1e-12));
    CHECK(p.grid.y_half == 88105);
    CHECK(p.delta_max == doctest::Approx(78.6724225311283).epsilon(1e-12));
    CHECK(p.delta_max >= 10.0);
    CHECK(p.delta_max <= 1e-5 * 1e7);
    CHECK(std::exp(p.grid.log_point(-p.grid.y_half)) >= 1e7);
    CHECK(std::exp(p.grid.log_point(p.grid.y_half)) <= 2e7);
    CHECK(p.predicted.e2 + p.predicted.e3 <= 0.5);
    CHECK(std::string(p.constants.label) == "desk-certified");
    CHECK_FALSE(p.blocks.use_blocks);
}

TEST_CASE("too few zeros is infeasible") {
    PipelineConfig c;
    c.x0 = 1e7;
    c.t_available = 1e4;
    try {
        choose_parameters(c);
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(e.required_height() > 1.6e5);
    }
}

TEST_CASE("a small memory cap selects the block path") {
    PipelineConfig c;
    c.x0 = 1e7;
    c.t_available = 2e5;
    c.mem_limit = 20'000'000;
    const PipelinePlan p = choose_parameters(c);
    CHECK(p.blocks.use_blocks);
    CHECK(p.blocks.predicted_bytes <= c.mem_limit);
    CHECK(p.blocks.fft_bytes > c.mem_limit);
}

TEST_CASE("bias term") {
    const MollifierParams p{16.0, 5e-5, 0.0};
    const KernelCache k(16.0);
    const double x = 1e7;
    // B = eps x e^-eps |nu(0)| / (2 * 1/2)
    CHECK(prop1_B(x, p, k) == doctest::Approx(5e-5 * x * std::exp(-5e-5) * std::fabs(k.nu(0.0))).epsilon(1e-9));
    const double A = prop1_A(x, p, k);
    CHECK(A > 0.0);
    CHECK(A / std::sqrt(x) < 1.0);
    CHECK_THROWS_AS(prop1_A(50.0, p, k), PreconditionError);
    CHECK(budget_e1(p, 2e7) == 0.0);
    CHECK(budget_e1(MollifierParams{16.0, 5e-5, 0.5}, 2e7) == doctest::Approx(1.001 * 0.5 * 5e-5 * std::sqrt(2e7)));
}
