#include <doctest.h>

#include <cmath>
#include <numbers>

#include "psibound/errors.hpp"
#include "psibound/kernels.hpp"

using namespace psibound;

// Reference values computed at 30 digits with mpmath.

TEST_CASE("bessel I0") {
    CHECK(bessel_i0(0.0) == 1.0);
    CHECK(bessel_i0(1.0) == doctest::Approx(1.26606587775200833559824).epsilon(1e-15));
    CHECK(bessel_i0(10.0) == doctest::Approx(2815.71662846625447146981).epsilon(1e-14));
    CHECK(bessel_i0_scaled(800.0) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi * 800.0)).epsilon(2e-4));
}

TEST_CASE("logan kernel values") {
    const MollifierParams p{18.0, 1e-4, 0.0};
    CHECK(logan_ell(p, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(logan_ell_imag(p, 0.5) - 1.0 == doctest::Approx(6.55864197551181663e-11).epsilon(1e-6));
    // decay: |l(t)| <= c / sinh(c) for eps |t| >= c
    for (double t : {1.8e5, 2.5e5, 1e6}) CHECK(std::fabs(logan_ell(p, t)) <= c_over_sinh(18.0) * (1 + 1e-12));
    CHECK(logan_ell(p, 1e5) > 0.0);
    CHECK(logan_ell(p, 1e5) < 1.0);
}

TEST_CASE("eta density has unit mass") {
    const MollifierParams p{18.0, 1e-4, 0.0};
    CHECK(eta_moment(p, -1.0, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lambda_norm(p) == doctest::Approx(1.00000000006558641975511816636).epsilon(1e-13));
    CHECK(eta_density(p, 2e-4) == 0.0);
}

TEST_CASE("mu and nu") {
    KernelCache k(18.0);
    CHECK(mu_direct(18.0, -0.3) == doctest::Approx(-0.0972657511580981972687100041722).epsilon(1e-12));
    CHECK(nu_direct(18.0, -0.3) == doctest::Approx(-0.0100113282393851964071813632033).epsilon(1e-11));
    CHECK(k.nu(0.0) == doctest::Approx(-0.0920367968720205977269702283171).epsilon(1e-12));
    CHECK(k.mu_plus(0.0) == 0.5);
    for (double t : {0.1, 0.37, 0.8}) {
        CHECK(k.mu_nu(t).mu == doctest::Approx(-k.mu_nu(-t).mu).epsilon(1e-13));
        CHECK(k.mu_nu(t).nu == doctest::Approx(k.mu_nu(-t).nu).epsilon(1e-13));
        CHECK(std::fabs(k.mu_nu(-t).mu - mu_direct(18.0, -t)) <= k.interpolation_error_bound());
        CHECK(k.mu_nu(-t).mu < 0.0);
        CHECK(k.mu_nu(t).nu < 0.0);
    }
    CHECK_THROWS_AS(k.mu_nu(0.1, 19.0), PreconditionError);
}

TEST_CASE("nu at 0 against the asymptotic") {
    KernelCache k(50.0);
    CHECK(std::fabs(k.nu(0.0)) == doctest::Approx(0.0559931238928953996438787075574).epsilon(1e-10));
    CHECK(std::fabs(std::fabs(k.nu(0.0)) * std::sqrt(2 * std::numbers::pi * 50.0) - 1.0) < 0.1);
}

TEST_CASE("logarithmic integral") {
    CHECK(log_integral(2.0) == doctest::Approx(1.04516378011749278484458888919).epsilon(1e-13));
    CHECK(log_integral(10.0) == doctest::Approx(6.16559950478729793752298175267).epsilon(1e-13));
    CHECK(log_integral(1e6) == doctest::Approx(78627.5491594621819198629107479).epsilon(1e-13));
    CHECK(log_integral(1e8) == doctest::Approx(5762209.37544803146756907360937).epsilon(1e-13));
    CHECK(std::fabs(log_integral(1.45136923488338105)) < 1e-12);
    CHECK_THROWS(log_integral(1.0));
    CHECK_THROWS(log_integral(-1.0));
}

TEST_CASE("boundary mass") {
    const MollifierParams p{18.0, 1e-4, 0.0};
    MassFunction M(p);
    const double x = 1e5;
    CHECK(M(x, x * std::exp(2e-4)) == 0.0);
    CHECK(M(x, x * std::exp(-2e-4)) == 0.0);
    // vanishes at both ends of the window and jumps by log t across t = x
    const double hi = x * std::exp(1e-4) * (1 - 1e-13);
    const double lo = x * std::exp(-1e-4) * (1 + 1e-13);
    CHECK(std::fabs(M(x, hi)) < 1e-9);
    CHECK(std::fabs(M(x, lo)) < 1e-9);
    const double above = x * (1 + 1e-13), below = x * (1 - 1e-13);
    CHECK(M(x, above) == doctest::Approx(std::log(above) * eta_moment(p, 0.0, 1e-4, -0.5) / M.lambda()).epsilon(1e-8));
    CHECK(M(x, below) == doctest::Approx(-std::log(below) * eta_moment(p, -1e-4, 0.0, -0.5) / M.lambda()).epsilon(1e-8));
    CHECK(M(x, above) - M(x, below) == doctest::Approx(std::log(x)).epsilon(1e-8));
    CHECK(std::fabs(M(x, x)) < 1e-3);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((MollifierParams{0.0, 1e-4, 0.0}).validate(), PreconditionError);
    CHECK_THROWS_AS((MollifierParams{18.0, 1e-4, 1.0}).validate(), PreconditionError);
    CHECK_NOTHROW((MollifierParams{18.0, 1e-4, 0.5}).validate());
}
