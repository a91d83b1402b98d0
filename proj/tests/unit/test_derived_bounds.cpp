#include <doctest.h>

#include <cmath>

#include "psibound/derived_bounds.hpp"
#include "psibound/errors.hpp"

using namespace psibound;

TEST_CASE("moebius") {
    const int expected[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
    for (unsigned n = 1; n <= 12; ++n) CHECK(moebius(n) == expected[n - 1]);
    CHECK(moebius(30) == -1);
    // partial sums from 4 stay <= 0 up to 38, from 6 stay >= 0 up to 12
    CHECK(moebius_sign_range(4, -1) == 38);
    CHECK(moebius_sign_range(6, 1) == 12);
}

TEST_CASE("cert validation") {
    CHECK_NOTHROW((RemainderCert{100, 1e8, -0.8, 0.81, ""}).validate());
    CHECK_NOTHROW((RemainderCert{100, 1e8, 0.0, 0.0, ""}).validate());
    CHECK_THROWS_AS((RemainderCert{1, 1e8, -0.8, 0.81, ""}).validate(), PreconditionError);
    CHECK_THROWS_AS((RemainderCert{100, 50, -0.8, 0.81, ""}).validate(), PreconditionError);
    CHECK_THROWS_AS((RemainderCert{100, 1e8, 0.1, 0.81, ""}).validate(), PreconditionError);
}

TEST_CASE("theta bound functions") {
    const ThetaBoundFn f = lemma1_theta(PsiBoundCert{100, 5e10, -0.81, 0.81, "t"});
    CHECK(f.lo == 1e4);
    CHECK(f.hi == 5e10);
    const double x = 1e8;
    const double extra = 1.03883 * (std::cbrt(x) + std::pow(x, 0.2) + 2 * std::log(x) * std::pow(x, 1.0 / 13)) / std::sqrt(x);
    CHECK(f.upper(x) == doctest::Approx(0.81 + 1 + 0.81 * std::pow(x, -0.25) + extra).epsilon(1e-14));
    CHECK(f.lower(x) == doctest::Approx(-0.81 + 1 - 0.81 * std::pow(x, -0.25)).epsilon(1e-14));
    const ThetaBoundCert r = f.restrict_to(1e7, 5e10);
    CHECK(r.C_upper >= f.upper(1e7));
    CHECK(r.c_lower <= f.lower(1e7));
    CHECK_THROWS_AS(lemma1_theta(PsiBoundCert{1e5, 1e9, -0.8, 0.8, ""}), PreconditionError);
}

TEST_CASE("chain with paper-size certs") {
    const ChainReport rep = chain_theorem2({{100, 5e10, -0.81, 0.81, "a"},
                                            {100, 32e12, -0.88, 0.88, "b"},
                                            {100, 1e19, -0.94, 0.94, "c"}});
    CHECK(rep.stages.size() == 3);
    CHECK(rep.union_hi == 1e19);
    CHECK(rep.certified_from == doctest::Approx(7348061.852).epsilon(1e-8));
    CHECK(rep.uniform_upper <= 1.95 + 1e-12);
    CHECK(rep.uniform_lower == doctest::Approx(0.0596047787).epsilon(1e-8));
    CHECK(rep.to_text().find("certified") != std::string::npos);
}

TEST_CASE("chain with one cert and with a gap") {
    const ChainReport one = chain_theorem2({{100, 1e8, -0.8, 0.81, "sieve"}});
    CHECK(one.stages.size() == 1);
    CHECK(one.union_lo == 1e4);
    CHECK_THROWS_AS(chain_theorem2({{100, 1e8, -0.8, 0.81, ""}, {2e4, 1e12, -0.9, 0.9, ""}}), PreconditionError);
    CHECK_THROWS_AS(chain_theorem2({}), PreconditionError);
}

TEST_CASE("anchors and partial summation") {
    const SieveTables s = sieve_range(0, 20'000);
    // pi(10) - li(10) + (10 - theta(10))/log 10, mpmath
    CHECK(anchor_pi(s, 10).value == doctest::Approx(-0.144873980488700).epsilon(1e-9));
    // pi*(100) - li(100) + (100 - psi(100))/log 100, mpmath
    CHECK(anchor_pistar(s, 100).value == doctest::Approx(-0.29976401347562514947618123508).epsilon(1e-9));
    const PsiBoundCert cert{100, 1e8, -0.72, 0.81, "t"};
    const PartialSummationBound l2 = lemma2_pistar(cert, 100, s);
    CHECK(l2.lo == 1e7);
    CHECK(l2.upper(1e7) > l2.lower(1e7));
    CHECK_THROWS_AS(lemma2_pistar(cert, 11, s), PreconditionError);
    CHECK_THROWS_AS(lemma2_pistar(PsiBoundCert{100, 5e6, -0.7, 0.8, ""}, 100, s), PreconditionError);
    CHECK_THROWS_AS(lemma3_pi(ThetaBoundCert{1e4, 1e8, 0.0, 1.95, ""}, 500, s), PreconditionError);
}

TEST_CASE("positivity from theta") {
    const SieveTables s = sieve_range(0, 100'000);
    const PositivityCert pc = li_pi_positivity(s, scan_theta_lower(s, 1, 1e5, 0.0));
    CHECK(pc.holds);
    CHECK(pc.anchor_A < 0.0);
    ScanResult bad;
    bad.lo = 100;
    bad.hi = 1e5;
    bad.pass = true;
    CHECK_FALSE(li_pi_positivity(s, bad).holds);
}

TEST_CASE("integral of 1/(sqrt t log^2 t)") {
    // mpmath
    CHECK(rem_integral(1e4, 1e7) == doctest::Approx(31.0804460288096793369701921059).epsilon(1e-10));
    CHECK(rem_integral(12.5, 1e7) == doctest::Approx(35.3774544895892452953780020998).epsilon(1e-10));
    CHECK(rem_integral_bound(1e7) == doctest::Approx(31.8965390399752132414852185389).epsilon(1e-13));
    CHECK(rem_integral_factor(1e4, 1e7) >= rem_integral(1e4, 1e7) * std::log(1e7) / std::sqrt(1e7));
}

TEST_CASE("inversion inequalities at sample points") {
    const SieveTables s = sieve_range(0, 1'000'000);
    for (double x : {10.0, 1000.0, 123456.7, 1e6}) {
        CHECK(aux_theta_upper_margin(s, x).value >= aux_theta_upper_margin(s, x).error);
        CHECK(aux_theta_lower_margin(s, x).value >= aux_theta_lower_margin(s, x).error);
    }
}
