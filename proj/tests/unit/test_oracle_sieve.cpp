#include <doctest.h>

#include <cmath>
#include <vector>

#include "psibound/errors.hpp"
#include "psibound/kernels.hpp"
#include "psibound/oracle_sieve.hpp"

using namespace psibound;

TEST_CASE("small sieve") {
    const SieveTables s = sieve_range(0, 30);
    const std::vector<std::uint64_t> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
    CHECK(s.primes_in(0, 30) == primes);
    std::vector<std::uint64_t> powers;
    for (const auto& q : s.prime_powers()) powers.push_back(q.value);
    CHECK(powers == std::vector<std::uint64_t>{4, 8, 9, 16, 25, 27});
    CHECK(s.von_mangoldt(27) == doctest::Approx(std::log(3.0)));
    CHECK(s.von_mangoldt(12) == 0.0);
}

TEST_CASE("cumulative functions") {
    const SieveTables s = sieve_range(0, 1'000'000);
    CHECK(s.pi(100) == 25);
    CHECK(s.pi(1e6) == 78498);
    CHECK(s.psi(10).to_double() == doctest::Approx(7.83201418050546899074829891489).epsilon(1e-15));
    CHECK(s.theta(10).to_double() == doctest::Approx(std::log(210.0)).epsilon(1e-15));
    CHECK(s.pi_star(100).to_double() == doctest::Approx(28.5333333333333333).epsilon(1e-15));
    CHECK(s.psi(8.5).to_double() == doctest::Approx(std::log(840.0)).epsilon(1e-15));
    CHECK_THROWS_AS(s.psi(2e6), OutOfRangeError);
}

TEST_CASE("segment away from 0") {
    const SieveTables s = sieve_range(1'000'000, 1'001'000);
    CHECK(s.count_primes(1'000'000, 1'001'000) == 75);
    CHECK(s.is_prime(1'000'003));
    CHECK_FALSE(s.is_prime(1'000'001));
    CHECK_THROWS_AS(s.pi(1'000'500), OutOfRangeError);
}

TEST_CASE("range guard") {
    CHECK_THROWS_AS(sieve_range(0, 20'000'000'000ULL), OutOfRangeError);
    CHECK_THROWS_AS(sieve_range(10, 5), OutOfRangeError);
}

TEST_CASE("integer roots") {
    CHECK(integer_root(1'000'000, 2) == 1000);
    CHECK(integer_root(999'999, 2) == 999);
    CHECK(integer_root(1ULL << 60, 3) == 1ULL << 20);
}

TEST_CASE("remainder extrema on a short range") {
    const SieveTables s = sieve_range(0, 2000);
    const RemainderExtrema r = remainder_extrema(s, 100, 2000);
    // brute force over left limits and values at the jumps
    double lo = 1e9, hi = -1e9;
    for (std::uint64_t n = 100; n <= 2000; ++n) {
        const double t = static_cast<double>(n);
        const double left = (t - s.psi(t - 1e-9).to_double()) / std::sqrt(t);
        const double at = (t - s.psi(t).to_double()) / std::sqrt(t);
        lo = std::min({lo, left, at});
        hi = std::max({hi, left, at});
    }
    CHECK(r.inf == doctest::Approx(lo).epsilon(1e-9));
    CHECK(r.sup == doctest::Approx(hi).epsilon(1e-9));
    CHECK(r.sup == doctest::Approx(0.803234866).epsilon(1e-8));
    CHECK(r.arg_sup == 1423.0);
}

TEST_CASE("scans") {
    const SieveTables s = sieve_range(0, 100'000);
    CHECK(scan_psi_abs(s, 11, 1e5, 0.94).pass);
    CHECK_FALSE(scan_psi_abs(s, 11, 1e5, 0.5).pass);
    CHECK(scan_theta_lower(s, 1, 1e5, 0.05).pass);
    CHECK(scan_li_pistar(s, 2, 1e5).pass);
    CHECK(scan_li_pi_positive(s, 2, 1e5).pass);
    CHECK(scan_pi_upper(s, 2, 1e5).pass);
    const ScanResult real = scan_theta_upper(s, 1423, 1e5, 1.95);
    CHECK_FALSE(real.pass);
    CHECK(real.worst_at == 1427.0);
    CHECK(scan_theta_upper(s, 1423, 1e5, 1.95, true).pass);
}

TEST_CASE("li tracker agrees with the direct integral") {
    LiTracker li(2.0);
    for (double t : {10.0, 1000.0, 1e5}) {
        const double v = li.advance(t).to_double();
        CHECK(v == doctest::Approx(log_integral(t)).epsilon(1e-12));
    }
    CHECK_THROWS(li.advance(50.0));
}

TEST_CASE("psi_{c,eps} by direct summation sits next to psi") {
    const SieveTables s = sieve_range(0, 200'000);
    const MassFunction M(MollifierParams{18.0, 1e-4, 0.0});
    const double x = 1e5 + 0.5;
    const CheckedValue v = psi_ceps_direct(s, x, M);
    CHECK(std::fabs(v.value - s.psi(x).to_double()) < 12.0 * 2.0);
    CHECK(v.error < 1e-6);
}
