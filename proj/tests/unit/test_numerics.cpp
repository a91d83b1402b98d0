#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "psibound/double_double.hpp"
#include "psibound/fft.hpp"
#include "psibound/quadrature.hpp"

using namespace psibound;

TEST_CASE("double-double keeps the low limb") {
    const DoubleDouble a = DoubleDouble(1.0) + DoubleDouble(1e-20);
    CHECK(a.hi == 1.0);
    CHECK(a.lo == doctest::Approx(1e-20));
    CHECK((a - DoubleDouble(1.0)).to_double() == doctest::Approx(1e-20));
}

TEST_CASE("decimal parse and print round trip") {
    DoubleDouble v;
    REQUIRE(dd_parse_decimal("14.134725141734693790457251983562", v));
    CHECK(dd_to_string(v, 30) == "1.41347251417346937904572519836e1");
    CHECK_FALSE(dd_parse_decimal("1.2.3", v));
    CHECK_FALSE(dd_parse_decimal("", v));
}

TEST_CASE("dd log and exp agree") {
    const DoubleDouble x(2520.0);
    CHECK(dd_log(x).to_double() == doctest::Approx(7.832014180505469).epsilon(1e-15));
    const DoubleDouble back = dd_exp(dd_log(x));
    CHECK(std::fabs((back - x).to_double()) < 1e-25 * 2520.0 * 1e10);
}

TEST_CASE("mod two pi reduction") {
    const DoubleDouble big = DoubleDouble(1e6) * kTwoPiDD + DoubleDouble(0.25);
    CHECK(dd_mod_two_pi(big) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("fft matches a direct DFT within its round-off factor") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const std::size_t n = 256;
    std::vector<std::complex<double>> x(n);
    for (auto& v : x) v = {U(rng), U(rng)};
    std::vector<std::complex<double>> y = x;
    Fft fft(n);
    fft.transform(y, -1);
    double l1 = 0.0;
    for (auto v : x) l1 += std::abs(v);
    for (std::size_t j = 0; j < n; j += 17) {
        std::complex<long double> s = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const long double ang = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>(j * k % n) / n;
            s += std::complex<long double>(x[k].real(), x[k].imag()) * std::complex<long double>(std::cos(ang), std::sin(ang));
        }
        const std::complex<double> d(static_cast<double>(s.real()), static_cast<double>(s.imag()));
        CHECK(std::abs(y[j] - d) <= fft.roundoff_factor() * l1);
    }
    fft.transform(y, +1);
    for (std::size_t k = 0; k < n; k += 31) CHECK(std::abs(y[k] / double(n) - x[k]) < 1e-13);
}

TEST_CASE("adaptive quadrature") {
    const auto r = integrate([](double t) { return std::exp(-t * t); }, -9.0, 9.0, 1e-14);
    CHECK(r.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
    const auto s = integrate([](double t) { return 1.0 / (1.0 + t * t); }, 0.0, 1.0);
    CHECK(s.value == doctest::Approx(std::numbers::pi / 4).epsilon(1e-13));
}
