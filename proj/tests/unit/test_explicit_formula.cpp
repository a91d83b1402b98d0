#include <doctest.h>

#include <cmath>
#include <complex>

#include "psibound/explicit_formula.hpp"
#include "psibound/zeros.hpp"

using namespace psibound;

namespace {

ZeroTable small_table() {
    return parse_zeros_text(
        "# accuracy=1e-12\n# t_max=50\n"
        "14.134725141734693790\n21.022039638771554993\n25.010857580145688763\n"
        "30.424876125859513210\n32.935061587739189691\n37.586178158825671257\n"
        "40.918719012147495187\n43.327073280914999519\n48.005150881167159727\n"
        "49.773832477672302181\n");
}

}  // namespace

TEST_CASE("zero sum against a direct sum") {
    const ZeroTable t = small_table();
    const MollifierParams p{3.0, 1e-4, 0.0};
    const CoefficientSet cs = make_coefficients(t, p, 50.0);
    const double x = 1234.5;
    std::complex<double> s = 0;
    for (std::size_t j = 0; j < cs.size(); ++j)
        s += cs.a[j] * std::exp(std::complex<double>(0.0, cs.gammas[j].to_double() * std::log(x)));
    const double expected = 2.0 / logan_ell_imag(p, 0.5) * s.real();
    const ZeroSumResult r = zero_sum(x, cs);
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.abs_sum >= std::fabs(r.value));
    CHECK(r.round_error < 1e-12);
}

TEST_CASE("tails") {
    const MollifierParams p{18.0, 1e-4, 0.0};
    const double t1 = tail_beyond(p, 1e6);
    CHECK(t1 > 0.0);
    CHECK(tail_beyond(MollifierParams{20.0, 1e-4, 0.0}, 1e6) < t1);
    const double w = tail_rh_window(p, 1e6, 0.9);
    CHECK(w > 0.0);
    CHECK(std::isfinite(w));
}

TEST_CASE("remainder estimate carries every charge") {
    const ZeroTable t = small_table();
    const MollifierParams p{3.0, 1e-4, 0.0};
    const CoefficientSet cs = make_coefficients(t, p, 50.0);
    const RemainderEstimate r = remainder_estimate(1e4, cs, t);
    CHECK(r.err_const == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(r.err_tail1 + r.err_tail2 > 0.0);
    CHECK(r.total_error() >= r.err_const + r.err_tail1 + r.err_tail2);
}

TEST_CASE("round_up moves up") {
    CHECK(round_up(1.0) > 1.0);
    CHECK(round_up(1.0) - 1.0 < 1e-14);
}
