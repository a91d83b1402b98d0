#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "psibound/errors.hpp"
#include "psibound/zeros.hpp"

using namespace psibound;

namespace {

const char* kFirstTen =
    "# accuracy=1e-12\n"
    "# t_max=50\n"
    "14.134725141734693790\n21.022039638771554993\n25.010857580145688763\n"
    "30.424876125859513210\n32.935061587739189691\n37.586178158825671257\n"
    "40.918719012147495187\n43.327073280914999519\n48.005150881167159727\n"
    "49.773832477672302181\n";

}  // namespace

TEST_CASE("text table parses") {
    const ZeroTable t = parse_zeros_text(kFirstTen);
    CHECK(t.size() == 10);
    CHECK(t.accuracy() == 1e-12);
    CHECK(t.t_max() == 50.0);
    CHECK(t.gammas()[0].to_double() == doctest::Approx(14.134725141734693790).epsilon(1e-16));
    CHECK(t.count_below(30.4) == 3);
    CHECK(t.count_at_most(30.5) == 4);
    CHECK(t.count_at_most(50.0) == 10);
    CHECK(validate_completeness(t, 50.0) == 10);
}

TEST_CASE("missing zeros are detected") {
    std::string text = kFirstTen;
    // drop five zeros so the count falls outside the band
    for (const char* z : {"21.022039638771554993\n", "25.010857580145688763\n", "30.424876125859513210\n",
                          "32.935061587739189691\n", "37.586178158825671257\n"}) {
        const auto pos = text.find(z);
        text.erase(pos, std::string(z).size());
    }
    CHECK_THROWS_AS(parse_zeros_text(text), CompletenessError);
}

TEST_CASE("malformed tables") {
    CHECK_THROWS_AS(parse_zeros_text("# accuracy=1e-12\n# t_max=20\n14.1\nabc\n"), ParseError);
    CHECK_THROWS(parse_zeros_text("# accuracy=1e-12\n# t_max=30\n21.02\n14.13\n25.01\n"));
    CHECK_THROWS_AS(load_zeros("/nonexistent/zeros.txt"), IoError);
}

TEST_CASE("binary round trip keeps the digest") {
    const ZeroTable t = parse_zeros_text(kFirstTen);
    const auto bytes = format_zeros_binary(t);
    const ZeroTable u = parse_zeros_binary(bytes);
    CHECK(u.size() == t.size());
    CHECK(u.digest() == t.digest());
    const ZeroTable v = parse_zeros_text(format_zeros_text(t));
    CHECK(v.digest() == t.digest());
    const auto path = std::filesystem::temp_directory_path() / "psibound_unit_zeros.bin";
    write_zeros(t, path, ZeroFormat::Binary);
    CHECK(load_zeros(path).digest() == t.digest());
    std::filesystem::remove(path);
}

TEST_CASE("riemann-von mangoldt count") {
    // N(100) = 29
    CHECK(std::fabs(riemann_von_mangoldt(100.0) - 29.0) < completeness_tolerance(100.0));
    CHECK(riemann_von_mangoldt(1e4) == doctest::Approx(10142.0).epsilon(1e-3));
}

TEST_CASE("coefficients") {
    const ZeroTable t = parse_zeros_text(kFirstTen);
    const MollifierParams p{3.0, 1e-4, 0.0};
    const CoefficientSet cs = make_coefficients(t, p, 40.0);
    CHECK(cs.size() == 6);
    const double g = 14.134725141734693790;
    const std::complex<double> a0 = logan_ell(p, g) / std::complex<double>(0.5, g);
    CHECK(std::abs(cs.a[0] - a0) < 1e-15);
    CHECK_THROWS(make_coefficients(t, p, 60.0));
}
