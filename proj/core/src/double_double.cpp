#include "psibound/double_double.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>

namespace psibound {

namespace {

constexpr DoubleDouble kLn2{6.931471805599453094e-01, 2.3190468138462996e-17};

}  // namespace

DoubleDouble dd_exp(DoubleDouble a) {
    if (a.hi > 709.0) return {HUGE_VAL, 0.0};
    if (a.hi < -745.0) return {0.0, 0.0};
    // a = k ln2 + r, |r| <= ln2/2; then exp(r) via r/2^8 Taylor and squaring.
    double k = std::nearbyint(a.hi / kLn2.hi);
    DoubleDouble r = a - kLn2 * DoubleDouble(k);
    r = r * DoubleDouble(1.0 / 256.0);
    DoubleDouble term = r;
    DoubleDouble sum = DoubleDouble(1.0) + r;
    for (int n = 2; n < 20; ++n) {
        term = term * r / DoubleDouble(static_cast<double>(n));
        sum += term;
        if (std::fabs(term.hi) < 1e-34) break;
    }
    for (int i = 0; i < 8; ++i) sum = sum * sum;
    return {std::ldexp(sum.hi, static_cast<int>(k)), std::ldexp(sum.lo, static_cast<int>(k))};
}

DoubleDouble dd_log(DoubleDouble a) {
    // Newton: y <- y + a*exp(-y) - 1, quadratic convergence from a double seed.
    DoubleDouble y = std::log(a.hi);
    y = y + a * dd_exp(-y) - DoubleDouble(1.0);
    return y;
}

DoubleDouble dd_sqrt(DoubleDouble a) {
    if (a.hi <= 0.0) return {0.0, 0.0};
    double s = std::sqrt(a.hi);
    DoubleDouble sq = dd_detail::two_prod(s, s);
    DoubleDouble r = a - sq;
    return dd_detail::quick_two_sum(s, r.hi / (2.0 * s));
}

bool dd_parse_decimal(const std::string& text, DoubleDouble& out) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    DoubleDouble value{0.0};
    bool any = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        value = value * DoubleDouble(10.0) + DoubleDouble(static_cast<double>(text[i] - '0'));
        ++i;
        any = true;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        // Fractional digits in chunks of 15 so each chunk is an exact integer.
        DoubleDouble scale{1.0};
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::int64_t chunk = 0;
            int len = 0;
            while (len < 15 && i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                chunk = chunk * 10 + (text[i] - '0');
                ++len;
                ++i;
                any = true;
            }
            scale = scale / DoubleDouble(std::pow(10.0, len));
            value += DoubleDouble(static_cast<double>(chunk)) * scale;
        }
    }
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        int sign = 1;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) sign = text[i++] == '-' ? -1 : 1;
        int exponent = 0;
        bool exp_digits = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            exponent = exponent * 10 + (text[i] - '0');
            ++i;
            exp_digits = true;
        }
        if (!exp_digits) return false;
        for (int k = 0; k < exponent; ++k)
            value = sign > 0 ? value * DoubleDouble(10.0) : value / DoubleDouble(10.0);
    }
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (!any || i != text.size()) return false;
    out = negative ? -value : value;
    return true;
}

std::string dd_to_string(DoubleDouble a, int significant_digits) {
    if (a.hi == 0.0) return "0";
    if (!std::isfinite(a.hi)) return std::isnan(a.hi) ? "nan" : (a.hi > 0 ? "inf" : "-inf");
    std::string out;
    if (a.hi < 0) {
        out.push_back('-');
        a = -a;
    }
    int exponent = static_cast<int>(std::floor(std::log10(a.hi)));
    DoubleDouble scaled = a;
    // Scale into [1, 10).
    if (exponent > 0)
        for (int k = 0; k < exponent; ++k) scaled = scaled / DoubleDouble(10.0);
    else
        for (int k = 0; k < -exponent; ++k) scaled = scaled * DoubleDouble(10.0);
    if (scaled.hi >= 10.0) {
        scaled = scaled / DoubleDouble(10.0);
        ++exponent;
    } else if (scaled.hi < 1.0) {
        scaled = scaled * DoubleDouble(10.0);
        --exponent;
    }
    std::string digits;
    for (int k = 0; k <= significant_digits; ++k) {
        double d = std::floor(scaled.hi);
        if (scaled.hi == d && scaled.lo < 0) d -= 1.0;
        if (d < 0) d = 0;
        if (d > 9) d = 9;
        digits.push_back(static_cast<char>('0' + static_cast<int>(d)));
        scaled = (scaled - DoubleDouble(d)) * DoubleDouble(10.0);
    }
    // Round half up on the extra digit.
    bool carry = digits.back() >= '5';
    digits.pop_back();
    for (int k = static_cast<int>(digits.size()) - 1; k >= 0 && carry; --k) {
        if (digits[k] == '9') {
            digits[k] = '0';
        } else {
            ++digits[k];
            carry = false;
        }
    }
    if (carry) {
        digits.insert(digits.begin(), '1');
        digits.pop_back();
        ++exponent;
    }
    out.push_back(digits[0]);
    if (digits.size() > 1) {
        out.push_back('.');
        out.append(digits, 1, std::string::npos);
    }
    out += "e";
    out += std::to_string(exponent);
    return out;
}

double dd_mod_two_pi(DoubleDouble phi) {
    const DoubleDouble k = dd_floor(phi * kInvTwoPiDD + DoubleDouble(0.5));
    return (phi - k * kTwoPiDD).to_double();
}

}  // namespace psibound
