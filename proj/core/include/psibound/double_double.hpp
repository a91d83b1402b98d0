#pragma once

// Unevaluated sum of two doubles (hi + lo, |lo| <= ulp(hi)/2) giving about
// 106 bits of mantissa. Only the operations the library needs are provided.

#include <cmath>
#include <numbers>
#include <string>

namespace psibound {

struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double h) : hi(h), lo(0.0) {}  // NOLINT(implicit)
    constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
    double to_double() const { return hi + lo; }
};

namespace dd_detail {

inline DoubleDouble two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
    DoubleDouble s = dd_detail::two_sum(a.hi, b.hi);
    DoubleDouble t = dd_detail::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = dd_detail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
    DoubleDouble p = dd_detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
    double q1 = a.hi / b.hi;
    DoubleDouble r = a - b * DoubleDouble(q1);
    double q2 = r.hi / b.hi;
    r = r - b * DoubleDouble(q2);
    double q3 = r.hi / b.hi;
    DoubleDouble q = dd_detail::quick_two_sum(q1, q2);
    return q + DoubleDouble(q3);
}

inline DoubleDouble& operator+=(DoubleDouble& a, DoubleDouble b) { return a = a + b; }
inline DoubleDouble& operator-=(DoubleDouble& a, DoubleDouble b) { return a = a - b; }
inline DoubleDouble& operator*=(DoubleDouble& a, DoubleDouble b) { return a = a * b; }

inline bool operator<(DoubleDouble a, DoubleDouble b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(DoubleDouble a, DoubleDouble b) { return b < a; }
inline bool operator<=(DoubleDouble a, DoubleDouble b) { return !(b < a); }
inline bool operator>=(DoubleDouble a, DoubleDouble b) { return !(a < b); }
inline bool operator==(DoubleDouble a, DoubleDouble b) { return a.hi == b.hi && a.lo == b.lo; }

inline DoubleDouble dd_floor(DoubleDouble a) {
    double fh = std::floor(a.hi);
    if (fh != a.hi) return {fh, 0.0};
    return dd_detail::quick_two_sum(fh, std::floor(a.lo));
}

inline DoubleDouble dd_abs(DoubleDouble a) { return a.hi < 0 ? -a : a; }

// 2*pi and 1/(2*pi) to double-double precision.
inline constexpr DoubleDouble kTwoPiDD{6.283185307179586232e+00, 2.449293598294706414e-16};
inline constexpr DoubleDouble kInvTwoPiDD{1.591549430918953457e-01, -9.839338337591243e-18};

// phi - 2 pi k rounded to double, with k chosen so that the result lies in
// [-pi, pi]. The reduction error is below 2^-100 (1 + |phi|).
double dd_mod_two_pi(DoubleDouble phi);

// Natural logarithm to double-double accuracy via one Newton step on exp.
DoubleDouble dd_log(DoubleDouble a);
// exp to double-double accuracy (argument reduction + Taylor series).
DoubleDouble dd_exp(DoubleDouble a);
DoubleDouble dd_sqrt(DoubleDouble a);

// Parses a plain decimal literal ("123.456789012345") exactly up to the
// 106-bit mantissa. Returns false on malformed input.
bool dd_parse_decimal(const std::string& text, DoubleDouble& out);
// Decimal rendering with the requested number of significant digits.
std::string dd_to_string(DoubleDouble a, int significant_digits);

// Compensated (paired-limb) accumulator. Adds doubles or double-doubles with
// a running error bound on the accumulation itself.
class CompensatedSum {
public:
    void add(double x) { sum_ = sum_ + DoubleDouble(x); ++count_; }
    void add(DoubleDouble x) { sum_ = sum_ + x; ++count_; }
    DoubleDouble value() const { return sum_; }
    double to_double() const { return sum_.to_double(); }
    std::size_t count() const { return count_; }
    // Bound on the rounding committed by the accumulation: each double-double
    // addition is accurate to ~2^-104 relative of the running magnitude.
    double accumulation_error_bound(double max_partial_magnitude) const {
        return static_cast<double>(count_) * 0x1p-100 * max_partial_magnitude;
    }

private:
    DoubleDouble sum_{};
    std::size_t count_ = 0;
};

}  // namespace psibound
