#include "psibound/derived_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

#include "psibound/errors.hpp"
#include "psibound/explicit_formula.hpp"
#include "psibound/kernels.hpp"
#include "psibound/quadrature.hpp"

namespace psibound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double theta_extra(double x) {
    const double lx = std::log(x);
    return kPsiUpperRatio * (std::cbrt(x) + std::pow(x, 0.2) + 2.0 * lx * std::pow(x, 1.0 / 13.0)) / std::sqrt(x);
}

void check_partial_summation(const RemainderCert& cert, double anchor) {
    cert.validate();
    if (!(cert.b > 1e7)) throw PreconditionError("partial summation: needs b > 1e7");
    if (!(anchor > 12.0 && anchor < cert.b)) throw PreconditionError("partial summation: needs 12 < a < b");
    if (!(cert.a <= anchor)) throw PreconditionError("partial summation: the cert must cover [a, b]");
}

// Smallest x in [lo, hi] with pred(x) true, for pred monotone false -> true;
// +inf when pred(hi) is false.
template <class P>
double first_true(double lo, double hi, P pred) {
    if (!pred(hi)) return kInf;
    if (pred(lo)) return lo;
    for (int it = 0; it < 300 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (pred(mid) ? hi : lo) = mid;
    }
    return hi;
}

// Start of the maximal run [x, end] covered by the intervals.
double covered_from(const std::vector<std::pair<double, double>>& iv, double end) {
    double from = end;
    bool any = false;
    for (const auto& [lo, hi] : iv)
        if (lo <= end && end <= hi) any = true;
    if (!any) return kInf;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [lo, hi] : iv) {
            if (lo < from && from <= hi) {
                from = lo;
                changed = true;
            }
        }
    }
    return from;
}

}  // namespace

void RemainderCert::validate() const {
    if (!(a >= 2.0)) throw PreconditionError("cert: needs a >= 2");
    if (!(a < b)) throw PreconditionError("cert: needs a < b");
    if (!(c_lower <= 0.0 && C_upper >= 0.0)) throw PreconditionError("cert: needs c <= 0 <= C");
}

double ThetaBoundFn::upper(double x) const { return C + 1.0 - c * std::pow(x, -0.25) + theta_extra(x); }

double ThetaBoundFn::lower(double x) const { return c + 1.0 - C * std::pow(x, -0.25); }

ThetaBoundCert ThetaBoundFn::restrict_to(double from, double to) const {
    if (!(from >= std::max(lo, 11.0) && to <= hi && from < to))
        throw PreconditionError("theta bound: restriction outside the validity range");
    ThetaBoundCert out;
    out.a = from;
    out.b = to;
    out.C_upper = round_up(upper(from));
    out.c_lower = -round_up(-lower(from));
    out.provenance = provenance + " restricted to [" + num(from) + ", " + num(to) + "]";
    return out;
}

std::string ThetaBoundFn::describe() const {
    std::ostringstream os;
    os << "(x - theta(x))/sqrt(x) <= " << num(C) << " + 1 - (" << num(c)
       << ") x^(-1/4) + 1.03883 (x^(1/3) + x^(1/5) + 2 log(x) x^(1/13))/sqrt(x)\n"
       << "(x - theta(x))/sqrt(x) >= " << num(c) << " + 1 - " << num(C) << " x^(-1/4)\n"
       << "valid for " << num(lo) << " <= x <= " << num(hi) << "\n";
    return os.str();
}

ThetaBoundFn lemma1_theta(const PsiBoundCert& cert) {
    cert.validate();
    if (!(cert.a * cert.a < cert.b)) throw PreconditionError("lemma1_theta: needs a^2 < b");
    ThetaBoundFn f;
    f.c = cert.c_lower;
    f.C = cert.C_upper;
    f.lo = cert.a * cert.a;
    f.hi = cert.b;
    f.provenance = "theta from psi cert [" + num(cert.a) + ", " + num(cert.b) + "] (" + cert.provenance + ")";
    return f;
}

double PartialSummationBound::upper(double x) const {
    const double lx = std::log(x);
    return C + C * rem_integral_factor(anchor, x) - (A - A_error) * lx / std::sqrt(x);
}

double PartialSummationBound::lower(double x) const {
    const double lx = std::log(x);
    return c + c * rem_integral_factor(anchor, x) - (A + A_error) * lx / std::sqrt(x);
}

std::string PartialSummationBound::describe() const {
    std::ostringstream os;
    const std::string q = "(li(x) - " + quantity + "(x)) log(x)/sqrt(x)";
    os << q << " <= " << num(C) << " + (" << num(C) << ") J(a, x) - (" << num(A - A_error)
       << ") log(x)/sqrt(x)\n"
       << q << " >= " << num(c) << " + (" << num(c) << ") J(a, x) - (" << num(A + A_error)
       << ") log(x)/sqrt(x)\n"
       << "J(a, x) = log(x)/sqrt(x) int_a^x dt/(sqrt(t) log^2 t)\n"
       << "anchor a = " << num(anchor) << ", A = " << num(A) << " +- " << num(A_error) << "\n"
       << "valid for " << num(lo) << " <= x <= " << num(hi) << "\n";
    return os.str();
}

CheckedValue anchor_pistar(const SieveTables& sieve, double a) {
    const double li = log_integral(a);
    const double ps = sieve.psi(a).to_double();
    CheckedValue v;
    v.value = sieve.pi_star(a).to_double() - li + (a - ps) / std::log(a);
    v.error = 1e-9 * (1.0 + std::fabs(li)) + sieve.log_sum_error(a) / std::log(a) + 1e-12 * std::fabs(v.value);
    return v;
}

CheckedValue anchor_pi(const SieveTables& sieve, double a) {
    const double li = log_integral(a);
    const double th = sieve.theta(a).to_double();
    CheckedValue v;
    v.value = static_cast<double>(sieve.pi(a)) - li + (a - th) / std::log(a);
    v.error = 1e-9 * (1.0 + std::fabs(li)) + sieve.log_sum_error(a) / std::log(a) + 1e-12 * std::fabs(v.value);
    return v;
}

PartialSummationBound lemma2_pistar(const PsiBoundCert& cert, double anchor, const SieveTables& sieve) {
    check_partial_summation(cert, anchor);
    const CheckedValue A = anchor_pistar(sieve, anchor);
    PartialSummationBound out;
    out.quantity = "pi*";
    out.c = cert.c_lower;
    out.C = cert.C_upper;
    out.anchor = anchor;
    out.A = A.value;
    out.A_error = A.error;
    out.lo = std::max(anchor, 1e7);
    out.hi = cert.b;
    out.provenance = "pi* from psi cert [" + num(cert.a) + ", " + num(cert.b) + "] (" + cert.provenance + ")";
    return out;
}

PartialSummationBound lemma3_pi(const ThetaBoundCert& cert, double anchor, const SieveTables& sieve) {
    check_partial_summation(cert, anchor);
    const CheckedValue A = anchor_pi(sieve, anchor);
    PartialSummationBound out;
    out.quantity = "pi";
    out.c = cert.c_lower;
    out.C = cert.C_upper;
    out.anchor = anchor;
    out.A = A.value;
    out.A_error = A.error;
    out.lo = std::max(anchor, 1e7);
    out.hi = cert.b;
    out.provenance = "pi from theta cert [" + num(cert.a) + ", " + num(cert.b) + "] (" + cert.provenance + ")";
    return out;
}

PositivityCert li_pi_positivity(const SieveTables& sieve, const ScanResult& theta_positive) {
    PositivityCert out;
    const CheckedValue A = anchor_pi(sieve, 10.0);
    out.anchor_A = A.value;
    out.anchor_error = A.error;
    out.hi = theta_positive.hi;
    if (!(theta_positive.pass && theta_positive.limit >= 0.0 && theta_positive.lo <= 2.0)) {
        out.reason = "theta positivity is not established on [2, T]";
        return out;
    }
    // For t >= 10: li - pi = -A + (t - theta)/log t + int_10^t (u - theta(u))/(u log^2 u) du > -A.
    if (!(A.value + A.error < 0.0)) {
        out.reason = "anchor constant at 10 is not negative";
        return out;
    }
    const ScanResult low = scan_li_pi_positive(sieve, 2.0, std::min(10.0, out.hi));
    if (!low.pass) {
        out.reason = "direct check on [2, 10] failed";
        return out;
    }
    out.holds = true;
    out.reason = "direct check on [2, 10]; partial summation from a = 10 above";
    return out;
}

ChainReport chain_theorem2(std::vector<PsiBoundCert> certs, double target_upper, double target_lower) {
    if (certs.empty()) throw PreconditionError("chain_theorem2: no certs");
    std::sort(certs.begin(), certs.end(), [](const auto& x, const auto& y) { return x.b < y.b; });
    ChainReport rep;
    rep.target_upper = target_upper;
    rep.target_lower = target_lower;
    for (const auto& cert : certs) {
        ChainStage s;
        s.cert = cert;
        s.theta = lemma1_theta(cert);
        const double lo = std::max(s.theta.lo, 11.0);
        s.upper_from = first_true(lo, s.theta.hi, [&](double x) { return s.theta.upper(x) <= target_upper; });
        s.lower_from = first_true(lo, s.theta.hi, [&](double x) { return s.theta.lower(x) >= target_lower; });
        rep.stages.push_back(s);
    }
    for (std::size_t k = 1; k < rep.stages.size(); ++k)
        if (rep.stages[k].theta.lo > rep.stages[k - 1].theta.hi)
            throw PreconditionError("chain_theorem2: gap between " + num(rep.stages[k - 1].theta.hi) + " and " +
                                    num(rep.stages[k].theta.lo));
    rep.union_lo = kInf;
    rep.union_hi = 0.0;
    std::vector<std::pair<double, double>> up, low;
    for (const auto& s : rep.stages) {
        rep.union_lo = std::min(rep.union_lo, s.theta.lo);
        rep.union_hi = std::max(rep.union_hi, s.theta.hi);
        if (std::isfinite(s.upper_from)) up.emplace_back(s.upper_from, s.theta.hi);
        if (std::isfinite(s.lower_from)) low.emplace_back(s.lower_from, s.theta.hi);
    }
    rep.certified_from = std::max(covered_from(up, rep.union_hi), covered_from(low, rep.union_hi));
    if (!std::isfinite(rep.certified_from)) return rep;

    // Pointwise best bound is monotone between breakpoints, so the extremes
    // sit at the breakpoints.
    std::set<double> points{rep.certified_from};
    for (const auto& s : rep.stages) {
        for (double x : {s.theta.lo, std::nextafter(s.theta.hi, kInf)})
            if (x >= rep.certified_from && x <= rep.union_hi) points.insert(x);
    }
    rep.uniform_upper = -kInf;
    rep.uniform_lower = kInf;
    for (double x : points) {
        double best_up = kInf;
        double best_low = -kInf;
        for (const auto& s : rep.stages) {
            if (x < s.theta.lo || x > s.theta.hi) continue;
            best_up = std::min(best_up, s.theta.upper(x));
            best_low = std::max(best_low, s.theta.lower(x));
        }
        if (!std::isfinite(best_up)) continue;
        rep.uniform_upper = std::max(rep.uniform_upper, best_up);
        rep.uniform_lower = std::min(rep.uniform_lower, best_low);
    }
    rep.uniform_upper = round_up(rep.uniform_upper);
    rep.uniform_lower = -round_up(-rep.uniform_lower);
    return rep;
}

std::string ChainReport::to_text() const {
    std::ostringstream os;
    os << "# theta bounds chained from psi certificates\n";
    for (std::size_t k = 0; k < stages.size(); ++k) {
        const auto& s = stages[k];
        os << "stage " << k + 1 << ": psi cert " << num(s.cert.c_lower) << " <= (x - psi(x))/sqrt(x) <= "
           << num(s.cert.C_upper) << " on [" << num(s.cert.a) << ", " << num(s.cert.b) << "] (" << s.cert.provenance
           << ")\n"
           << s.theta.describe() << "upper <= " << num(target_upper) << " from " << num(s.upper_from)
           << "; lower >= " << num(target_lower) << " from " << num(s.lower_from) << "\n";
    }
    os << "union = [" << num(union_lo) << ", " << num(union_hi) << "]\n";
    if (std::isfinite(certified_from)) {
        os << "certified: " << num(target_lower) << " sqrt(x) < x - theta(x) <= " << num(target_upper)
           << " sqrt(x) for " << num(certified_from) << " <= x <= " << num(union_hi) << "\n"
           << "uniform constants there: " << num(uniform_lower) << " <= (x - theta(x))/sqrt(x) <= "
           << num(uniform_upper) << "\n"
           << "direct computation needed below " << num(certified_from) << "\n";
    } else {
        os << "targets are not reached at the top of the union\n";
    }
    return os.str();
}

double rem_integral(double a, double x) {
    if (!(a > 1.0 && x >= a)) throw PreconditionError("rem_integral: needs 1 < a <= x");
    const double ua = std::log(a);
    const double ux = std::log(x);
    const double scale = std::exp(ux / 2.0) / (ux * ux);
    return integrate([](double u) { return std::exp(u / 2.0) / (u * u); }, ua, ux, 1e-13 * scale * (ux - ua), 16).value;
}

double rem_integral_factor(double a, double x) {
    if (x <= a) return 0.0;
    return round_up(rem_integral(a, x) * std::log(x) / std::sqrt(x) * (1.0 + 1e-11));
}

double rem_integral_bound(double x) {
    const double lx = std::log(x);
    return 2.0 * std::sqrt(x) / (lx * lx) * (1.0 + 5.0 / lx);
}

int moebius(unsigned n) {
    if (n == 0) throw PreconditionError("moebius: n must be positive");
    int sign = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

unsigned moebius_sign_range(unsigned start, int sign, unsigned limit) {
    long sum = 0;
    for (unsigned m = start; m <= limit; ++m) {
        sum += moebius(m);
        if ((sign < 0 && sum > 0) || (sign > 0 && sum < 0)) return m - 1;
    }
    return limit;
}

CheckedValue aux_theta_upper_margin(const SieveTables& sieve, double x) {
    CheckedValue v;
    const DoubleDouble m = sieve.psi(x) - sieve.psi(std::sqrt(x)) - sieve.theta(x);
    v.value = m.to_double();
    v.error = 3.0 * sieve.log_sum_error(x);
    return v;
}

CheckedValue aux_theta_lower_margin(const SieveTables& sieve, double x) {
    CheckedValue v;
    const DoubleDouble m = sieve.theta(x) - sieve.psi(x) + sieve.psi(std::sqrt(x));
    const double lx = std::log(x);
    v.value = m.to_double() + kPsiUpperRatio * (std::cbrt(x) + std::pow(x, 0.2) + 2.0 * lx * std::pow(x, 1.0 / 13.0));
    v.error = 3.0 * sieve.log_sum_error(x) + 1e-12 * std::fabs(v.value);
    return v;
}

}  // namespace psibound
