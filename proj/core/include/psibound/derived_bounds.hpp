#pragma once

// Bounds for theta, pi* and pi derived from bounds c <= (x - psi(x))/sqrt(x)
// <= C by Moebius inversion and partial summation, and the chaining of
// several such certificates into uniform constants.

#include <string>
#include <vector>

#include "psibound/oracle_sieve.hpp"

namespace psibound {

// c <= (x - f(x))/sqrt(x) <= C on [a, b], for f = psi or theta.
struct RemainderCert {
    double a = 0.0;
    double b = 0.0;
    double c_lower = 0.0;
    double C_upper = 0.0;
    std::string provenance;

    // a >= 2, a < b and c <= 0 <= C.
    void validate() const;
};

using PsiBoundCert = RemainderCert;
using ThetaBoundCert = RemainderCert;

// Rosser-Schoenfeld: psi(x) < 1.03883 x for x > 0.
inline constexpr double kPsiUpperRatio = 1.03883;

// Bounds on (x - theta(x))/sqrt(x) on [a^2, b]:
//   upper  C + 1 - c x^{-1/4} + 1.03883 (x^{1/3} + x^{1/5} + 2 log(x) x^{1/13}) / sqrt(x)
//   lower  c + 1 - C x^{-1/4}
struct ThetaBoundFn {
    double c = 0.0;
    double C = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::string provenance;

    double upper(double x) const;
    double lower(double x) const;
    // Uniform constants over [from, to] (upper is decreasing and lower
    // increasing for x >= 11, so both are read off at `from`).
    ThetaBoundCert restrict_to(double from, double to) const;
    std::string describe() const;
};

ThetaBoundFn lemma1_theta(const PsiBoundCert& cert);

// Bounds on (li(x) - F(x)) log(x)/sqrt(x) for F = pi* (from a psi cert) or
// F = pi (from a theta cert), on [max(a, 1e7), b]:
//   R + R J(a, x) - A log(x)/sqrt(x),  J(a, x) = log(x)/sqrt(x) int_a^x dt/(sqrt(t) log^2 t)
// with R = C for the upper and R = c for the lower bound, and
// A = F(a) - li(a) + (a - g(a))/log a computed from the sieve. The integral is
// evaluated by quadrature; the closed form 2/log x (1 + 5/log x) for J is not
// an upper bound below x ~ 1e16.
struct PartialSummationBound {
    std::string quantity;  // "pi*" or "pi"
    double c = 0.0;
    double C = 0.0;
    double anchor = 0.0;
    double A = 0.0;
    double A_error = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    std::string provenance;

    double upper(double x) const;
    double lower(double x) const;
    std::string describe() const;
};

// Anchor constants from the oracles; the sieve must reach `a`.
CheckedValue anchor_pistar(const SieveTables& sieve, double a);
CheckedValue anchor_pi(const SieveTables& sieve, double a);

// Needs b > 1e7, 12 < anchor < b and the cert to cover [anchor, b].
PartialSummationBound lemma2_pistar(const PsiBoundCert& cert, double anchor, const SieveTables& sieve);
PartialSummationBound lemma3_pi(const ThetaBoundCert& cert, double anchor, const SieveTables& sieve);

// li(t) - pi(t) > 0 for 2 <= t <= T, given t - theta(t) > 0 there (a passed
// lower scan with non-negative coefficient starting at or below 2). Uses
// anchor a = 10 and a direct check on [2, 10].
struct PositivityCert {
    double lo = 2.0;
    double hi = 0.0;
    double anchor_A = 0.0;  // pi(10) - li(10) + (10 - theta(10))/log 10
    double anchor_error = 0.0;
    bool holds = false;
    std::string reason;
};

PositivityCert li_pi_positivity(const SieveTables& sieve, const ScanResult& theta_positive);

// One stage of the chain: the cert, its theta bound functions, and where they
// meet the targets.
struct ChainStage {
    PsiBoundCert cert;
    ThetaBoundFn theta;
    double upper_from = 0.0;  // theta upper <= target on [upper_from, hi]
    double lower_from = 0.0;  // theta lower >= target on [lower_from, hi]
};

struct ChainReport {
    std::vector<ChainStage> stages;
    double target_upper = 1.95;
    double target_lower = 0.05;
    double union_lo = 0.0;  // union of the theta ranges
    double union_hi = 0.0;
    // Targets hold on [certified_from, union_hi]; below it a direct
    // computation is needed down to wherever the claim starts.
    double certified_from = 0.0;
    // Strongest uniform constants on [certified_from, union_hi].
    double uniform_upper = 0.0;
    double uniform_lower = 0.0;

    std::string to_text() const;
};

// The certs must overlap or touch when sorted by b (a gap throws
// PreconditionError).
ChainReport chain_theorem2(std::vector<PsiBoundCert> certs, double target_upper = 1.95,
                           double target_lower = 0.05);

// int_a^x dt / (sqrt(t) log^2 t) by quadrature, the closed form
// 2 sqrt(x)/log^2 x (1 + 5/log x) proposed for it, and an upper bound on
// J(a, x) (relative quadrature margin included).
double rem_integral(double a, double x);
double rem_integral_bound(double x);
double rem_integral_factor(double a, double x);

int moebius(unsigned n);
// Largest n <= limit such that sum_{k=start}^{m} mu(k) has the sign of
// `sign` (<= 0 for sign < 0, >= 0 for sign > 0) for every start <= m <= n;
// start - 1 if it already fails at m = start.
unsigned moebius_sign_range(unsigned start, int sign, unsigned limit = 1000);

// The two Moebius-inversion inequalities at x, as margins that are >= 0 when
// they hold (with the sieve error charged against them):
//   psi(x) - psi(sqrt x) - theta(x)
//   theta(x) - psi(x) + psi(sqrt x) + 1.03883 (x^{1/3} + x^{1/5} + 2 log(x) x^{1/13})
CheckedValue aux_theta_upper_margin(const SieveTables& sieve, double x);
CheckedValue aux_theta_lower_margin(const SieveTables& sieve, double x);

}  // namespace psibound
