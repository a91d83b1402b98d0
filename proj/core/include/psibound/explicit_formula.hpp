#pragma once

// Truncated zero sum of the explicit formula for psi_{c,eps} and the constant
// and tail terms that bound what the truncation leaves out.

#include "psibound/kernels.hpp"
#include "psibound/zeros.hpp"

namespace psibound {

// Height up to which all zeta zeros are known to lie on the critical line
// (numerical verification, used as an external fact by the RH-window tail).
inline constexpr double kRiemannHypothesisVerifiedHeight = 3.0e12;

struct ZeroSumResult {
    double value = 0.0;        // (1/l(i/2)) sum_rho a_rho x^{rho - 1/2}
    double round_error = 0.0;  // bound on the floating-point error of value
    double abs_sum = 0.0;      // (2/l(i/2)) sum |a_rho| x^{beta - 1/2}
};

// Normalised zero sum at x over every coefficient in `coeffs` (both gamma and
// -gamma, plus the off-line terms). Requires x >= 10 and eps <= 1e-4.
ZeroSumResult zero_sum(double x, const CoefficientSet& coeffs);
inline double zero_sum_direct(double x, const CoefficientSet& coeffs) { return zero_sum(x, coeffs).value; }

// Sum over zeros with |gamma| > c/eps, unnormalised; requires x > 1,
// eps <= 1e-3, c >= 3.
double tail_beyond(const MollifierParams& p, double x);

// Sum over zeros with a c/eps < |gamma| <= c/eps on the critical line;
// requires a in (0, 1) and a c/eps >= 1e3.
double tail_rh_window(const MollifierParams& p, double x, double a);

struct RemainderEstimate {
    double value = 0.0;  // approximates (x - psi_{c,eps}(x)) / sqrt(x)
    double err_const = 0.0;
    double err_tail1 = 0.0;
    double err_tail2 = 0.0;
    double err_round = 0.0;
    double err_zero_accuracy = 0.0;

    double total_error() const { return err_const + err_tail1 + err_tail2 + err_round + err_zero_accuracy; }
};

// Bound on |d/dgamma (a_rho x^{i gamma})| / |a_rho| for gamma <= c/eps.
double coefficient_sensitivity(const MollifierParams& p, double log_x, double gamma);

// Charge for the stated inaccuracy of the ordinates, normalised like
// zero_sum (a first-order bound; accuracy is tiny compared to 1/log x).
double zero_accuracy_charge(double x, const CoefficientSet& coeffs);

// Charge for zeros the coefficient set does not contain: the part above
// c/eps, the RH window between max(T, 1e3) and c/eps, and a crude count-based
// bound for zeros between T and 1e3 when T < 1e3. Normalised by sqrt(x).
struct TailCharges {
    double tail1 = 0.0;
    double tail2 = 0.0;
};
TailCharges tail_charges(double x, const CoefficientSet& coeffs);

RemainderEstimate remainder_estimate(double x, const CoefficientSet& coeffs, const ZeroTable& table);

// v rounded up by a few ulps; used for displayed closed-form bounds.
double round_up(double v, int ulps = 8);

}  // namespace psibound
