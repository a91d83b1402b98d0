#include "psibound/explicit_formula.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "psibound/double_double.hpp"
#include "psibound/errors.hpp"
#include "psibound/parallel.hpp"

namespace psibound {

namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;
// Relative error allowed for a coefficient l(gamma)/rho as computed by
// make_coefficients (a handful of libm calls; generous margin).
constexpr double kCoeffRelErr = 1e-13;
constexpr std::size_t kBlock = 8192;

void check_prop2(double x, const MollifierParams& p) {
    if (!(x >= 10.0)) throw PreconditionError("zero sum: explicit formula needs x >= 10");
    if (!(p.eps <= 1e-4)) throw PreconditionError("zero sum: explicit formula needs eps <= 1e-4");
}

}  // namespace

double round_up(double v, int ulps) {
    for (int i = 0; i < ulps; ++i) v = std::nextafter(v, std::numeric_limits<double>::infinity());
    return v;
}

ZeroSumResult zero_sum(double x, const CoefficientSet& coeffs) {
    check_prop2(x, coeffs.params);
    const DoubleDouble log_x = dd_log(DoubleDouble(x));
    const std::size_t n = coeffs.size();
    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<DoubleDouble> block_sum(blocks);
    std::vector<double> block_abs(blocks, 0.0);
    std::vector<double> block_phase_err(blocks, 0.0);
    parallel_for_blocks(blocks, [&](std::size_t b) {
        CompensatedSum acc;
        double abs_acc = 0.0;
        double phase_err = 0.0;
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        for (std::size_t j = lo; j < hi; ++j) {
            const DoubleDouble phi = coeffs.gammas[j] * log_x;
            const double r = dd_mod_two_pi(phi);
            const std::complex<double> a = coeffs.a[j];
            acc.add(a.real() * std::cos(r) - a.imag() * std::sin(r));
            const double mag = std::abs(a);
            abs_acc += mag;
            phase_err = std::max(phase_err, 0x1p-98 * (1.0 + std::fabs(phi.hi)));
        }
        block_sum[b] = acc.value();
        block_abs[b] = abs_acc;
        block_phase_err[b] = phase_err;
    });
    CompensatedSum total;
    double abs_total = 0.0;
    double phase_err = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        total.add(block_sum[b]);
        abs_total += block_abs[b];
        phase_err = std::max(phase_err, block_phase_err[b]);
    }
    abs_total *= 1.0 + 2.0 * kUnit * static_cast<double>(n + 1);

    // Off-line zeros: x^{beta - 1/2} e^{i gamma log x}.
    CompensatedSum off;
    double off_abs = 0.0;
    for (const auto& t : coeffs.off_line) {
        const double r = dd_mod_two_pi(t.gamma * log_x);
        const double w = std::exp((t.beta - 0.5) * log_x.to_double());
        off.add(w * (t.a.real() * std::cos(r) - t.a.imag() * std::sin(r)));
        off_abs += w * std::abs(t.a);
    }

    const double scale = 2.0 / coeffs.ell_half;
    ZeroSumResult out;
    const double raw = total.to_double() + off.to_double();
    out.value = scale * raw;
    const double per_term = kCoeffRelErr + 8.0 * kUnit + phase_err;
    const double raw_err = per_term * (abs_total + off_abs) +
                           total.accumulation_error_bound(abs_total) + off.accumulation_error_bound(off_abs) +
                           2.0 * kUnit * std::fabs(raw);
    out.round_error = round_up(scale * raw_err + 4.0 * kUnit * std::fabs(out.value));
    out.abs_sum = scale * (abs_total + off_abs);
    return out;
}

double tail_beyond(const MollifierParams& p, double x) {
    if (!(x > 1.0)) throw PreconditionError("tail_beyond: needs x > 1");
    if (!(p.eps > 0.0 && p.eps <= 1e-3)) throw PreconditionError("tail_beyond: needs 0 < eps <= 1e-3");
    if (!(p.c >= 3.0)) throw PreconditionError("tail_beyond: needs c >= 3");
    const double v = 0.16 * (x + 1.0) / std::sinh(p.c) * std::exp(0.71 * std::sqrt(p.c * p.eps)) *
                     std::log(3.0 * p.c) * std::log(p.c / p.eps);
    return round_up(v);
}

double tail_rh_window(const MollifierParams& p, double x, double a) {
    if (!(a > 0.0 && a < 1.0)) throw PreconditionError("tail_rh_window: needs 0 < a < 1");
    if (!(a * p.c / p.eps >= 1e3)) throw PreconditionError("tail_rh_window: needs a c/eps >= 1e3");
    if (!(x > 1.0)) throw PreconditionError("tail_rh_window: needs x > 1");
    const double c = p.c;
    const double v = (1.0 + 11.0 * c * p.eps) / (std::numbers::pi * c * a * a) * std::log(c / p.eps) *
                     std::cosh(c * std::sqrt((1.0 - a) * (1.0 + a))) / std::sinh(c) * std::sqrt(x);
    return round_up(v);
}

double coefficient_sensitivity(const MollifierParams& p, double log_x, double gamma) {
    // |l'/l| <= eps^2 gamma / 3 <= eps c / 3 below c/eps; |d/dgamma 1/rho| / |1/rho| <= 1/|rho|.
    return p.eps * p.c / 3.0 + log_x + 1.0 / std::hypot(0.5, gamma);
}

double zero_accuracy_charge(double x, const CoefficientSet& coeffs) {
    if (coeffs.size() == 0 && coeffs.off_line.empty()) return 0.0;
    const double log_x = std::log(x);
    CompensatedSum s;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        const double g = coeffs.gammas[j].to_double();
        s.add(std::abs(coeffs.a[j]) * coefficient_sensitivity(coeffs.params, log_x, g));
    }
    for (const auto& t : coeffs.off_line) {
        const double g = t.gamma.to_double();
        s.add(std::exp((t.beta - 0.5) * log_x) * std::abs(t.a) * coefficient_sensitivity(coeffs.params, log_x, g));
    }
    // Second-order terms are absorbed by doubling the first-order bound.
    return round_up(2.0 * coeffs.zero_accuracy * s.to_double() * 2.0 / coeffs.ell_half);
}

TailCharges tail_charges(double x, const CoefficientSet& coeffs) {
    const MollifierParams& p = coeffs.params;
    const double height = p.height();
    const double sx = std::sqrt(x);
    TailCharges out;
    out.tail1 = round_up(tail_beyond(p, x) / sx);
    if (coeffs.T >= height) return out;
    if (height > kRiemannHypothesisVerifiedHeight)
        throw PreconditionError("tail charges: c/eps exceeds the height to which RH is verified");
    // Slightly below T/height so that an ordinate equal to T is covered. Below
    // 1e3 the window starts at 1001 and the count below covers the rest.
    const double a_lo = coeffs.T >= 1e3 ? coeffs.T / height * (1.0 - 1e-12) : 1001.0 / height;
    if (a_lo < 1.0) out.tail2 = tail_rh_window(p, x, a_lo) / sx;
    if (coeffs.T < 1e3) {
        // Zeros with T <= gamma <= 1001: each pair contributes at most
        // 2 l(gamma) / (|rho| l(i/2)) <= 2 / max(T, 14).
        const double count = riemann_von_mangoldt(1001.0) + completeness_tolerance(1001.0);
        out.tail2 += 2.0 * count / std::max(coeffs.T, 14.0) / coeffs.ell_half;
    }
    out.tail2 = round_up(out.tail2);
    return out;
}

RemainderEstimate remainder_estimate(double x, const CoefficientSet& coeffs, const ZeroTable& table) {
    if (coeffs.T > table.t_max()) throw PreconditionError("remainder_estimate: coefficients exceed the table height");
    if (coeffs.zero_accuracy != table.accuracy())
        throw PreconditionError("remainder_estimate: coefficients were built from a different table");
    const ZeroSumResult zs = zero_sum(x, coeffs);
    const TailCharges tails = tail_charges(x, coeffs);
    RemainderEstimate r;
    r.value = zs.value;
    r.err_const = round_up(2.0 / std::sqrt(x));
    r.err_tail1 = tails.tail1;
    r.err_tail2 = tails.tail2;
    r.err_round = zs.round_error;
    r.err_zero_accuracy = zero_accuracy_charge(x, coeffs);
    return r;
}

}  // namespace psibound
