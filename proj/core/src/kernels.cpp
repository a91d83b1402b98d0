#include "psibound/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "psibound/errors.hpp"
#include "psibound/quadrature.hpp"

namespace psibound {

namespace {

constexpr double kLogSpaceThreshold = 30.0;

// sinh(r) / sinh(c) for r, c >= 0, with d = r - c supplied when it is known
// more accurately than the difference of the rounded values.
double sinh_ratio(double r, double c, double d) {
    if (std::fabs(d) < 1.0) {
        // sinh(c + d) / sinh(c) = cosh d + coth(c) sinh d
        const double coth = c > 20.0 ? 1.0 + 2.0 * std::exp(-2.0 * c) : 1.0 / std::tanh(c);
        return std::cosh(d) + coth * std::sinh(d);
    }
    if (c <= kLogSpaceThreshold && r <= kLogSpaceThreshold) return std::sinh(r) / std::sinh(c);
    return std::exp(d) * (-std::expm1(-2.0 * r)) / (-std::expm1(-2.0 * c));
}

double sinh_over(double r) {
    if (r < 1e-5) return 1.0 + r * r / 6.0;
    return std::sinh(r) / r;
}

double sin_over(double r) {
    if (r < 1e-5) return 1.0 - r * r / 6.0;
    return std::sin(r) / r;
}

// eta_{c,1}(tau) on [-1, 1], normalised to unit mass.
double eta_unit(double c, double tau) {
    if (tau <= -1.0 || tau >= 1.0) {
        if (tau == -1.0 || tau == 1.0) return 0.5 * c_over_sinh(c);
        return 0.0;
    }
    const double z = c * std::sqrt((1.0 - tau) * (1.0 + tau));
    // (c / (2 sinh c)) I0(z) = c * I0e(z) * e^{z-c} / (1 - e^{-2c})
    return c * bessel_i0_scaled(z) * std::exp(z - c) / (-std::expm1(-2.0 * c));
}

}  // namespace

void MollifierParams::validate() const {
    if (!(c > 0.0) || !std::isfinite(c)) throw PreconditionError("mollifier: c must be positive");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw PreconditionError("mollifier: eps must be positive");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw PreconditionError("mollifier: alpha must lie in [0, 1)");
    if (!std::isfinite(height())) throw PreconditionError("mollifier: c/eps must be finite");
}

double bessel_i0(double y) {
    y = std::fabs(y);
    if (!std::isfinite(y)) throw std::overflow_error("bessel_i0: non-finite argument");
    if (y > 713.0) throw std::overflow_error("bessel_i0: result overflows binary64");
    if (y <= 20.0) {
        const double q = 0.25 * y * y;
        double term = 1.0;
        double sum = 1.0;
        for (int n = 1; n < 200; ++n) {
            term *= q / (static_cast<double>(n) * n);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return sum;
    }
    return bessel_i0_scaled(y) * std::exp(y);
}

double bessel_i0_scaled(double y) {
    y = std::fabs(y);
    if (y <= 20.0) return bessel_i0(y) * std::exp(-y);
    // Asymptotic series, truncated at its smallest term (< e^{-2y}).
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * (2.0 * k - 1) * (2.0 * k - 1) / (8.0 * k * y);
        if (next > term) break;
        term = next;
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * y);
}

double c_over_sinh(double c) {
    if (c == 0.0) return 1.0;
    if (c <= kLogSpaceThreshold) return c / std::sinh(c);
    return 2.0 * c * std::exp(-c) / (-std::expm1(-2.0 * c));
}

double logan_ell(const MollifierParams& p, double t) {
    const double c = p.c;
    const double et = p.eps * std::fabs(t);
    const double q = (c - et) * (c + et);
    if (q > 0.0) {
        const double r = std::sqrt(q);
        const double d = -(et * et) / (r + c);
        if (r < 1e-5) return c_over_sinh(c) * sinh_over(r);
        return (c / r) * sinh_ratio(r, c, d);
    }
    if (q == 0.0) return c_over_sinh(c);
    return c_over_sinh(c) * sin_over(std::sqrt(-q));
}

double logan_ell_imag(const MollifierParams& p, double s) {
    const double c = p.c;
    const double es = p.eps * s;
    const double r = std::sqrt(c * c + es * es);
    const double d = (es * es) / (r + c);
    // (c / r) = 1 / (1 + d/c)
    return sinh_ratio(r, c, d) / (1.0 + d / c);
}

std::complex<double> logan_ell_complex(const MollifierParams& p, std::complex<double> t) {
    const std::complex<double> et = p.eps * t;
    const std::complex<double> q = (p.c - et) * (p.c + et);
    const std::complex<double> r = std::sqrt(q);
    if (std::abs(r) < 1e-5) return c_over_sinh(p.c) * (1.0 + q / 6.0);
    // (c / sinh c) sinh(r) / r with sinh(r)/sinh(c) = e^{r-c}(1-e^{-2r})/(1-e^{-2c})
    const std::complex<double> ratio = std::exp(r - p.c) * (1.0 - std::exp(-2.0 * r)) / (-std::expm1(-2.0 * p.c));
    return p.c * ratio / r;
}

double eta_density(const MollifierParams& p, double tau) {
    if (std::fabs(tau) > p.eps) return 0.0;
    return eta_unit(p.c, tau / p.eps) / p.eps;
}

double eta_moment(const MollifierParams& p, double lo, double hi, double weight, double abs_tol,
                  int base_nodes) {
    double sign = 1.0;
    if (lo > hi) {
        std::swap(lo, hi);
        sign = -1.0;
    }
    lo = std::max(lo, -p.eps);
    hi = std::min(hi, p.eps);
    if (lo >= hi) return 0.0;
    // Substitute tau = eps u.
    const double w = weight * p.eps;
    auto f = [&](double u) { return eta_unit(p.c, u) * std::exp(w * u); };
    return sign * integrate(f, lo / p.eps, hi / p.eps, abs_tol, base_nodes).value;
}

double lambda_norm(const MollifierParams& p, double abs_tol, int base_nodes) {
    return eta_moment(p, -p.eps, p.eps, 0.5, abs_tol, base_nodes);
}

double mu_direct(double c, double t, double abs_tol) {
    if (t <= -1.0 || t >= 1.0 || t == 0.0) return 0.0;
    if (t > 0.0) return -mu_direct(c, -t, abs_tol);
    auto f = [c](double tau) { return eta_unit(c, tau); };
    return -integrate(f, -1.0, t, abs_tol).value;
}

double nu_direct(double c, double t, double abs_tol) {
    if (t <= -1.0 || t >= 1.0) return 0.0;
    if (t > 0.0) return nu_direct(c, -t, abs_tol);
    auto f = [c, t](double tau) { return (t - tau) * eta_unit(c, tau); };
    return -integrate(f, -1.0, t, abs_tol).value;
}

KernelCache::KernelCache(double c, int degree, double quadrature_tol)
    : c_(c), degree_(degree), quadrature_tol_(quadrature_tol) {
    if (!(c > 0.0)) throw PreconditionError("KernelCache: c must be positive");
    if (degree < 4) throw PreconditionError("KernelCache: degree must be at least 4");
    const int n = degree;
    half_nodes_.resize(n + 1);
    half_mu_.resize(n + 1);
    half_nu_.resize(n + 1);
    bary_weights_.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        const double u = std::cos(std::numbers::pi * k / n);
        const double t = 0.5 * (u - 1.0);  // k = 0 -> t = 0, k = n -> t = -1
        half_nodes_[k] = t;
        bary_weights_[k] = ((k % 2) ? -1.0 : 1.0) * ((k == 0 || k == n) ? 0.5 : 1.0);
        if (k == 0) {
            half_mu_[k] = -0.5;  // left limit at 0
            half_nu_[k] = nu_direct(c, 0.0, quadrature_tol);
        } else if (k == n) {
            half_mu_[k] = 0.0;
            half_nu_[k] = 0.0;
        } else {
            half_mu_[k] = mu_direct(c, t, quadrature_tol);
            half_nu_[k] = nu_direct(c, t, quadrature_tol);
        }
    }
    // Left limit of mu at 0 is -int_{-1}^0 eta = -1/2 exactly by symmetry of
    // eta; verify the quadrature agrees.
    const double mu_left = -integrate([c](double tau) { return eta_unit(c, tau); }, -1.0, 0.0, quadrature_tol).value;
    double observed = std::fabs(mu_left + 0.5);

    // A posteriori check at the interlaced Chebyshev points.
    for (int k = 0; k < n; ++k) {
        const double u = std::cos(std::numbers::pi * (k + 0.5) / n);
        const double t = 0.5 * (u - 1.0);
        observed = std::max(observed, std::fabs(interpolate(half_mu_, u) - mu_direct(c, t, quadrature_tol)));
        observed = std::max(observed, std::fabs(interpolate(half_nu_, u) - nu_direct(c, t, quadrature_tol)));
    }
    // Chebyshev coefficient tail of both interpolants.
    double tail = 0.0;
    for (const auto* values : {&half_mu_, &half_nu_}) {
        for (int j = n - 1; j <= n; ++j) {
            double a = 0.0;
            for (int k = 0; k <= n; ++k) {
                const double w = (k == 0 || k == n) ? 0.5 : 1.0;
                a += w * (*values)[k] * std::cos(std::numbers::pi * j * k / n);
            }
            a *= 2.0 / n;
            tail = std::max(tail, std::fabs(a));
        }
    }
    error_bound_ = 2.0 * std::max(observed, 10.0 * tail) + 4.0 * quadrature_tol;
    if (error_bound_ > 1e-10)
        throw AccuracyError("KernelCache: interpolation error bound " + std::to_string(error_bound_) +
                            " exceeds 1e-10; increase the degree");

    // Symmetric grid on [-1, 1]: nodes -1 .. 0 .. 1.
    for (int k = n; k >= 1; --k) {
        grid_nodes_.push_back(half_nodes_[k]);
        grid_mu_.push_back(half_mu_[k]);
        grid_nu_.push_back(half_nu_[k]);
    }
    grid_nodes_.push_back(0.0);
    grid_mu_.push_back(0.0);
    grid_nu_.push_back(half_nu_[0]);
    for (int k = 1; k <= n; ++k) {
        grid_nodes_.push_back(-half_nodes_[k]);
        grid_mu_.push_back(-half_mu_[k]);
        grid_nu_.push_back(half_nu_[k]);
    }
}

double KernelCache::interpolate(const std::vector<double>& values, double u) const {
    const int n = degree_;
    double num = 0.0, den = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double xk = std::cos(std::numbers::pi * k / n);
        const double diff = u - xk;
        if (diff == 0.0) return values[k];
        const double w = bary_weights_[k] / diff;
        num += w * values[k];
        den += w;
    }
    return num / den;
}

KernelCache::MuNu KernelCache::mu_nu(double t, double c) const {
    if (c != c_) throw PreconditionError("KernelCache: cache built for c=" + std::to_string(c_) +
                                         ", requested c=" + std::to_string(c));
    if (t <= -1.0 || t >= 1.0) return {0.0, 0.0};
    if (t == 0.0) return {0.0, half_nu_[0]};
    const double s = t < 0.0 ? t : -t;
    const double u = 2.0 * s + 1.0;
    double mu = interpolate(half_mu_, u);
    double nu = interpolate(half_nu_, u);
    // Near |t| = 1 the values drop below the interpolation error and the sign is
    // no longer reliable; the quadrature integrands have fixed sign.
    if (std::fabs(mu) <= error_bound_) mu = mu_direct(c_, s, quadrature_tol_);
    if (std::fabs(nu) <= error_bound_) nu = nu_direct(c_, s, quadrature_tol_);
    return t < 0.0 ? MuNu{mu, nu} : MuNu{-mu, nu};
}

double KernelCache::mu_plus(double alpha) const {
    if (alpha == 0.0) return 0.5;
    return mu_nu(alpha).mu;
}

MassFunction::MassFunction(const MollifierParams& p, double abs_tol) : params_(p), abs_tol_(abs_tol) {
    p.validate();
    if (!(p.eps < 1e-2)) throw PreconditionError("mass_M: requires eps < 1e-2");
    lambda_ = lambda_norm(p, abs_tol);
}

double MassFunction::operator()(double x, double t) const {
    const double eps = params_.eps;
    const double upper = std::exp(eps) * x;
    const double lower = x * std::exp(-eps);
    if (t < lower || t > upper) return 0.0;
    const double s = std::log(t / x);
    const double chi_up = (t > x && t < upper) ? 1.0 : ((t == x || t == upper) ? 0.5 : 0.0);
    const double chi_lo = (t > lower && t < x) ? 1.0 : ((t == lower || t == x) ? 0.5 : 0.0);
    double bracket = 0.0;
    // Weight runs from the full mass at the lower end to zero at the upper end, so that
    // psi_{c,eps} is continuous in x.
    if (chi_up != 0.0) bracket += chi_up * eta_moment(params_, s, eps, -0.5, abs_tol_);
    if (chi_lo != 0.0) bracket -= chi_lo * eta_moment(params_, -eps, s, -0.5, abs_tol_);
    return std::log(t) / lambda_ * bracket;
}

double mass_M(double x, const MollifierParams& p, double t) { return MassFunction(p)(x, t); }

namespace {

// E1(s) = int_s^inf e^{-v}/v dv for s > 0 via v = s e^z.
double exp_integral_e1(double s, double abs_tol, int base_nodes) {
    const double v_max = s + 60.0;
    const double z_max = std::log(v_max / s);
    auto f = [s](double z) { return std::exp(-s * std::exp(z)); };
    return integrate(f, 0.0, z_max, abs_tol, base_nodes).value;
}

}  // namespace

double log_integral(double x, int base_nodes) {
    if (!(x > 0.0)) throw PreconditionError("log_integral: requires x > 0");
    if (x == 1.0) throw PreconditionError("log_integral: divergent at x = 1");
    const double u = std::log(x);
    if (u < 0.0) return -exp_integral_e1(-u, 1e-15, base_nodes);
    // PV int_{-inf}^u e^v/v dv = -E1(u) + int_0^u 2 sinh(v)/v dv
    const double scale = std::max(1.0, x / u);
    const double tol = 1e-14 * scale;
    auto shi = [](double v) { return v < 1e-8 ? 2.0 : 2.0 * std::sinh(v) / v; };
    const double sym = integrate(shi, 0.0, u, tol, base_nodes).value;
    return sym - exp_integral_e1(u, std::min(tol, 1e-15), base_nodes);
}

}  // namespace psibound
