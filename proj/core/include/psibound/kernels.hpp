#pragma once

// Special functions behind the smoothed Chebyshev function: the Bessel
// function I0, Logan's band-limited kernel, the density eta_{c,eps} and its
// normaliser lambda_{c,eps}, the step functions mu_c / nu_c, the boundary mass
// M_{x,c,eps}, and the logarithmic integral.

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace psibound {

struct MollifierParams {
    double c = 0.0;      // sharpness
    double eps = 0.0;    // half-width of the smoothing window in log scale
    double alpha = 0.0;  // shift fraction in [0, 1)

    // Cut-off height c/eps of the zero sum.
    double height() const { return c / eps; }
    // Throws PreconditionError unless c > 0, eps > 0, 0 <= alpha < 1 and
    // c/eps is finite.
    void validate() const;
};

// Modified Bessel function of the first kind of order zero.
double bessel_i0(double y);
// e^{-y} I0(y); finite for every finite y >= 0.
double bessel_i0_scaled(double y);

// Logan's function l_{c,eps}(t) for real t, analytically continued past
// eps|t| = c.
double logan_ell(const MollifierParams& p, double t);
// l_{c,eps}(i s).
double logan_ell_imag(const MollifierParams& p, double s);
// General complex argument; only used for zeros off the critical line.
std::complex<double> logan_ell_complex(const MollifierParams& p, std::complex<double> t);
// c / sinh(c), evaluated without overflow.
double c_over_sinh(double c);

// eta_{c,eps}(tau) = c/(2 eps sinh c) I0(c sqrt(1 - (tau/eps)^2)), the unit-mass
// density; zero outside [-eps, eps].
double eta_density(const MollifierParams& p, double tau);

// int_lo^hi eta_{c,eps}(tau) e^{weight*tau} dtau with lo, hi clamped to the
// support. abs_tol and base_nodes are forwarded to the adaptive quadrature.
double eta_moment(const MollifierParams& p, double lo, double hi, double weight, double abs_tol = 1e-13,
                  int base_nodes = 16);

// lambda_{c,eps} = int eta_{c,eps}(tau) e^{tau/2} dtau.
double lambda_norm(const MollifierParams& p, double abs_tol = 1e-13, int base_nodes = 16);

// mu_c and nu_c interpolated from Chebyshev samples, one cache per c.
class KernelCache {
public:
    static constexpr int kDefaultDegree = 64;

    explicit KernelCache(double c, int degree = kDefaultDegree, double quadrature_tol = 1e-14);

    double c() const { return c_; }
    int degree() const { return degree_; }
    double quadrature_tol() const { return quadrature_tol_; }
    // Certified bound on |interpolant - exact| for mu and nu on [-1, 1].
    double interpolation_error_bound() const { return error_bound_; }

    // Samples on the symmetric grid: nodes t_k in [-1, 1] with mu odd and nu
    // even about 0 (mu(0) = 0 by definition).
    std::span<const double> nodes() const { return grid_nodes_; }
    std::span<const double> mu_grid() const { return grid_mu_; }
    std::span<const double> nu_grid() const { return grid_nu_; }

    struct MuNu {
        double mu;
        double nu;
    };
    // Throws PreconditionError when `c` does not match the cache.
    MuNu mu_nu(double t, double c) const;
    MuNu mu_nu(double t) const { return mu_nu(t, c_); }
    // Right limit (mu_c)_+(alpha); equals 1/2 at alpha = 0.
    double mu_plus(double alpha) const;
    double nu(double t) const { return mu_nu(t).nu; }

private:
    double interpolate(const std::vector<double>& values, double u) const;

    double c_;
    int degree_;
    double quadrature_tol_;
    double error_bound_ = 0.0;
    std::vector<double> half_nodes_;  // Chebyshev-Lobatto nodes mapped to [-1, 0]
    std::vector<double> half_mu_;
    std::vector<double> half_nu_;
    std::vector<double> bary_weights_;
    std::vector<double> grid_nodes_;
    std::vector<double> grid_mu_;
    std::vector<double> grid_nu_;
};

// Direct quadrature evaluations of mu_c(t) and nu_c(t); used to build the
// cache and as its independent check.
double mu_direct(double c, double t, double abs_tol = 1e-14);
double nu_direct(double c, double t, double abs_tol = 1e-14);

// Boundary mass M_{x,c,eps}(t). Precomputes lambda_{c,eps}; requires
// eps < 1e-2.
class MassFunction {
public:
    explicit MassFunction(const MollifierParams& p, double abs_tol = 1e-13);
    double operator()(double x, double t) const;
    double lambda() const { return lambda_; }
    const MollifierParams& params() const { return params_; }
    double abs_tol() const { return abs_tol_; }

private:
    MollifierParams params_;
    double abs_tol_;
    double lambda_;
};

double mass_M(double x, const MollifierParams& p, double t);

// Principal-value logarithmic integral int_0^x dt / log t. Throws at x = 1
// and for x <= 0.
double log_integral(double x, int base_nodes = 16);

}  // namespace psibound
