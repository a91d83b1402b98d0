#pragma once

// Hardy's Z function and a Gram-block zero finder, used to provision zero
// tables for tests and desk runs.

#include <cstddef>
#include <functional>
#include <vector>

namespace zetazeros {

// Riemann-Siegel theta(t), asymptotic series through t^-9 (t >= 10).
long double rs_theta(long double t);

// Z(t) by the Riemann-Siegel formula with corrections C0..C4 (t >= 200).
double z_riemann_siegel(double t);
// Z(t) from Euler-Maclaurin summation of zeta(1/2 + it) (t >= 1).
double z_euler_maclaurin(double t);
// Dispatches: Euler-Maclaurin below 2000, Riemann-Siegel above.
double hardy_z(double t);

// Solves theta(g) = n pi.
double gram_point(long n);

struct FinderOptions {
    double t_end = 0.0;        // stop after the Gram block containing t_end
    double root_tol = 1e-12;   // absolute tolerance of the root refinement
    int max_subdivision = 1 << 12;
};

// All zeros 0 < gamma <= t_end in increasing order. Gram blocks are resolved
// with Rosser's rule (valid below 6.8e6); a block whose sign changes cannot be
// separated throws std::runtime_error.
std::vector<double> find_zeros(const FinderOptions& opt,
                               const std::function<void(double)>& progress = {});

}  // namespace zetazeros
