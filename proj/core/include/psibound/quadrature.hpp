#pragma once

// Adaptive Gauss-Legendre integration. Each panel is integrated with an
// n-point and a 2n-point rule; the panel is accepted when the two agree to
// its share of the absolute tolerance, otherwise it is bisected.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "psibound/errors.hpp"

namespace psibound {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;

    explicit GaussLegendreRule(int n);
    std::size_t size() const { return nodes.size(); }
};

// Cached rules for the common sizes.
const GaussLegendreRule& gauss_legendre(int n);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // sum over panels of |Q_2n - Q_n|
    std::size_t panels = 0;
};

template <class F>
double gauss_legendre_panel(const GaussLegendreRule& rule, F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

namespace quad_detail {

template <class F>
void adapt(F& f, double a, double b, double tol, int depth, const GaussLegendreRule& coarse_rule,
           const GaussLegendreRule& fine_rule, QuadratureResult& out) {
    const double coarse = gauss_legendre_panel(coarse_rule, f, a, b);
    const double fine = gauss_legendre_panel(fine_rule, f, a, b);
    const double diff = std::fabs(fine - coarse);
    if (diff <= tol || depth <= 0 || b - a <= 1e-15 * (std::fabs(a) + std::fabs(b))) {
        if (diff > tol && depth <= 0)
            throw AccuracyError("adaptive quadrature: recursion limit reached before tolerance");
        out.value += fine;
        out.error_estimate += diff;
        ++out.panels;
        return;
    }
    const double mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * tol, depth - 1, coarse_rule, fine_rule, out);
    adapt(f, mid, b, 0.5 * tol, depth - 1, coarse_rule, fine_rule, out);
}

}  // namespace quad_detail

// Integrates f over [a, b] to the requested absolute tolerance. base_nodes
// selects the coarse rule (the fine rule has twice as many nodes), which lets
// callers run an independent doubled-resolution check.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol = 1e-12, int base_nodes = 16,
                           int max_depth = 40) {
    QuadratureResult out;
    if (a == b) return out;
    if (a > b) {
        out = integrate(f, b, a, abs_tol, base_nodes, max_depth);
        out.value = -out.value;
        return out;
    }
    quad_detail::adapt(f, a, b, abs_tol, max_depth, gauss_legendre(base_nodes),
                       gauss_legendre(2 * base_nodes), out);
    return out;
}

}  // namespace psibound
