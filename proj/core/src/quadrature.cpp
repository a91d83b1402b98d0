#include "psibound/quadrature.hpp"

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace psibound {

GaussLegendreRule::GaussLegendreRule(int n) : nodes(n), weights(n) {
    // Newton iteration on P_n in long double, symmetric fill.
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
        long double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) {
                p1 = x;
                p0 = 1;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-20L) break;
        }
        long double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        long double w = 2 / ((1 - x * x) * dp * dp);
        nodes[i] = static_cast<double>(-x);
        nodes[n - 1 - i] = static_cast<double>(x);
        weights[i] = weights[n - 1 - i] = static_cast<double>(w);
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
}

const GaussLegendreRule& gauss_legendre(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussLegendreRule>(n);
    return *slot;
}

}  // namespace psibound
