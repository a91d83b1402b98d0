#include "riemann_siegel.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace zetazeros {

namespace {

#include "rs_coefficients.inc"

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kTwoPiL = 2.0L * kPiL;

template <std::size_t N>
double horner(const double (&c)[N], double w) {
    double acc = 0.0;
    for (std::size_t i = N; i-- > 0;) acc = acc * w + c[i];
    return acc;
}

constexpr long double kInvTwoPiL = 1.0L / kTwoPiL;

// phase mod 2 pi in (-2 pi, 2 pi); the truncating cast is much cheaper than
// nearbyint on long double.
double reduce(long double phase) {
    const auto turns = static_cast<long long>(phase * kInvTwoPiL);
    return static_cast<double>(phase - kTwoPiL * static_cast<long double>(turns));
}

double reduce_cos(long double phase) { return std::cos(reduce(phase)); }

// B_{2k}/(2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}.
std::vector<long double> bernoulli_over_factorial(int m) {
    std::vector<long double> out(m + 1, 0.0L);
    for (int k = 1; k <= m; ++k) {
        long double zeta = 0.0L;
        for (int n = 1; n <= 2000; ++n) {
            const long double term = std::pow(static_cast<long double>(n), -2.0L * k);
            zeta += term;
            if (term < 1e-22L) break;
        }
        if (k == 1) zeta = kPiL * kPiL / 6.0L;
        out[k] = ((k % 2) ? 2.0L : -2.0L) * zeta / std::pow(kTwoPiL, 2.0L * k);
    }
    return out;
}

struct LogTable {
    std::vector<long double> log_n;
    std::vector<long double> inv_sqrt_n;
    explicit LogTable(long n_max) : log_n(n_max + 1), inv_sqrt_n(n_max + 1) {
        for (long n = 1; n <= n_max; ++n) {
            log_n[n] = std::log(static_cast<long double>(n));
            inv_sqrt_n[n] = 1.0L / std::sqrt(static_cast<long double>(n));
        }
    }
};

// Covers Riemann-Siegel up to t ~ 6e6 and Euler-Maclaurin below 2000.
const LogTable& log_table() {
    static const LogTable table(1024);
    return table;
}

}  // namespace

long double rs_theta(long double t) {
    const long double inv = 1.0L / t;
    const long double inv2 = inv * inv;
    const long double series =
        inv * (1.0L / 48 + inv2 * (7.0L / 5760 + inv2 * (31.0L / 80640 + inv2 * (127.0L / 430080 +
                                                                                   inv2 * (511.0L / 1216512)))));
    return 0.5L * t * std::log(t / kTwoPiL) - 0.5L * t - kPiL / 8 + series;
}

double z_riemann_siegel(double t) {
    const long double tl = t;
    const long double a = tl / kTwoPiL;
    const long double sa = std::sqrt(a);
    const long n_terms = static_cast<long>(std::floor(sa));
    const long double th = rs_theta(tl);
    const LogTable& tab = log_table();
    if (n_terms >= static_cast<long>(tab.log_n.size())) throw std::out_of_range("z_riemann_siegel: t too large");
    long double sum = 0.0L;
    for (long n = 1; n <= n_terms; ++n) sum += reduce_cos(th - tl * tab.log_n[n]) * tab.inv_sqrt_n[n];
    const double w = static_cast<double>(sa - n_terms) - 0.5;
    const double r = static_cast<double>(1.0L / sa);  // a^{-1/2}
    const double corr = horner(kRsC0, w) +
                        r * (horner(kRsC1, w) + r * (horner(kRsC2, w) + r * (horner(kRsC3, w) + r * horner(kRsC4, w))));
    const double sign = (n_terms % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
    return static_cast<double>(2.0L * sum) + sign * std::sqrt(r) * corr;
}

double z_euler_maclaurin(double t) {
    using cld = std::complex<long double>;
    static const std::vector<long double> b2k = bernoulli_over_factorial(20);
    const long double tl = t;
    const cld s(0.5L, tl);
    const long nn = std::max(30L, static_cast<long>(std::ceil(0.4 * t)));
    const LogTable& tab = log_table();
    if (nn >= static_cast<long>(tab.log_n.size())) throw std::out_of_range("z_euler_maclaurin: t too large");
    cld sum(0.0L, 0.0L);
    for (long n = 1; n < nn; ++n) {
        const long double ph = -tl * tab.log_n[n];
        const double rd = reduce(ph);
        sum += cld(std::cos(rd), std::sin(rd)) * tab.inv_sqrt_n[n];
    }
    const long double lnN = std::log(static_cast<long double>(nn));
    const cld n_pow_s = std::polar(1.0L / std::sqrt(static_cast<long double>(nn)), -tl * lnN);  // N^{-s}
    sum += n_pow_s * static_cast<long double>(nn) / (s - 1.0L);
    sum += 0.5L * n_pow_s;
    cld rising = s;  // s (s+1) ... (s+2k-2)
    long double n_pow = 1.0L / nn;  // N^{-(2k-1)}
    for (int k = 1; k <= 20; ++k) {
        sum += b2k[k] * rising * n_pow_s * n_pow;
        rising *= (s + static_cast<long double>(2 * k - 1)) * (s + static_cast<long double>(2 * k));
        n_pow /= static_cast<long double>(nn) * nn;
    }
    const long double th = rs_theta(tl);
    return static_cast<double>((std::polar(1.0L, th) * sum).real());
}

double hardy_z(double t) { return t < 2000.0 ? z_euler_maclaurin(t) : z_riemann_siegel(t); }

double gram_point(long n) {
    // Newton on theta(g) - n pi, started from the leading-order inverse.
    const long double target = kPiL * static_cast<long double>(n);
    long double g = n < 10 ? 20.0L : kTwoPiL * (n + 0.125L) / std::log(static_cast<long double>(n + 1));
    if (n < 0) g = 10.0L;
    for (int it = 0; it < 100; ++it) {
        const long double f = rs_theta(g) - target;
        const long double df = 0.5L * std::log(g / kTwoPiL);
        long double step = f / df;
        if (g - step < 9.0L) step = 0.5L * (g - 9.0L);
        g -= step;
        if (std::fabs(step) < 1e-15L * g) break;
    }
    return static_cast<double>(g);
}

std::vector<double> find_zeros(const FinderOptions& opt, const std::function<void(double)>& progress) {
    std::vector<double> zeros;
    long j = -1;
    double gj = gram_point(j);
    double zj = hardy_z(gj);
    auto good = [](long n, double z) { return ((n % 2 == 0) ? z : -z) > 0.0; };
    if (!good(j, zj)) throw std::runtime_error("Gram point g_{-1} is not good");
    double next_report = 0.0;
    while (gj <= opt.t_end) {
        // Gram block [g_j, g_{j+k}] with both ends good.
        std::vector<double> pts{gj};
        std::vector<double> vals{zj};
        long k = 0;
        double gk, zk;
        do {
            ++k;
            gk = gram_point(j + k);
            zk = hardy_z(gk);
            pts.push_back(gk);
            vals.push_back(zk);
        } while (!good(j + k, zk));

        auto sign_changes = [&]() {
            int c = 0;
            for (std::size_t i = 1; i < vals.size(); ++i)
                if ((vals[i - 1] < 0) != (vals[i] < 0)) ++c;
            return c;
        };
        int refinements = 0;
        while (sign_changes() < k) {
            if (static_cast<long>(pts.size()) > k * opt.max_subdivision)
                throw std::runtime_error("could not separate zeros in Gram block starting at " + std::to_string(gj));
            std::vector<double> np{pts[0]}, nv{vals[0]};
            for (std::size_t i = 1; i < pts.size(); ++i) {
                const double mid = 0.5 * (pts[i - 1] + pts[i]);
                np.push_back(mid);
                nv.push_back(hardy_z(mid));
                np.push_back(pts[i]);
                nv.push_back(vals[i]);
            }
            pts.swap(np);
            vals.swap(nv);
            ++refinements;
        }
        if (sign_changes() > k)
            throw std::runtime_error("Rosser's rule violated in Gram block starting at " + std::to_string(gj));

        for (std::size_t i = 1; i < pts.size(); ++i) {
            if ((vals[i - 1] < 0) == (vals[i] < 0)) continue;
            boost::uintmax_t max_iter = 200;
            // The bracket cannot shrink below a few ulps of t.
            const double width = std::max(opt.root_tol, 16.0 * std::numeric_limits<double>::epsilon() * pts[i]);
            auto tol = [width](double a, double b) { return std::fabs(b - a) <= width; };
            const auto r = boost::math::tools::toms748_solve(hardy_z, pts[i - 1], pts[i], vals[i - 1], vals[i],
                                                             tol, max_iter);
            const double root = 0.5 * (r.first + r.second);
            if (root > opt.t_end) break;
            zeros.push_back(root);
        }
        j += k;
        gj = gk;
        zj = zk;
        if (progress && gj >= next_report) {
            progress(gj);
            next_report = gj + 10000.0;
        }
    }
    return zeros;
}

}  // namespace zetazeros
