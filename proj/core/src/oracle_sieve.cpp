#include "psibound/oracle_sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>

#include "psibound/errors.hpp"
#include "psibound/parallel.hpp"
#include "psibound/quadrature.hpp"

namespace psibound {

namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;

__extension__ typedef unsigned __int128 u128;

std::uint64_t isqrt(std::uint64_t n) { return integer_root(n, 2); }

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
    std::vector<char> composite(limit + 1, 0);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return out;
}

}  // namespace

std::uint64_t integer_root(std::uint64_t n, int k) {
    if (k <= 0) throw PreconditionError("integer_root: k must be positive");
    if (k == 1 || n < 2) return n;
    auto pow_le = [&](std::uint64_t r) {
        u128 acc = 1;
        for (int i = 0; i < k; ++i) {
            acc *= r;
            if (acc > n) return false;
        }
        return true;
    };
    auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    while (r > 0 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

SieveTables sieve_range(std::uint64_t lo, std::uint64_t hi) {
    if (hi > SieveTables::kMaxLimit) throw OutOfRangeError("sieve_range: hi exceeds 1e10");
    if (lo > hi) throw OutOfRangeError("sieve_range: lo > hi");
    SieveTables t;
    t.lo_ = lo;
    t.hi_ = hi;
    t.base_ = lo & ~std::uint64_t{127};
    const std::uint64_t odd_count = (hi - t.base_ + 1) / 2;
    const std::uint64_t words = std::max<std::uint64_t>(1, (odd_count + 63) / 64);
    t.bits_.assign(words, ~0ULL);

    const std::vector<std::uint64_t> base_primes = small_primes(isqrt(hi));
    constexpr std::uint64_t seg_words = SieveTables::kSegmentOdds / 64;
    const std::uint64_t segments = (words + seg_words - 1) / seg_words;
    parallel_for_blocks(segments, [&](std::size_t s) {
        const std::uint64_t w0 = s * seg_words;
        const std::uint64_t w1 = std::min(words, w0 + seg_words);
        const std::uint64_t first = t.base_ + 2 * (w0 * 64) + 1;
        const std::uint64_t last = t.base_ + 2 * (w1 * 64) - 1;
        for (std::uint64_t p : base_primes) {
            if (p == 2) continue;
            std::uint64_t m = std::max(p * p, (first + p - 1) / p * p);
            if ((m & 1) == 0) m += p;
            for (; m <= last; m += 2 * p) {
                const std::uint64_t idx = (m - t.base_ - 1) / 2;
                t.bits_[idx / 64] &= ~(1ULL << (idx % 64));
            }
        }
    });
    // 1 is not prime; clear numbers outside [lo, hi].
    auto clear_number = [&](std::uint64_t n) {
        const std::uint64_t idx = (n - t.base_ - 1) / 2;
        if (idx / 64 < words) t.bits_[idx / 64] &= ~(1ULL << (idx % 64));
    };
    if (t.base_ == 0) clear_number(1);
    for (std::uint64_t n = t.base_ + 1; n < lo; n += 2) clear_number(n);
    for (std::uint64_t n = (hi % 2 == 0 ? hi + 1 : hi + 2); n <= t.base_ + 2 * (words * 64) - 1; n += 2)
        clear_number(n);

    // Prime powers p^m, m >= 2, inside [lo, hi].
    for (std::uint64_t p : base_primes) {
        u128 v = static_cast<u128>(p) * p;
        for (int m = 2; v <= hi; ++m, v *= p)
            if (v >= lo) t.powers_.push_back({static_cast<std::uint64_t>(v), p, m});
    }
    std::sort(t.powers_.begin(), t.powers_.end(),
              [](const PrimePower& x, const PrimePower& y) { return x.value < y.value; });
    // Checkpoints: counts and log sums per span, then prefix sums in order.
    constexpr std::uint64_t span = SieveTables::kCheckpointSpan;
    const std::uint64_t top = t.base_ + 2 * (words * 64);
    const std::uint64_t chunks = (top - t.base_ + span - 1) / span;
    std::vector<std::uint64_t> chunk_count(chunks, 0);
    std::vector<DoubleDouble> chunk_log(chunks);
    parallel_for_blocks(chunks, [&](std::size_t k) {
        const std::uint64_t a = t.base_ + k * span;
        const std::uint64_t b = std::min(hi, a + span - 1);
        if (a > hi) return;
        std::uint64_t cnt = 0;
        DoubleDouble acc;
        t.for_each_prime_power(a, b, [&](std::uint64_t, double logp, int m) {
            if (m != 1) return;
            ++cnt;
            acc += DoubleDouble(logp);
        });
        chunk_count[k] = cnt;
        chunk_log[k] = acc;
    });
    t.cp_pi_.assign(chunks + 1, 0);
    t.cp_theta_.assign(chunks + 1, DoubleDouble());
    for (std::uint64_t k = 0; k < chunks; ++k) {
        t.cp_pi_[k + 1] = t.cp_pi_[k] + chunk_count[k];
        t.cp_theta_[k + 1] = t.cp_theta_[k] + chunk_log[k];
    }
    t.powers_cum_.resize(t.powers_.size());
    DoubleDouble acc;
    for (std::size_t i = 0; i < t.powers_.size(); ++i) {
        acc += DoubleDouble(std::log(static_cast<double>(t.powers_[i].p)));
        t.powers_cum_[i] = acc;
    }
    return t;
}

bool SieveTables::bit(std::uint64_t n) const {
    const std::uint64_t idx = (n - base_ - 1) / 2;
    return (bits_[idx / 64] >> (idx % 64)) & 1ULL;
}

bool SieveTables::is_prime(std::uint64_t n) const {
    if (n < lo_ || n > hi_) throw OutOfRangeError("is_prime: n outside the sieved range");
    if (n == 2) return true;
    if (n < 2 || n % 2 == 0) return false;
    return bit(n);
}

std::uint64_t SieveTables::count_primes(std::uint64_t a, std::uint64_t b) const {
    a = std::max(a, lo_);
    b = std::min(b, hi_);
    if (a > b) return 0;
    std::uint64_t cnt = (a <= 2 && 2 <= b) ? 1 : 0;
    const std::uint64_t first = std::max<std::uint64_t>(a | 1ULL, base_ + 1);
    if (first > b) return cnt;
    const std::uint64_t i0 = (first - base_ - 1) / 2;
    const std::uint64_t i1 = (b - base_ - 1) / 2;  // inclusive
    const std::uint64_t w0 = i0 / 64;
    const std::uint64_t w1 = i1 / 64;
    for (std::uint64_t w = w0; w <= w1; ++w) {
        std::uint64_t word = bits_[w];
        if (w == w0) word &= ~0ULL << (i0 % 64);
        if (w == w1 && (i1 % 64) != 63) word &= ~0ULL >> (63 - i1 % 64);
        cnt += static_cast<std::uint64_t>(std::popcount(word));
    }
    return cnt;
}

std::vector<std::uint64_t> SieveTables::primes_in(std::uint64_t a, std::uint64_t b) const {
    std::vector<std::uint64_t> out;
    for_each_prime_power(a, b, [&](std::uint64_t n, double, int m) {
        if (m == 1) out.push_back(n);
    });
    return out;
}

void SieveTables::require_cumulative(double x, const char* what) const {
    if (lo_ != 0) throw OutOfRangeError(std::string(what) + ": cumulative queries need a sieve starting at 0");
    if (!(x <= static_cast<double>(hi_))) throw OutOfRangeError(std::string(what) + ": x outside the sieved range");
    if (!(x >= 0.0)) throw OutOfRangeError(std::string(what) + ": x must be >= 0");
}

std::uint64_t SieveTables::floor_index(double x) const { return static_cast<std::uint64_t>(std::floor(x)); }

std::uint64_t SieveTables::pi(double x) const {
    require_cumulative(x, "pi");
    const std::uint64_t n = floor_index(x);
    const std::uint64_t k = n / kCheckpointSpan;
    return cp_pi_[k] + count_primes(k * kCheckpointSpan, n);
}

DoubleDouble SieveTables::theta(double x) const {
    require_cumulative(x, "theta");
    const std::uint64_t n = floor_index(x);
    const std::uint64_t k = n / kCheckpointSpan;
    DoubleDouble acc = cp_theta_[k];
    for_each_prime_power(k * kCheckpointSpan, n, [&](std::uint64_t, double logp, int m) {
        if (m == 1) acc += DoubleDouble(logp);
    });
    return acc;
}

DoubleDouble SieveTables::psi(double x) const {
    DoubleDouble acc = theta(x);
    const std::uint64_t n = floor_index(x);
    auto it = std::upper_bound(powers_.begin(), powers_.end(), n,
                               [](std::uint64_t v, const PrimePower& pp) { return v < pp.value; });
    if (it != powers_.begin()) acc += powers_cum_[static_cast<std::size_t>(it - powers_.begin()) - 1];
    return acc;
}

double SieveTables::von_mangoldt(std::uint64_t n) const {
    if (n < 2) return 0.0;
    if (is_prime(n)) return std::log(static_cast<double>(n));
    auto it = std::lower_bound(powers_.begin(), powers_.end(), n,
                               [](const PrimePower& pp, std::uint64_t v) { return pp.value < v; });
    if (it != powers_.end() && it->value == n) return std::log(static_cast<double>(it->p));
    return 0.0;
}

DoubleDouble SieveTables::psi0(double x) const {
    DoubleDouble v = psi(x);
    if (x == std::floor(x)) {
        const double lam = von_mangoldt(static_cast<std::uint64_t>(x));
        if (lam > 0.0) v -= DoubleDouble(0.5 * lam);
    }
    return v;
}

DoubleDouble SieveTables::pi_star(double x) const {
    require_cumulative(x, "pi_star");
    const std::uint64_t n = floor_index(x);
    DoubleDouble acc;
    for (int k = 1; k < 64; ++k) {
        const std::uint64_t r = integer_root(n, k);
        if (r < 2) break;
        acc += DoubleDouble(static_cast<double>(pi(static_cast<double>(r)))) / DoubleDouble(static_cast<double>(k));
    }
    return acc;
}

double SieveTables::log_sum_error(double x) const {
    // Each log p is within one ulp (<= 2u log p); psi(x) < 1.04 x + 10.
    return 2.5 * kUnit * (1.04 * std::max(x, 1.0) + 10.0);
}

void SieveTables::write_checkpoints(const std::filesystem::path& path, std::uint64_t spacing) const {
    if (spacing == 0) throw PreconditionError("write_checkpoints: spacing must be positive");
    std::ofstream out(path);
    if (!out) throw IoError("write_checkpoints: cannot open " + path.string());
    out << "x,psi,theta,pi\r\n";
    for (std::uint64_t x = spacing; x <= hi_; x += spacing) {
        const double xd = static_cast<double>(x);
        out << x << ',' << dd_to_string(psi(xd), 30) << ',' << dd_to_string(theta(xd), 30) << ',' << pi(xd)
            << "\r\n";
    }
    if (!out) throw IoError("write_checkpoints: write failed for " + path.string());
}

CheckedValue psi_ceps_direct(const SieveTables& sieve, double x, const MassFunction& mass) {
    const double eps = mass.params().eps;
    const double lower = x * std::exp(-eps);
    const double upper = x * std::exp(eps);
    if (!(x > 1.0)) throw PreconditionError("psi_ceps_direct: needs x > 1");
    if (!(upper <= static_cast<double>(sieve.hi()))) throw OutOfRangeError("psi_ceps_direct: e^eps x outside the sieve");
    CheckedValue out;
    CompensatedSum acc;
    acc.add(sieve.psi0(x));
    double err = sieve.log_sum_error(upper);
    const auto a = static_cast<std::uint64_t>(std::ceil(lower));
    const auto b = static_cast<std::uint64_t>(std::floor(upper));
    sieve.for_each_prime_power(a, b, [&](std::uint64_t n, double, int m) {
        const double t = static_cast<double>(n);
        if (!(t > lower && t < upper)) return;
        const double v = mass(x, t) / m;
        acc.add(v);
        // Two eta moments at abs_tol each, scaled by log t / lambda, plus rounding.
        err += 4.0 * mass.abs_tol() * std::log(t) / mass.lambda() + 16.0 * kUnit * std::fabs(v);
    });
    out.value = acc.to_double();
    out.error = err + 4.0 * kUnit * std::fabs(out.value);
    return out;
}

namespace {

template <bool ThetaOnly>
RemainderExtrema step_extrema(const SieveTables& sieve, double a, double b) {
    if (!(a > 0.0 && a <= b)) throw PreconditionError("remainder_extrema: needs 0 < a <= b");
    if (!(b <= static_cast<double>(sieve.hi()))) throw OutOfRangeError("remainder_extrema: b outside the sieve");
    DoubleDouble run = ThetaOnly ? sieve.theta(a) : sieve.psi(a);
    RemainderExtrema r;
    r.inf = ((DoubleDouble(a) - run).to_double()) / std::sqrt(a);
    r.arg_inf = a;
    r.sup = -std::numeric_limits<double>::infinity();
    const auto first = static_cast<std::uint64_t>(std::floor(a)) + 1;
    const auto last = static_cast<std::uint64_t>(std::floor(b));
    sieve.for_each_prime_power(first, last, [&](std::uint64_t n, double logp, int m) {
        if (ThetaOnly && m != 1) return;
        const double t = static_cast<double>(n);
        const double st = std::sqrt(t);
        const double left = (DoubleDouble(t) - run).to_double() / st;
        if (left > r.sup) {
            r.sup = left;
            r.arg_sup = t;
        }
        run += DoubleDouble(logp);
        const double value = (DoubleDouble(t) - run).to_double() / st;
        if (value < r.inf) {
            r.inf = value;
            r.arg_inf = t;
        }
    });
    const double at_b = (DoubleDouble(b) - run).to_double() / std::sqrt(b);
    if (at_b > r.sup) {
        r.sup = at_b;
        r.arg_sup = b;
    }
    r.error = (sieve.log_sum_error(b) + 8.0 * kUnit * (2.0 * b + 10.0)) / std::sqrt(a);
    return r;
}

double pi_upper_bound_fn(double x) {
    const double L = std::log(x);
    return std::sqrt(x) / L * (1.95 + 3.9 / L + 19.5 / (L * L));
}

// Minimiser of the pi upper bound: log x solves 1.95 y^3 + 3.9 y - 117 = 0.
double pi_upper_argmin() {
    double lo = 1.0;
    double hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (1.95 * mid * mid * mid + 3.9 * mid - 117.0 < 0.0) lo = mid;
        else hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

}  // namespace

RemainderExtrema remainder_extrema(const SieveTables& sieve, double a, double b) {
    return step_extrema<false>(sieve, a, b);
}

RemainderExtrema theta_remainder_extrema(const SieveTables& sieve, double a, double b) {
    return step_extrema<true>(sieve, a, b);
}

LiTracker::LiTracker(double start) : t_(start), li_(log_integral(start)), err_(1e-12 * std::max(1.0, std::fabs(log_integral(start)))) {
    if (!(start > 1.0)) throw PreconditionError("LiTracker: start must exceed 1");
}

DoubleDouble LiTracker::advance(double t) {
    if (t < t_) throw PreconditionError("LiTracker: points must not decrease");
    if (t == t_) return li_;
    auto f = [](double u) { return 1.0 / std::log(u); };
    double piece;
    if (t - t_ <= t_ / 16.0 && t_ >= 100.0) {
        // 8-point Gauss-Legendre: truncation error far below 1e-20 for
        // gaps <= t/16 once t >= 100.
        piece = gauss_legendre_panel(gauss_legendre(8), f, t_, t);
        err_ += 8.0 * kUnit * std::fabs(piece);
    } else {
        const QuadratureResult q = integrate(f, t_, t, 1e-15 * std::max(1.0, t - t_));
        piece = q.value;
        err_ += q.error_estimate + 8.0 * kUnit * std::fabs(piece) + 1e-15 * std::max(1.0, t - t_);
    }
    li_ += DoubleDouble(piece);
    err_ += 0x1p-100 * std::fabs(li_.hi);
    t_ = t;
    return li_;
}

ScanResult scan_psi_abs(const SieveTables& sieve, double a, double b, double coef) {
    const RemainderExtrema r = remainder_extrema(sieve, a, b);
    ScanResult s;
    s.name = "psi-abs";
    s.lo = a;
    s.hi = b;
    s.limit = coef;
    s.error = r.error;
    if (r.sup >= -r.inf) {
        s.worst = r.sup;
        s.worst_at = r.arg_sup;
    } else {
        s.worst = -r.inf;
        s.worst_at = r.arg_inf;
    }
    s.pass = s.worst + s.error <= coef;
    return s;
}

ScanResult scan_theta_upper(const SieveTables& sieve, double a, double b, double coef, bool integers_only) {
    ScanResult s;
    s.name = integers_only ? "theta-upper-integers" : "theta-upper";
    s.lo = a;
    s.hi = b;
    s.limit = coef;
    if (!integers_only) {
        const RemainderExtrema r = theta_remainder_extrema(sieve, a, b);
        s.error = r.error;
        s.worst = r.sup;
        s.worst_at = r.arg_sup;
    } else {
        const double ia = std::ceil(a);
        const double ib = std::floor(b);
        if (!(ia <= ib)) throw PreconditionError("scan_theta_upper: no integer in [a, b]");
        if (!(ib <= static_cast<double>(sieve.hi()))) throw OutOfRangeError("scan_theta_upper: b outside the sieve");
        DoubleDouble run = sieve.theta(ia);
        s.worst = (DoubleDouble(ia) - run).to_double() / std::sqrt(ia);
        s.worst_at = ia;
        sieve.for_each_prime_power(static_cast<std::uint64_t>(ia) + 1, static_cast<std::uint64_t>(ib),
                                   [&](std::uint64_t n, double logp, int m) {
                                       if (m != 1) return;
                                       const double t = static_cast<double>(n - 1);
                                       const double v = (DoubleDouble(t) - run).to_double() / std::sqrt(t);
                                       if (v > s.worst) {
                                           s.worst = v;
                                           s.worst_at = t;
                                       }
                                       run += DoubleDouble(logp);
                                   });
        const double v = (DoubleDouble(ib) - run).to_double() / std::sqrt(ib);
        if (v > s.worst) {
            s.worst = v;
            s.worst_at = ib;
        }
        s.error = (sieve.log_sum_error(b) + 8.0 * kUnit * (2.0 * b + 10.0)) / std::sqrt(a);
    }
    s.pass = s.worst + s.error <= coef;
    return s;
}

ScanResult scan_theta_lower(const SieveTables& sieve, double a, double b, double coef) {
    const RemainderExtrema r = theta_remainder_extrema(sieve, a, b);
    ScanResult s;
    s.name = "theta-lower";
    s.lo = a;
    s.hi = b;
    s.limit = coef;
    s.error = r.error;
    s.worst = r.inf;
    s.worst_at = r.arg_inf;
    s.pass = r.inf - r.error > coef;
    return s;
}

ScanResult scan_li_pistar(const SieveTables& sieve, double a, double b) {
    if (!(a >= 2.0 && a <= b)) throw PreconditionError("scan_li_pistar: needs 2 <= a <= b");
    if (!(b <= static_cast<double>(sieve.hi()))) throw OutOfRangeError("scan_li_pistar: b outside the sieve");
    LiTracker li(a);
    DoubleDouble run = sieve.pi_star(a);
    // Lower side at a; upper side at left limits and at b.
    auto ratio = [](DoubleDouble diff, double t) { return diff.to_double() * std::log(t) / std::sqrt(t); };
    double max_up = -std::numeric_limits<double>::infinity();
    double min_lo = ratio(li.value() - run, a);
    double arg_up = a;
    double arg_lo = a;
    const auto first = static_cast<std::uint64_t>(std::floor(a)) + 1;
    const auto last = static_cast<std::uint64_t>(std::floor(b));
    sieve.for_each_prime_power(first, last, [&](std::uint64_t n, double, int m) {
        const double t = static_cast<double>(n);
        const DoubleDouble l = li.advance(t);
        const double up = ratio(l - run, t);
        if (up > max_up) {
            max_up = up;
            arg_up = t;
        }
        run += DoubleDouble(1.0) / DoubleDouble(static_cast<double>(m));
        const double down = ratio(l - run, t);
        if (down < min_lo) {
            min_lo = down;
            arg_lo = t;
        }
    });
    const double up_b = ratio(li.advance(b) - run, b);
    if (up_b > max_up) {
        max_up = up_b;
        arg_up = b;
    }
    ScanResult s;
    s.name = "li-pistar";
    s.lo = a;
    s.hi = b;
    s.limit = 1.0;
    s.error = (li.error_bound() + 1e-20) * std::log(b) / std::sqrt(a) + 8.0 * kUnit;
    if (max_up >= -min_lo) {
        s.worst = max_up;
        s.worst_at = arg_up;
    } else {
        s.worst = min_lo;
        s.worst_at = arg_lo;
    }
    s.pass = max_up + s.error < 1.0 && min_lo - s.error > -1.0;
    return s;
}

ScanResult scan_li_pi_positive(const SieveTables& sieve, double a, double b) {
    if (!(a >= 2.0 && a <= b)) throw PreconditionError("scan_li_pi_positive: needs 2 <= a <= b");
    if (!(b <= static_cast<double>(sieve.hi()))) throw OutOfRangeError("scan_li_pi_positive: b outside the sieve");
    LiTracker li(a);
    auto count = static_cast<double>(sieve.pi(a));
    double worst = (li.value() - DoubleDouble(count)).to_double();
    double worst_at = a;
    const auto first = static_cast<std::uint64_t>(std::floor(a)) + 1;
    const auto last = static_cast<std::uint64_t>(std::floor(b));
    sieve.for_each_prime_power(first, last, [&](std::uint64_t n, double, int m) {
        if (m != 1) return;
        const double t = static_cast<double>(n);
        count += 1.0;
        const double v = (li.advance(t) - DoubleDouble(count)).to_double();
        if (v < worst) {
            worst = v;
            worst_at = t;
        }
    });
    ScanResult s;
    s.name = "li-pi-positive";
    s.lo = a;
    s.hi = b;
    s.limit = 0.0;
    s.worst = worst;
    s.worst_at = worst_at;
    s.error = li.error_bound() + 4.0 * kUnit * b;
    s.pass = worst - s.error > 0.0;
    return s;
}

ScanResult scan_pi_upper(const SieveTables& sieve, double a, double b) {
    if (!(a >= 2.0 && a <= b)) throw PreconditionError("scan_pi_upper: needs 2 <= a <= b");
    if (!(b <= static_cast<double>(sieve.hi()))) throw OutOfRangeError("scan_pi_upper: b outside the sieve");
    const double xstar = pi_upper_argmin();
    auto h_min = [&](double u, double v) { return pi_upper_bound_fn(std::clamp(xstar, u, v)); };
    LiTracker li(a);
    auto count = static_cast<double>(sieve.pi(a));
    double gap_start = a;
    double worst = -std::numeric_limits<double>::infinity();
    double worst_at = a;
    double max_h = 0.0;
    auto close_gap = [&](double v) {
        // On [gap_start, v) pi is constant; li increases, so li(v) bounds it.
        const double d = (li.advance(v) - DoubleDouble(count)).to_double() - h_min(gap_start, v);
        max_h = std::max(max_h, pi_upper_bound_fn(v));
        if (d > worst) {
            worst = d;
            worst_at = v;
        }
    };
    const auto first = static_cast<std::uint64_t>(std::floor(a)) + 1;
    const auto last = static_cast<std::uint64_t>(std::floor(b));
    sieve.for_each_prime_power(first, last, [&](std::uint64_t n, double, int m) {
        if (m != 1) return;
        const double t = static_cast<double>(n);
        close_gap(t);
        count += 1.0;
        gap_start = t;
    });
    close_gap(b);
    ScanResult s;
    s.name = "pi-upper";
    s.lo = a;
    s.hi = b;
    s.limit = 0.0;
    s.worst = worst;
    s.worst_at = worst_at;
    s.error = li.error_bound() + 4.0 * kUnit * b + 1e-12 * max_h;
    s.pass = worst + s.error <= 0.0;
    return s;
}

}  // namespace psibound
