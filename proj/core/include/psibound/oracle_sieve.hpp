#pragma once

// Exact desk-scale ground truth: a segmented odd-only sieve with
// checkpointed prefix sums, psi / theta / pi / pi* queries, direct evaluation
// of psi_{c,eps}, and exact extrema scans of step-function remainders.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "psibound/double_double.hpp"
#include "psibound/kernels.hpp"

namespace psibound {

struct PrimePower {
    std::uint64_t value = 0;  // p^m
    std::uint64_t p = 0;
    int m = 0;                // >= 2
};

class SieveTables {
public:
    static constexpr std::uint64_t kMaxLimit = 10'000'000'000ULL;
    static constexpr std::uint64_t kSegmentOdds = std::uint64_t{1} << 20;
    static constexpr std::uint64_t kCheckpointSpan = std::uint64_t{1} << 17;  // numbers per checkpoint

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    bool is_prime(std::uint64_t n) const;

    // Primes in [a, b] intersected with the sieved range.
    std::uint64_t count_primes(std::uint64_t a, std::uint64_t b) const;
    std::vector<std::uint64_t> primes_in(std::uint64_t a, std::uint64_t b) const;
    std::span<const PrimePower> prime_powers() const { return powers_; }

    // Cumulative functions; they need lo() == 0 and x <= hi().
    std::uint64_t pi(double x) const;
    DoubleDouble theta(double x) const;
    DoubleDouble psi(double x) const;
    DoubleDouble psi0(double x) const;
    DoubleDouble pi_star(double x) const;
    // Lambda(n) = log p if n = p^m, else 0.
    double von_mangoldt(std::uint64_t n) const;

    // Bound on |computed - exact| of theta(x) and psi(x) for x <= hi().
    double log_sum_error(double x) const;

    // Visits every prime power n (m >= 1) in [a, b] in increasing order:
    // f(n, log p, m).
    template <class F>
    void for_each_prime_power(std::uint64_t a, std::uint64_t b, F&& f) const;

    // CSV of (x, psi(x), theta(x), pi(x)) at multiples of `spacing`.
    void write_checkpoints(const std::filesystem::path& path, std::uint64_t spacing = 1'000'000) const;

    friend SieveTables sieve_range(std::uint64_t lo, std::uint64_t hi);

private:
    bool bit(std::uint64_t n) const;  // n odd, inside the bitset
    void require_cumulative(double x, const char* what) const;
    std::uint64_t floor_index(double x) const;

    std::uint64_t lo_ = 0;
    std::uint64_t hi_ = 0;
    std::uint64_t base_ = 0;              // even; bit i <-> base_ + 2 i + 1
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint64_t> cp_pi_;     // primes < base_ + k * kCheckpointSpan (from lo)
    std::vector<DoubleDouble> cp_theta_;
    std::vector<PrimePower> powers_;
    std::vector<DoubleDouble> powers_cum_;  // sum of log p over powers_[0..i]
};

// Throws OutOfRangeError for hi > 1e10 or lo > hi.
SieveTables sieve_range(std::uint64_t lo, std::uint64_t hi);

// Floor of the k-th root of n, exact.
std::uint64_t integer_root(std::uint64_t n, int k);

struct CheckedValue {
    double value = 0.0;
    double error = 0.0;
};

// psi_0(x) + sum over prime powers p^m in (e^{-eps} x, e^{eps} x) of
// M_{x,c,eps}(p^m)/m, with the quadrature and summation errors.
CheckedValue psi_ceps_direct(const SieveTables& sieve, double x, const MassFunction& mass);

struct RemainderExtrema {
    double inf = 0.0;
    double sup = 0.0;
    double arg_inf = 0.0;
    double arg_sup = 0.0;
    double error = 0.0;  // bound on the oracle error of inf and sup
};

// Exact extrema of (t - psi(t))/sqrt(t) over [a, b]: suprema are left limits
// at prime powers or t = b, infima are values at prime powers or t = a.
RemainderExtrema remainder_extrema(const SieveTables& sieve, double a, double b);
// The same for (t - theta(t))/sqrt(t).
RemainderExtrema theta_remainder_extrema(const SieveTables& sieve, double a, double b);

// li(t) tracked along increasing t: Gauss-Legendre on each gap, starting from
// log_integral at the first point.
class LiTracker {
public:
    explicit LiTracker(double start);
    // Advances to t >= current point and returns li(t).
    DoubleDouble advance(double t);
    double point() const { return t_; }
    DoubleDouble value() const { return li_; }
    double error_bound() const { return err_; }

private:
    double t_;
    DoubleDouble li_;
    double err_;
};

// One checked inequality over a range: `worst` is the extreme candidate value
// of the checked quantity (see the individual scans) and `pass` states the
// inequality after charging `error`.
struct ScanResult {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    double worst = 0.0;
    double worst_at = 0.0;
    double limit = 0.0;
    double error = 0.0;
    bool pass = false;
};

// |x - psi(x)| <= coef sqrt(x) on (a, b].
ScanResult scan_psi_abs(const SieveTables& sieve, double a, double b, double coef);
// x - theta(x) <= coef sqrt(x) on [a, b]; with integers_only the sup is
// taken over integer x (left limits at primes p are replaced by x = p - 1).
ScanResult scan_theta_upper(const SieveTables& sieve, double a, double b, double coef, bool integers_only = false);
// x - theta(x) > coef sqrt(x) on [a, b].
ScanResult scan_theta_lower(const SieveTables& sieve, double a, double b, double coef);
// |li(x) - pi*(x)| < sqrt(x)/log x on [a, b]; worst is the extreme of
// (li - pi*) log x / sqrt x over the candidates.
ScanResult scan_li_pistar(const SieveTables& sieve, double a, double b);
// li(x) - pi(x) > 0 on [a, b].
ScanResult scan_li_pi_positive(const SieveTables& sieve, double a, double b);
// li(x) - pi(x) <= sqrt(x)/log x (1.95 + 3.9/log x + 19.5/log^2 x) on [a, b];
// worst is the largest sup over a gap of (li - pi - bound).
ScanResult scan_pi_upper(const SieveTables& sieve, double a, double b);

// ---------------------------------------------------------------------------

template <class F>
void SieveTables::for_each_prime_power(std::uint64_t a, std::uint64_t b, F&& f) const {
    a = std::max(a, lo_);
    b = std::min(b, hi_);
    if (a > b) return;
    auto pw = std::lower_bound(powers_.begin(), powers_.end(), a,
                               [](const PrimePower& pp, std::uint64_t v) { return pp.value < v; });
    auto emit_powers_below = [&](std::uint64_t limit) {
        while (pw != powers_.end() && pw->value < limit && pw->value <= b) {
            f(pw->value, std::log(static_cast<double>(pw->p)), pw->m);
            ++pw;
        }
    };
    if (a <= 2 && 2 <= b) {
        emit_powers_below(2);
        f(std::uint64_t{2}, std::log(2.0), 1);
    }
    const std::uint64_t first_odd = std::max<std::uint64_t>(a | 1ULL, base_ + 1);
    if (first_odd <= b) {
        std::uint64_t idx = (first_odd - base_ - 1) / 2;
        const std::uint64_t last_idx = (b - base_ - 1) / 2;
        std::uint64_t w = idx / 64;
        std::uint64_t word = bits_[w] & (~0ULL << (idx % 64));
        const std::uint64_t last_w = last_idx / 64;
        for (;;) {
            if (w == last_w && (last_idx % 64) != 63) word &= (~0ULL >> (63 - last_idx % 64));
            while (word != 0) {
                const int bitpos = __builtin_ctzll(word);
                word &= word - 1;
                const std::uint64_t n = base_ + 2 * (w * 64 + static_cast<std::uint64_t>(bitpos)) + 1;
                emit_powers_below(n);
                f(n, std::log(static_cast<double>(n)), 1);
            }
            if (w == last_w) break;
            word = bits_[++w];
        }
    }
    emit_powers_below(b + 1);
}

}  // namespace psibound
