#include "psibound/trig_eval.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "psibound/errors.hpp"
#include "psibound/fft.hpp"
#include "psibound/kernels.hpp"
#include "psibound/parallel.hpp"

namespace psibound {

namespace {

constexpr double kUnit = std::numeric_limits<double>::epsilon() / 2;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct DDComplex {
    DoubleDouble re;
    DoubleDouble im;
};

DDComplex operator+(DDComplex a, DDComplex b) { return {a.re + b.re, a.im + b.im}; }
DDComplex operator*(DDComplex a, DDComplex b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
DDComplex operator*(DDComplex a, DoubleDouble s) { return {a.re * s, a.im * s}; }

// e^{i theta} by Taylor series in double-double; intended for |theta| <= 40.
DDComplex dd_expi(DoubleDouble theta) {
    DDComplex sum{DoubleDouble(1.0), DoubleDouble(0.0)};
    DDComplex term = sum;
    const DDComplex step_base{DoubleDouble(0.0), theta};
    for (int k = 1; k < 400; ++k) {
        term = term * step_base * (DoubleDouble(1.0) / DoubleDouble(static_cast<double>(k)));
        sum = sum + term;
        if (std::fabs(term.re.hi) + std::fabs(term.im.hi) < 1e-40 * (1.0 + std::fabs(sum.re.hi) + std::fabs(sum.im.hi)) &&
            static_cast<double>(k) > std::fabs(theta.hi))
            break;
    }
    return sum;
}

double wrap_two_pi(DoubleDouble phi) {
    double r = dd_mod_two_pi(phi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;
    return r;
}

std::complex<double> expi(DoubleDouble phi) {
    const double r = dd_mod_two_pi(phi);
    return {std::cos(r), std::sin(r)};
}

double sinc(double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; }

}  // namespace

double TrigSum::l1_norm() const {
    double s = 0.0;
    for (const auto& a : coeffs) s += std::abs(a);
    return s * (1.0 + 2.0 * kUnit * static_cast<double>(coeffs.size() + 1));
}

void GridSpec::validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) throw PreconditionError("GridSpec: h must be positive");
    if (y_half < 1) throw PreconditionError("GridSpec: Y must be at least 1");
    if (!std::isfinite(y0)) throw PreconditionError("GridSpec: y0 must be finite");
}

TrigSum build_grid_sum(const CoefficientSet& coeffs, const GridSpec& grid) {
    if (!(grid.h > 0.0)) throw PreconditionError("build_grid_sum: h must be positive");
    TrigSum out;
    const std::size_t n = coeffs.size();
    out.freqs.resize(n);
    out.coeffs.resize(n);
    const DoubleDouble h(grid.h);
    const DoubleDouble y0(grid.y0);
    double max_phase = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const DoubleDouble g = coeffs.gammas[j];
        out.freqs[j] = wrap_two_pi(g * h);
        const DoubleDouble phi = g * y0;
        max_phase = std::max(max_phase, std::fabs(phi.hi));
        out.coeffs[j] = coeffs.a[j] * expi(phi);
    }
    // Frequency: rounding to double in [0, 2 pi) plus the reduction error.
    out.freq_error = kUnit * kTwoPi + 0x1p-98 * (1.0 + coeffs.T * grid.h);
    // Coefficient: the carried coefficient error, the reduction error of the
    // carrier phase and the complex multiply.
    out.coeff_rel_error = 1e-13 + 0x1p-98 * (1.0 + max_phase) + 8.0 * kUnit;
    return out;
}

std::complex<double> direct_eval(const TrigSum& sum, double y) {
    CompensatedSum re;
    CompensatedSum im;
    for (std::size_t j = 0; j < sum.size(); ++j) {
        const DoubleDouble phi = dd_detail::two_prod(sum.freqs[j], y);
        const std::complex<double> t = sum.coeffs[j] * expi(phi);
        re.add(t.real());
        im.add(t.imag());
    }
    return {re.to_double(), im.to_double()};
}

double direct_eval_error(const TrigSum& sum, double y) {
    const double A = sum.l1_norm();
    const double phase = 0x1p-98 * (1.0 + 2.0 * std::numbers::pi * std::fabs(y));
    return (sum.coeff_rel_error + sum.freq_error * std::fabs(y) + phase + 8.0 * kUnit) * A +
           static_cast<double>(sum.size()) * 0x1p-100 * A + 2.0 * kUnit * A;
}

double cheb_error_bound(int n, double ratio) {
    // (ratio/2)^{n+1} sqrt(8) / (n+1)! in log space.
    const double k = static_cast<double>(n + 1);
    return std::exp(k * std::log(ratio / 2.0) - std::lgamma(k + 1.0)) * std::sqrt(8.0);
}

ChebCorrection cheb_correction(int n, double ratio) {
    if (n < 0) throw PreconditionError("cheb_correction: degree must be >= 0");
    if (!(ratio > 0.0) || !std::isfinite(ratio)) throw PreconditionError("cheb_correction: ratio must be positive");
    if (n > 60) throw PreconditionError("cheb_correction: degree above 60 is not supported");
    const int m = n + 1;
    const DoubleDouble pi_dd = kTwoPiDD * DoubleDouble(0.5);

    // Chebyshev coefficients of the interpolant.
    std::vector<DDComplex> cheb(static_cast<std::size_t>(m), DDComplex{});
    for (int k = 1; k <= m; ++k) {
        const DoubleDouble angle = pi_dd * DoubleDouble(static_cast<double>(2 * k - 1)) /
                                   DoubleDouble(static_cast<double>(2 * m));
        const DoubleDouble x = dd_expi(angle).re;
        const DDComplex fx = dd_expi(x * DoubleDouble(ratio));
        std::vector<DoubleDouble> T(static_cast<std::size_t>(m));
        T[0] = DoubleDouble(1.0);
        if (m > 1) T[1] = x;
        for (int j = 2; j < m; ++j)
            T[static_cast<std::size_t>(j)] = DoubleDouble(2.0) * x * T[static_cast<std::size_t>(j - 1)] -
                                             T[static_cast<std::size_t>(j - 2)];
        for (int j = 0; j < m; ++j)
            cheb[static_cast<std::size_t>(j)] = cheb[static_cast<std::size_t>(j)] + fx * T[static_cast<std::size_t>(j)];
    }
    const DoubleDouble scale = DoubleDouble(2.0) / DoubleDouble(static_cast<double>(m));
    for (int j = 0; j < m; ++j) cheb[static_cast<std::size_t>(j)] = cheb[static_cast<std::size_t>(j)] * scale;
    cheb[0] = cheb[0] * DoubleDouble(0.5);

    // Monomial coefficients of T_j (exact integers) and the basis change.
    std::vector<std::vector<double>> tcoef(static_cast<std::size_t>(m));
    tcoef[0] = {1.0};
    if (m > 1) tcoef[1] = {0.0, 1.0};
    for (int j = 2; j < m; ++j) {
        std::vector<double> next(static_cast<std::size_t>(j + 1), 0.0);
        const auto& a = tcoef[static_cast<std::size_t>(j - 1)];
        const auto& b = tcoef[static_cast<std::size_t>(j - 2)];
        for (std::size_t i = 0; i < a.size(); ++i) next[i + 1] += 2.0 * a[i];
        for (std::size_t i = 0; i < b.size(); ++i) next[i] -= b[i];
        tcoef[static_cast<std::size_t>(j)] = std::move(next);
    }
    std::vector<DDComplex> mono(static_cast<std::size_t>(m), DDComplex{});
    double max_tcoef_sum = 0.0;
    for (int j = 0; j < m; ++j) {
        double s = 0.0;
        const auto& tc = tcoef[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < tc.size(); ++i) {
            mono[i] = mono[i] + cheb[static_cast<std::size_t>(j)] * DoubleDouble(tc[i]);
            s += std::fabs(tc[i]);
        }
        max_tcoef_sum = std::max(max_tcoef_sum, s);
    }

    ChebCorrection out;
    out.degree = n;
    out.ratio = ratio;
    out.coeffs.resize(static_cast<std::size_t>(m));
    double coeff_abs = 0.0;
    for (int i = 0; i < m; ++i) {
        out.coeffs[static_cast<std::size_t>(i)] = {mono[static_cast<std::size_t>(i)].re.to_double(),
                                                   mono[static_cast<std::size_t>(i)].im.to_double()};
        coeff_abs += std::abs(out.coeffs[static_cast<std::size_t>(i)]);
    }
    out.err_bound = cheb_error_bound(n, ratio);
    // Final rounding of b_l, plus the double-double work: node and value
    // errors (Taylor mass e^ratio) propagated through sums of |T_j| coefficients.
    const double dd_err = 0x1p-96 * static_cast<double>(m) * static_cast<double>(m) * max_tcoef_sum *
                          std::max(1.0, std::exp(std::min(ratio, 700.0)));
    out.coeff_error = 2.0 * kUnit * coeff_abs + dd_err;
    return out;
}

std::complex<double> ChebCorrection::operator()(double t) const {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
}

MultiEvalResult fft_multi_eval(const TrigSum& sum, std::int64_t Y, double accuracy_target) {
    if (Y < 0) throw PreconditionError("fft_multi_eval: Y must be >= 0");
    if (!(accuracy_target > 0.0)) throw PreconditionError("fft_multi_eval: accuracy target must be positive");
    MultiEvalResult out;
    out.y_half = Y;
    out.values.assign(static_cast<std::size_t>(2 * Y + 1), std::complex<double>(0.0, 0.0));
    const std::size_t N = sum.size();
    if (N == 0) return out;
    for (double f : sum.freqs)
        if (!(f >= 0.0 && f < kTwoPi)) throw PreconditionError("fft_multi_eval: frequencies must lie in [0, 2 pi)");

    const int log2n_round = static_cast<int>(std::lround(std::log2(static_cast<double>(N))));
    const std::size_t R = std::size_t{1} << std::max(0, log2n_round);
    out.R = R;
    const double A = sum.l1_norm();
    const double ratio = std::numbers::pi * static_cast<double>(std::max<std::int64_t>(Y, 1)) / static_cast<double>(R);
    const int cap = static_cast<int>(std::ceil(std::log2(static_cast<double>(N)))) + 8;

    int degree = -1;
    for (int n = 0; n <= cap; ++n) {
        if (cheb_error_bound(n, ratio) * A <= accuracy_target / 3.0) {
            degree = n;
            break;
        }
    }
    if (degree < 0)
        throw AccuracyError("fft_multi_eval: accuracy target not reachable with Chebyshev degree <= ceil(log2 N) + 8");
    out.degree = degree;
    const ChebCorrection P = cheb_correction(degree, ratio);

    // Residues n_j (ties to even) and scaled residuals t_j = R delta_j / pi in [-1, 1].
    std::vector<std::size_t> bucket(N);
    std::vector<double> tj(N);
    const DoubleDouble step = kTwoPiDD / DoubleDouble(static_cast<double>(R));
    std::vector<std::uint32_t> occupancy(R, 0);
    for (std::size_t j = 0; j < N; ++j) {
        const DoubleDouble q = DoubleDouble(sum.freqs[j]) * DoubleDouble(static_cast<double>(R)) * kInvTwoPiDD;
        const DoubleDouble fq = dd_floor(q);
        const DoubleDouble frac = q - fq;
        double nj = fq.to_double();
        if (frac > DoubleDouble(0.5) || (frac == DoubleDouble(0.5) && std::fmod(nj, 2.0) != 0.0)) nj += 1.0;
        const DoubleDouble delta = DoubleDouble(sum.freqs[j]) - step * DoubleDouble(nj);
        double t = (delta * DoubleDouble(static_cast<double>(R)) / (kTwoPiDD * DoubleDouble(0.5))).to_double();
        t = std::clamp(t, -1.0, 1.0);
        tj[j] = t;
        const auto k = static_cast<std::size_t>(static_cast<std::int64_t>(nj)) % R;
        bucket[j] = k;
        ++occupancy[k];
    }
    const double max_bucket = *std::max_element(occupancy.begin(), occupancy.end());

    const Fft fft(R);
    std::vector<std::complex<double>> work(R);
    std::vector<double> s_pow(out.values.size(), 1.0);
    const double Yd = static_cast<double>(std::max<std::int64_t>(Y, 1));
    std::vector<double> tpow(N, 1.0);
    double b_abs = 0.0;
    double moment_err = 0.0;
    for (int l = 0; l <= degree; ++l) {
        std::fill(work.begin(), work.end(), std::complex<double>(0.0, 0.0));
        double mass = 0.0;  // sum_j |a_j| |t_j|^l bounds the l1 norm of the moment array
        for (std::size_t j = 0; j < N; ++j) {
            work[bucket[j]] += sum.coeffs[j] * tpow[j];
            mass += std::abs(sum.coeffs[j]) * std::fabs(tpow[j]);
        }
        mass *= 1.0 + 4.0 * kUnit * static_cast<double>(N + l + 2);
        fft.transform(work, +1);
        const std::complex<double> b = P.coeffs[static_cast<std::size_t>(l)];
        b_abs += std::abs(b) * mass;
        moment_err += std::abs(b) * mass * ((3.0 * l + degree + 8.0 + max_bucket) * kUnit + fft.roundoff_factor());
        for (std::int64_t y = -Y; y <= Y; ++y) {
            const auto idx = static_cast<std::size_t>(y + Y);
            const std::size_t k = static_cast<std::size_t>(((y % static_cast<std::int64_t>(R)) + static_cast<std::int64_t>(R)) %
                                                           static_cast<std::int64_t>(R));
            out.values[idx] += b * s_pow[idx] * work[k];
            s_pow[idx] *= static_cast<double>(y) / Yd;
        }
        for (std::size_t j = 0; j < N; ++j) tpow[j] *= tj[j];
    }

    // Input errors: coefficient relative error and frequency error times |y|.
    const double input_err = (sum.coeff_rel_error + sum.freq_error * static_cast<double>(Y)) * A;
    out.error_bound = A * (P.err_bound + P.coeff_error + 4.0 * kUnit * ratio) + moment_err +
                      (degree + 4.0) * kUnit * b_abs + input_err;
    if (!(out.error_bound <= accuracy_target))
        throw AccuracyError("fft_multi_eval: certified error " + std::to_string(out.error_bound) +
                            " exceeds the accuracy target");
    return out;
}

void BandlimitSpec::validate() const {
    if (!(kernel_c > 0.0 && kernel_eps > 0.0 && lam > 0.0 && beta > 0.0))
        throw PreconditionError("BandlimitSpec: parameters must be positive");
    if (!(tau <= lam - kernel_eps && lam - kernel_eps < lam + kernel_eps && lam + kernel_eps <= beta))
        throw PreconditionError("BandlimitSpec: needs tau <= lam - eps < lam + eps <= beta");
    if (!(coeff_l1 >= 0.0)) throw PreconditionError("BandlimitSpec: coefficient norm must be >= 0");
}

double bandlimited_truncation_bound(double A, double c, double eps, double beta) {
    const double v = 2.0 * A / std::sinh(c) *
                     ((1.0 + std::log(c + 1.0)) / std::numbers::pi + 2.0 * eps / beta);
    return v * (1.0 + 8.0 * kUnit);
}

InterpResult bandlimited_interp(const SampleSet& samples, const BandlimitSpec& spec, double y) {
    spec.validate();
    const double spacing = std::numbers::pi / spec.beta;
    const double window = spec.window();
    const auto n_lo = static_cast<std::int64_t>(std::ceil((y - window) / spacing));
    const auto n_hi = static_cast<std::int64_t>(std::floor((y + window) / spacing));
    if (samples.values.empty() || n_lo < samples.n_first || n_hi > samples.n_last())
        throw PreconditionError("bandlimited_interp: samples do not cover the window around y");
    const MollifierParams kernel{spec.kernel_c, spec.kernel_eps, 0.0};
    CompensatedSum re;
    CompensatedSum im;
    double weight_abs = 0.0;
    double sample_abs = 0.0;
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
        const double u = y - spacing * static_cast<double>(n);
        if (std::fabs(u) > window) continue;
        const double w = sinc(spec.lam * u) * logan_ell(kernel, u);
        const std::complex<double> s = samples.values[static_cast<std::size_t>(n - samples.n_first)];
        re.add(w * s.real());
        im.add(w * s.imag());
        weight_abs += std::fabs(w);
        sample_abs += std::fabs(w) * std::abs(s);
    }
    const double scale = spec.lam / spec.beta;
    InterpResult out;
    out.value = {scale * re.to_double(), scale * im.to_double()};
    // Window truncation, sample errors, and rounding of the weights (the
    // abscissa u carries ~ulp(y) so sinc and l pick up a relative error of
    // order (lam + c eps) ulp(y)).
    const double weight_rel = 16.0 * kUnit * (1.0 + (spec.lam + spec.kernel_c * spec.kernel_eps) * (std::fabs(y) + window));
    out.error_bound = bandlimited_truncation_bound(spec.coeff_l1, spec.kernel_c, spec.kernel_eps, spec.beta) +
                      scale * samples.error * weight_abs + scale * weight_rel * sample_abs +
                      4.0 * kUnit * std::abs(out.value);
    return out;
}

std::size_t block_size_for(double x, double eta) {
    if (!(x > 1.0) || !(eta > 0.0)) throw PreconditionError("block_size_for: needs x > 1 and eta > 0");
    const double n = std::floor(std::pow(x, eta));
    return static_cast<std::size_t>(std::max(1.0, std::min(n, 1e18)));
}

BlockEnvelope block_envelope_eval(const CoefficientSet& coeffs, const GridSpec& grid, std::size_t block_size,
                                  double sample_accuracy) {
    grid.validate();
    if (block_size == 0) throw PreconditionError("block_envelope_eval: block size must be positive");
    BlockEnvelope env;
    env.block_size = block_size;
    const std::size_t n = coeffs.size();
    const std::size_t nblocks = (n + block_size - 1) / block_size;
    env.blocks.resize(nblocks);
    const DoubleDouble h(grid.h);
    const DoubleDouble y0(grid.y0);
    const std::int64_t Y = grid.y_half;

    parallel_for_blocks(nblocks, [&](std::size_t k) {
        EnvelopeBlock& blk = env.blocks[k];
        blk.first = k * block_size;
        blk.count = std::min(block_size, n - blk.first);
        const std::size_t j0 = blk.first;
        const std::size_t j1 = blk.first + blk.count;

        // Carrier at the block midpoint; frequencies in grid units.
        const DoubleDouble w_first = coeffs.gammas[j0] * h;
        const DoubleDouble w_last = coeffs.gammas[j1 - 1] * h;
        const DoubleDouble tau = (w_first + w_last) * DoubleDouble(0.5);
        blk.tau = tau.to_double();
        const double W = std::max((w_last - tau).to_double(), 1e-6);
        blk.half_width = W;

        BandlimitSpec spec;
        spec.tau = W;
        spec.kernel_c = 20.0;
        // lam = 1.125 W, beta = 1.25 W, with a relative margin for rounding.
        const double Wm = W * (1.0 + 1e-12);
        spec.kernel_eps = 0.125 * Wm;
        spec.lam = Wm + spec.kernel_eps;
        spec.beta = spec.lam + spec.kernel_eps;
        const double spacing = std::numbers::pi / spec.beta;

        // Coarse sum: G(pi n / beta) = sum b_j e^{i (w_j - tau) (pi/beta) n}.
        TrigSum coarse;
        coarse.freqs.resize(blk.count);
        coarse.coeffs.resize(blk.count);
        double max_phase = 0.0;
        const DoubleDouble to_coarse = (kTwoPiDD * DoubleDouble(0.5)) / DoubleDouble(spec.beta);
        for (std::size_t j = j0; j < j1; ++j) {
            const DoubleDouble rel = coeffs.gammas[j] * h - tau;
            coarse.freqs[j - j0] = wrap_two_pi(rel * to_coarse);
            const DoubleDouble phi = coeffs.gammas[j] * y0;
            max_phase = std::max(max_phase, std::fabs(phi.hi));
            coarse.coeffs[j - j0] = coeffs.a[j] * expi(phi);
        }
        coarse.freq_error = kUnit * kTwoPi + 0x1p-96 * (1.0 + W);
        coarse.coeff_rel_error = 1e-13 + 0x1p-98 * (1.0 + max_phase) + 8.0 * kUnit;
        const double A = coarse.l1_norm();
        spec.coeff_l1 = A;

        const double window = spec.window();
        const auto n_lo = static_cast<std::int64_t>(std::floor((-static_cast<double>(Y) - window) / spacing)) - 1;
        const auto n_hi = static_cast<std::int64_t>(std::ceil((static_cast<double>(Y) + window) / spacing)) + 1;
        const std::int64_t Yc = std::max(-n_lo, n_hi);

        SampleSet samples;
        samples.n_first = -Yc;
        samples.values.resize(static_cast<std::size_t>(2 * Yc + 1));
        // The FFT length tracks N, so the fast path is used when Y <= R; short
        // blocks with wide sample ranges are summed directly.
        const double R = std::exp2(std::round(std::log2(static_cast<double>(blk.count))));
        if (static_cast<double>(Yc) <= R && blk.count >= 16) {
            const MultiEvalResult fast = fft_multi_eval(coarse, Yc, sample_accuracy);
            samples.values = fast.values;
            samples.error = fast.error_bound;
        } else {
            double err = 0.0;
            for (std::int64_t m = -Yc; m <= Yc; ++m) {
                samples.values[static_cast<std::size_t>(m + Yc)] = direct_eval(coarse, static_cast<double>(m));
                err = std::max(err, direct_eval_error(coarse, static_cast<double>(m)));
            }
            samples.error = err;
        }

        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        double err = 0.0;
        for (std::int64_t y = -Y; y <= Y; ++y) {
            const InterpResult g = bandlimited_interp(samples, spec, static_cast<double>(y));
            const double v = (g.value * expi(tau * DoubleDouble(static_cast<double>(y)))).real();
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            const double phase_err = 0x1p-98 * (1.0 + std::fabs(blk.tau * static_cast<double>(y)));
            err = std::max(err, g.error_bound + (phase_err + 4.0 * kUnit) * (std::abs(g.value) + g.error_bound));
        }
        blk.min = lo;
        blk.max = hi;
        blk.interp_error = err;
    });

    CompensatedSum lower;
    CompensatedSum upper;
    double err_total = 0.0;
    for (const auto& b : env.blocks) {
        lower.add(b.min);
        upper.add(b.max);
        err_total += b.interp_error;
    }
    const double slack = 4.0 * kUnit * static_cast<double>(nblocks + 1) *
                         (std::fabs(lower.to_double()) + std::fabs(upper.to_double()) + err_total);
    env.lower = lower.to_double() - err_total - slack;
    env.upper = upper.to_double() + err_total + slack;
    return env;
}

}  // namespace psibound
