#pragma once

// Simultaneous evaluation of F(y) = sum_j a_j e^{i w_j y} at the integers of
// [-Y, Y]: residues onto R-th roots of unity, a Chebyshev correction for the
// rounding and one FFT per correction degree. Also the Logan-windowed
// bandlimited interpolation formula and the block-splitting envelope built on
// top of both.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "psibound/double_double.hpp"
#include "psibound/zeros.hpp"

namespace psibound {

struct TrigSum {
    std::vector<double> freqs;                  // in [0, 2 pi)
    std::vector<std::complex<double>> coeffs;
    // Bounds on the absolute error of each stored frequency and on the
    // relative error of each stored coefficient.
    double freq_error = 0.0;
    double coeff_rel_error = 0.0;

    std::size_t size() const { return freqs.size(); }
    bool empty() const { return freqs.empty(); }
    double l1_norm() const;
};

// Logarithmic evaluation grid exp(y0 + k h), k in [-y_half, y_half].
struct GridSpec {
    double y0 = 0.0;
    double h = 0.0;
    std::int64_t y_half = 0;

    void validate() const;
    double log_point(std::int64_t k) const { return y0 + static_cast<double>(k) * h; }
};

// Frequencies gamma h mod 2 pi, coefficients a e^{i gamma y0}, both reduced in
// double-double. Off-line terms are not included.
TrigSum build_grid_sum(const CoefficientSet& coeffs, const GridSpec& grid);

// Compensated direct summation; the reference for the fast paths.
std::complex<double> direct_eval(const TrigSum& sum, double y);
// Bound on |direct_eval - F(y)| from rounding and the stored input errors.
double direct_eval_error(const TrigSum& sum, double y);

// Degree-n interpolant of exp(i t ratio) at the zeros of T_{n+1}, in the
// monomial basis.
struct ChebCorrection {
    int degree = 0;
    double ratio = 0.0;
    std::vector<std::complex<double>> coeffs;  // b_0 .. b_n
    double err_bound = 0.0;    // (ratio/2)^{n+1} sqrt(8)/(n+1)!
    double coeff_error = 0.0;  // bound on sum_l |b_l(stored) - b_l(exact interpolant)|

    std::complex<double> operator()(double t) const;
};

ChebCorrection cheb_correction(int n, double ratio);
double cheb_error_bound(int n, double ratio);

struct MultiEvalResult {
    std::vector<std::complex<double>> values;  // values[y + Y] for y in [-Y, Y]
    std::int64_t y_half = 0;
    std::size_t R = 0;
    int degree = 0;
    double error_bound = 0.0;  // uniform over the grid, includes input errors

    std::complex<double> at(std::int64_t y) const { return values[static_cast<std::size_t>(y + y_half)]; }
};

// Throws AccuracyError when the target cannot be met with degree
// <= ceil(log2 N) + 8.
MultiEvalResult fft_multi_eval(const TrigSum& sum, std::int64_t Y, double accuracy_target);

// Interpolation parameters. Samples are F(pi n / beta); the window is the
// Logan kernel with (kernel_c, kernel_eps).
struct BandlimitSpec {
    double lam = 0.0;
    double beta = 0.0;
    double kernel_c = 20.0;
    double kernel_eps = 0.0;
    double coeff_l1 = 0.0;  // A = sum |a_j|
    double tau = 0.0;       // max |w_j|

    // tau <= lam - eps < lam + eps <= beta.
    void validate() const;
    // Half-width c/eps of the truncated window.
    double window() const { return kernel_c / kernel_eps; }
};

// Truncation certificate 2A/sinh(c) (log(e(c+1))/pi + 2 eps/beta).
double bandlimited_truncation_bound(double A, double c, double eps, double beta);

struct SampleSet {
    std::int64_t n_first = 0;
    std::vector<std::complex<double>> values;  // F(pi n / beta), n = n_first, ...
    double error = 0.0;                        // uniform bound on sample errors

    std::int64_t n_last() const { return n_first + static_cast<std::int64_t>(values.size()) - 1; }
};

struct InterpResult {
    std::complex<double> value;
    double error_bound = 0.0;  // truncation + sample errors + rounding
};

// Throws PreconditionError if some n with |y - pi n/beta| <= c/eps is missing.
InterpResult bandlimited_interp(const SampleSet& samples, const BandlimitSpec& spec, double y);

struct EnvelopeBlock {
    std::size_t first = 0;  // index of the first coefficient
    std::size_t count = 0;
    double tau = 0.0;       // carrier (block midpoint frequency, grid units)
    double half_width = 0.0;
    double min = 0.0;       // min over the grid of Re e^{i y tau} F_k(y)
    double max = 0.0;
    double interp_error = 0.0;
};

struct BlockEnvelope {
    std::vector<EnvelopeBlock> blocks;
    std::size_t block_size = 0;
    double lower = 0.0;  // <= Re F(y) for every grid y
    double upper = 0.0;  // >= Re F(y) for every grid y
};

// Envelope of Re sum_j a_j e^{i gamma_j (y0 + y h)} over the integer grid,
// with the zeros split into consecutive blocks of `block_size`.
BlockEnvelope block_envelope_eval(const CoefficientSet& coeffs, const GridSpec& grid, std::size_t block_size,
                                  double sample_accuracy = 1e-12);

// Block size floor(x^eta) as used by the memory plan.
std::size_t block_size_for(double x, double eta);

}  // namespace psibound
