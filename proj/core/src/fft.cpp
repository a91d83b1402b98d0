#include "psibound/fft.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "psibound/errors.hpp"

namespace psibound {

Fft::Fft(std::size_t n) : n_(n), log2n_(0), twiddles_(n / 2), bitrev_(n) {
    if (n == 0 || !std::has_single_bit(n)) throw PreconditionError("Fft: length must be a power of two");
    log2n_ = static_cast<unsigned>(std::countr_zero(n));
    for (std::size_t k = 0; k < n / 2; ++k) {
        long double angle = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                            static_cast<long double>(n);
        twiddles_[k] = {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (unsigned b = 0; b < log2n_; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n_ - 1 - b);
        bitrev_[i] = r;
    }
}

void Fft::transform(std::span<std::complex<double>> data, int sign) const {
    if (data.size() != n_) throw PreconditionError("Fft: data length mismatch");
    for (std::size_t i = 0; i < n_; ++i)
        if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n_ / len;
        for (std::size_t start = 0; start < n_; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                std::complex<double> w = twiddles_[k * stride];
                if (sign > 0) w = std::conj(w);
                std::complex<double> u = data[start + k];
                std::complex<double> v = data[start + k + half] * w;
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
    }
}

double Fft::roundoff_factor() const {
    // Each butterfly stage adds at most (|w v| rounding + twiddle error + add)
    // <= 6u relative to the stage's l1 mass, which never grows in l1 per output.
    constexpr double u = std::numeric_limits<double>::epsilon() / 2;
    return 6.0 * u * static_cast<double>(log2n_ + 1);
}

}  // namespace psibound
