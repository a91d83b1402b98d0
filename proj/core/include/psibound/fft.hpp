#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace psibound {

// In-place iterative radix-2 FFT for power-of-two lengths. sign = -1 computes
// sum_k x_k e^{-2 pi i jk/n}, sign = +1 the unnormalized inverse.
class Fft {
public:
    explicit Fft(std::size_t n);
    std::size_t size() const { return n_; }
    void transform(std::span<std::complex<double>> data, int sign) const;
    // Worst-case componentwise round-off factor: |computed - exact| is at most
    // this value times sum_k |x_k|.
    double roundoff_factor() const;

private:
    std::size_t n_;
    unsigned log2n_;
    std::vector<std::complex<double>> twiddles_;  // e^{-2 pi i k/n}, k < n/2
    std::vector<std::size_t> bitrev_;
};

}  // namespace psibound
