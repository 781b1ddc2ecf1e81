#pragma once

#include <complex>
#include <vector>

namespace growthlab {

// In-place radix-2 FFT, X_k = sum_j x_j exp(-2 pi i j k / N) for sign = -1
// (the forward convention used throughout), conjugate transform for sign = +1.
// No 1/N factor is applied in either direction. N must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& x, int sign);

inline void fft_forward(std::vector<std::complex<double>>& x) { fft_radix2(x, -1); }

inline void fft_inverse_unscaled(std::vector<std::complex<double>>& x) { fft_radix2(x, +1); }

}  // namespace growthlab
