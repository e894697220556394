#pragma once

#include <complex>
#include <vector>

namespace chainlab {

/// In-place complex DFT, sign = -1 forward (e^{-i2pi kx/N}), +1 backward.
/// Backward is unnormalized; divide by N for the inverse.
void fft(std::vector<std::complex<double>>& data, int sign);

/// DFT of a real sequence, full-length complex spectrum.
std::vector<std::complex<double>> fft_forward(const std::vector<double>& x);

/// Inverse of fft_forward assuming a Hermitian spectrum; returns real part.
std::vector<double> fft_backward_real(std::vector<std::complex<double>> spectrum);

}  // namespace chainlab
