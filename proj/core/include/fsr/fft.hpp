#pragma once

#include <complex>
#include <vector>

namespace fsr::fft {

/// In-place unnormalized 1-D DFT. Forward kernel is exp(-2*pi*i*k*m/n); the
/// inverse kernel flips the sign and applies no 1/n scale. Radix-2 for powers
/// of two, Bluestein otherwise.
void transform_1d(std::complex<double>* data, int n, bool inverse);

/// In-place unnormalized 2-D DFT of a row-major rows x cols array.
void transform_2d(std::complex<double>* data, int rows, int cols, bool inverse);

/// Convenience: forward 2-D DFT of a real field.
std::vector<std::complex<double>> forward_2d(const std::vector<double>& real,
                                             int rows, int cols);

}  // namespace fsr::fft
