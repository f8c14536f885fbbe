#pragma once

#include <complex>
#include <vector>

namespace hgu {

using cplx = std::complex<double>;

/// In-place forward/inverse DFT for any length (radix-2 + Bluestein).
/// Inverse includes the 1/n factor.
void fft(std::vector<cplx>& a, bool inverse);

/// 2-D DFT of row-major real data, returned row-major (unnormalized forward).
std::vector<cplx> fft2(const double* data, int rows, int cols);

/// Real part of the 2-D inverse DFT (includes 1/(rows*cols)).
std::vector<double> ifft2_real(std::vector<cplx> freq, int rows, int cols);

}  // namespace hgu
