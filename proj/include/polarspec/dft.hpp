#pragma once

#include <complex>
#include <vector>

namespace polarspec {

/// In-place complex DFT, any length. Forward is unnormalized,
/// X[k] = sum_t x[t] exp(-2*pi*i*k*t/N); inverse carries the 1/N factor.
/// Backed by FFTW with a process-wide plan cache; execution is thread-safe.
void dft_forward(std::vector<std::complex<double>>& x);
void dft_inverse(std::vector<std::complex<double>>& x);

}  // namespace polarspec
