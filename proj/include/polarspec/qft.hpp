#pragma once

#include <vector>

#include "polarspec/quaternion.hpp"
#include "polarspec/signal.hpp"

namespace polarspec {

/// Quaternion-valued spectrum on the Fourier grid nu_k = k/N, k = 0..N-1.
/// Frequencies above Nyquist wrap to the negative half axis.
struct QuaternionSpectrum {
  std::vector<Quaternion> bins;

  std::size_t size() const { return bins.size(); }
};

/// Fourier frequency of bin k, in [0, 1).
double bin_frequency(std::size_t k, std::size_t n);
/// Same bin mapped to [-1/2, 1/2).
double signed_bin_frequency(std::size_t k, std::size_t n);

/// Discrete QFT of axis j: X_k = sum_t x[t] * exp(-j 2 pi k t / N), with the
/// exponential multiplying on the right. Computed as two standard complex
/// DFTs through the symplectic split. Throws on empty input.
QuaternionSpectrum qft_forward(const std::vector<Quaternion>& x);
QuaternionSpectrum qft_forward(const BivariateSignal& x);

/// Inverse with 1/N normalization: x[t] = (1/N) sum_k X_k exp(j 2 pi k t / N).
std::vector<Quaternion> qft_inverse(const QuaternionSpectrum& X);

/// Largest deviation from the i-hermitian symmetry X(-nu) = invol_i(X(nu)),
/// i.e. max_k |X[N-k] - involution(X[k], I)| (bin 0 is self-paired).
/// Zero (to roundoff) exactly when the spectrum comes from a C_i-valued signal.
double check_i_hermitian(const QuaternionSpectrum& X);

}  // namespace polarspec
