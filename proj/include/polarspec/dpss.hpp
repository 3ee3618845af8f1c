#pragma once

#include <cstddef>
#include <vector>

namespace polarspec {

/// K orthonormal real tapers of length N, ordered by decreasing in-band
/// energy concentration. nw is the time-bandwidth product (W = nw/N);
/// concentrations holds the in-band energy fraction lambda_k of each taper
/// (empty for the rectangular taper, which has no bandwidth parameter).
struct TaperSet {
  std::size_t length{0};
  double nw{0.0};
  std::vector<std::vector<double>> tapers;
  std::vector<double> concentrations;

  std::size_t count() const { return tapers.size(); }
};

/// First K discrete prolate spheroidal sequences for bandwidth W = nw/N,
/// computed from the symmetric tridiagonal formulation (diagonal
/// ((N-1-2t)/2)^2 cos(2 pi W), off-diagonal t(N-t)/2) with a LAPACK
/// bisection + inverse-iteration eigensolve of the top K eigenpairs.
/// Signs: even-order tapers sum to >= 0; odd-order tapers have
/// h[1] - h[0] >= 0. Throws std::invalid_argument for k < 1, k > n or
/// nw outside (0, n/2); numerical_error if the eigensolve fails.
TaperSet slepian_tapers(std::size_t n, double nw, std::size_t k);

/// The single rectangular taper h[t] = 1/sqrt(N); with it the tapered
/// estimator reduces exactly to the polarization periodogram.
TaperSet rectangular_taper(std::size_t n);

}  // namespace polarspec
