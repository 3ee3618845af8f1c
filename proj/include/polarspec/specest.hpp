#pragma once

#include <span>
#include <vector>

#include "polarspec/covariance.hpp"
#include "polarspec/dpss.hpp"
#include "polarspec/qft.hpp"
#include "polarspec/sigmodel.hpp"
#include "polarspec/signal.hpp"

namespace polarspec {

enum class EstimatorMethod { periodogram, direct_tapered, multitaper };

/// Quaternion spectral density estimate on the full bin grid k = 0..N-1.
struct SpectralDensityEstimate {
  std::vector<Quaternion> bins;
  EstimatorMethod method{EstimatorMethod::periodogram};
  std::size_t taper_count{0};

  std::size_t size() const { return bins.size(); }
};

/// Biased cross-covariance estimate R[tau] = (1/N) sum u[t+tau] v[t] for
/// tau >= 0, extended by R[tau] = R_vu[-tau] for tau < 0 and zero for
/// |tau| >= N. Throws on length mismatch or empty input.
RealCovariance est_cross_cov(std::span<const double> u, std::span<const double> v);

/// Quaternion autocovariance gamma[tau] = (Ruu+Rvv) + j(Ruu-Rvv) + k 2Rvu
/// assembled from the biased estimators (Rvu[tau] pairs v[t+tau] with u[t]);
/// the i component is identically zero. Its QFT evaluated on the bin grid is
/// exactly the polarization periodogram.
QuaternionCovariance est_quaternion_autocov(const BivariateSignal& x);

/// Full five-term quaternion cross-covariance of two bivariate signals;
/// reduces to est_quaternion_autocov when y = x.
QuaternionCovariance est_quaternion_cross_cov(const BivariateSignal& x,
                                              const BivariateSignal& y);

/// Polarization periodogram: with F = qft_forward(x),
/// Gamma_k = (|F_k|^2 + polarmod_j(F_k) j) / N.
/// Samples are indexed t = 0..N-1; a global index shift only multiplies F_k
/// by a unit j-phase, which both |F|^2 and polarmod_j are blind to.
SpectralDensityEstimate polarization_periodogram(const BivariateSignal& x);

/// Single-taper direct estimator: the periodogram formula applied to h.*x
/// without the 1/N factor (the taper's unit energy carries the normalization).
SpectralDensityEstimate direct_tapered_estimate(const BivariateSignal& x,
                                                std::span<const double> taper);

/// Average of the K single-taper direct estimators of a TaperSet.
SpectralDensityEstimate multitaper_estimate(const BivariateSignal& x,
                                            const TaperSet& tapers);

/// Fejer kernel F_N(nu) = sin^2(pi N nu) / (N sin^2(pi nu)), with the
/// removable singularity F_N(integer) = N.
double fejer_kernel(double nu, std::size_t n);

/// Expected value of the polarization periodogram for a given true density:
/// circular convolution with the Fejer kernel on the bin grid. On-grid lines
/// land entirely in their own bin (weight N); constant densities pass through
/// unchanged. The returned spectrum has no line ledger.
TheoreticalSpectrum expected_periodogram(const TheoreticalSpectrum& density,
                                         std::size_t n);

}  // namespace polarspec
