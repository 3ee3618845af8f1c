#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "polarspec/sigmodel.hpp"
#include "polarspec/specest.hpp"

namespace polarspec {

/// Degree-of-polarization estimate from M spectral estimates at one bin,
/// Phi = |sum of vector parts| / sum of scalar parts (vector-sum then norm,
/// not the mean of per-estimate values). nullopt when the total scalar part
/// is zero. Always <= 1 by the triangle inequality.
std::optional<double> averaged_dop_estimate(
    std::span<const SpectralDensityEstimate> estimates, std::size_t bin);

/// Per-bin mean of M estimates (the averaged periodogram / multitaper).
SpectralDensityEstimate average_estimates(
    std::span<const SpectralDensityEstimate> estimates);

/// Produces the realization with the given index; implementations embed their
/// own seed derivation (see derive_seed).
using SignalFactory = std::function<BivariateSignal(std::size_t realization)>;
using EstimatorFn = std::function<SpectralDensityEstimate(const BivariateSignal&)>;

/// Per-bin first and second moments of an ensemble of spectral estimates.
struct EnsembleMoments {
  std::vector<Quaternion> sum;     // per-bin sum of estimates
  std::vector<Quaternion> sum_sq;  // per-bin componentwise sum of squares
  std::size_t count{0};

  Quaternion mean(std::size_t bin) const;
  /// Componentwise unbiased sample variance.
  Quaternion component_variance(std::size_t bin) const;
  /// Eq.-74-style degree of polarization from the accumulated sums.
  std::optional<double> averaged_dop(std::size_t bin) const;
};

/// Monte-Carlo accumulation kernel: estimates `realizations` spectra and
/// accumulates their moments. Parallelized over fixed-size realization chunks
/// (OpenMP) with a serial chunk reduction, so the result is bitwise identical
/// for any thread count. threads = 0 means the OpenMP default.
EnsembleMoments ensemble_moments(const SignalFactory& factory,
                                 const EstimatorFn& estimator,
                                 std::size_t realizations, int threads = 0);

/// Plain-loop reference implementation, kept for testing the kernel.
EnsembleMoments ensemble_moments_reference(const SignalFactory& factory,
                                           const EstimatorFn& estimator,
                                           std::size_t realizations);

/// Degree-of-polarization bias study over a (Phi, M) grid.
struct BiasStudyConfig {
  std::vector<double> phi_grid{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  std::vector<int> m_values{1, 2, 5, 10, 20, 50, 500};
  std::size_t n{128};       // signal length (even)
  int replicates{100};      // Monte-Carlo repetitions per cell
  std::uint64_t seed{0};
};

struct BiasCell {
  double phi_true{0.0};
  int m{0};
  double bias{0.0};       // mean over replicates of (bin-averaged Phi-hat) - Phi
  double std_error{0.0};  // standard error of that mean
};

/// Paired difference between adjacent M values at fixed Phi; replicates share
/// realizations across M (running sums snapshotted), so mean_diff carries a
/// properly paired standard error.
struct BiasAdjacentDiff {
  double phi_true{0.0};
  int m_low{0}, m_high{0};
  double mean_diff{0.0};  // bias(m_low) - bias(m_high), expected >= 0
  double std_error{0.0};
};

struct BiasTable {
  std::vector<BiasCell> cells;  // (phi, ascending m) order
  std::vector<BiasAdjacentDiff> adjacent_diffs;
};

/// For each cell: generate M unit-power white-noise realizations with the
/// prescribed degree of polarization, average their periodograms per Eq.-74
/// and record the bias of Phi-hat averaged over the interior positive bins
/// k = 1..N/2-1. Deterministic given the seed for any thread count.
BiasTable run_bias_study(const BiasStudyConfig& cfg, int threads = 0);
BiasTable run_bias_study_reference(const BiasStudyConfig& cfg);

/// Tone-in-noise validation experiment: M realizations of y = x + w with the
/// elliptic tone (a = 1, theta = -pi/3, chi = pi/8, nu0 = 0.125) and white
/// noise (total power 10, Phi = 0.2, theta = pi/8); averaged polarization
/// periodogram and K-taper multitaper estimates against the closed-form
/// density.
struct Section5Config {
  std::uint64_t seed{0};
  std::size_t realizations{20};  // M
  std::size_t tapers{5};         // K
  double nw{4.0};
  std::size_t n{1024};
  int threads{0};
};

struct Section5Report {
  MonochromaticSpec tone;
  WhiteNoiseSpec noise;  // per-realization seeds are derived, seed field unused
  std::size_t tone_bin{0};
  TheoreticalSpectrum truth;     // density + line ledger
  TheoreticalSpectrum expected;  // expected periodogram on the bin grid
  SpectralDensityEstimate periodogram_avg;
  SpectralDensityEstimate multitaper_avg;
  std::vector<Quaternion> periodogram_var;  // componentwise per-bin variance
  std::vector<Quaternion> multitaper_var;
};

Section5Report run_section5_experiment(const Section5Config& cfg);

}  // namespace polarspec
