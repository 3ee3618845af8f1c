#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "polarspec/covariance.hpp"
#include "polarspec/polar.hpp"
#include "polarspec/quaternion.hpp"
#include "polarspec/signal.hpp"

namespace polarspec {

/// Elliptically polarized bivariate tone
/// x[t] = 2a exp(i theta) (cos(chi) cos(2 pi nu0 t) + i sin(chi) sin(2 pi nu0 t)).
struct MonochromaticSpec {
  double amplitude{1.0};  // a > 0
  double theta{0.0};      // orientation, radians
  double chi{0.0};        // ellipticity, radians in [-pi/4, pi/4]
  double nu0{0.125};      // cycles/sample, in (0, 1/2)
};

/// Polarization-controlled bivariate white Gaussian noise
/// w[t] = sqrt(S0) (sqrt(1-Phi) w_u[t] + sqrt(Phi) exp(i theta) w_p[t]).
/// s0 is the total per-sample power E|w|^2, which equals the expected
/// periodogram value at every bin (the spectral density is flat).
struct WhiteNoiseSpec {
  double s0{1.0};          // total power, > 0
  double phi{0.0};         // degree of polarization in [0, 1]
  double theta{0.0};       // linear polarization orientation in [-pi/2, pi/2]
  std::uint64_t seed{0};
};

/// Per-bin quaternion spectral density plus a ledger of discrete lines
/// (bin index -> line weight) for Dirac components sitting on the grid.
struct TheoreticalSpectrum {
  std::vector<Quaternion> density;
  std::map<std::size_t, Quaternion> lines;

  std::size_t size() const { return density.size(); }
};

/// Deterministic evaluation of the tone at t = 0..n-1.
/// Throws if nu0 is outside (0, 1/2) or the amplitude is not positive.
BivariateSignal gen_monochromatic(const MonochromaticSpec& spec, std::size_t n);

/// Stokes parameters of the tone at nu0: S0 = a^2, S1 = a^2 cos2chi cos2theta,
/// S2 = a^2 cos2chi sin2theta, S3 = a^2 sin2chi. Fully polarized (Phi = 1).
StokesParameters oracle_monochromatic_stokes(const MonochromaticSpec& spec);

/// Closed-form autocovariance of the tone on lags -tau_max..tau_max:
/// gamma[tau] = 2 S0 c + 2j S1 c + 2k (S2 c + S3 s), c/s = cos/sin(2 pi nu0 tau).
/// Even in tau iff S3 = 0 (linear polarization).
QuaternionCovariance oracle_monochromatic_autocov(const MonochromaticSpec& spec,
                                                  int tau_max);

/// Seeded realization of the white noise model. w_u has independent N(0, 1/2)
/// components, w_p is real N(0, 1); per sample the draw order is
/// (u-part, v-part, polarized), which pins the stream layout.
/// Throws if phi is outside [0, 1] or s0 is not positive.
BivariateSignal gen_white_noise(const WhiteNoiseSpec& spec, std::size_t n);

/// Component moments implied by a WhiteNoiseSpec.
struct WhiteNoiseMoments {
  double sigma_u{0.0};
  double sigma_v{0.0};
  double rho_uv{0.0};
};
WhiteNoiseMoments white_noise_moments(const WhiteNoiseSpec& spec);

/// Constant spectral density of i.i.d. bivariate noise:
/// Gamma_ww = (su^2+sv^2) + j (su^2-sv^2) + k 2 rho su sv. No i component
/// (white noise shows no ellipticity).
Quaternion oracle_white_noise_density(double sigma_u, double sigma_v, double rho_uv);

/// Orientation of the linear polarization, theta = atan2(2 rho su sv,
/// su^2 - sv^2) / 2; equals pi/4 when su = sv (rho > 0) and 0 when rho = 0
/// with su > sv (pi/2 when the power sits in v). Throws when the noise is
/// unpolarized (orientation undefined).
double oracle_white_noise_angle(double sigma_u, double sigma_v, double rho_uv);

/// Spectral density of tone + independent noise: a flat noise floor plus the
/// tone's line at the bin nearest nu0 and its i-involuted image at n-k0.
/// The tone must sit exactly on the bin grid (nu0 * n integral).
TheoreticalSpectrum oracle_tone_plus_noise(const MonochromaticSpec& x_spec,
                                           const WhiteNoiseSpec& w_spec,
                                           std::size_t n);

}  // namespace polarspec
