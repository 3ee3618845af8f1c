#include "polarspec/sigmodel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polarspec/rng.hpp"

namespace polarspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate(const MonochromaticSpec& spec) {
  if (!(spec.amplitude > 0.0))
    throw std::invalid_argument("monochromatic spec: amplitude a must be > 0");
  if (!(spec.nu0 > 0.0 && spec.nu0 < 0.5))
    throw std::invalid_argument("monochromatic spec: nu0 must lie in (0, 1/2)");
}

void validate(const WhiteNoiseSpec& spec) {
  if (!(spec.s0 > 0.0))
    throw std::invalid_argument("white noise spec: s0 must be > 0");
  if (!(spec.phi >= 0.0 && spec.phi <= 1.0))
    throw std::invalid_argument("white noise spec: phi must lie in [0, 1]");
}

}  // namespace

BivariateSignal gen_monochromatic(const MonochromaticSpec& spec, std::size_t n) {
  validate(spec);
  if (n == 0) throw std::invalid_argument("gen_monochromatic: n must be >= 1");
  const std::complex<double> frame{std::cos(spec.theta), std::sin(spec.theta)};
  const double cc = std::cos(spec.chi), sc = std::sin(spec.chi);
  BivariateSignal x;
  x.samples.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double w = kTwoPi * spec.nu0 * static_cast<double>(t);
    x.samples[t] = 2.0 * spec.amplitude * frame *
                   std::complex<double>{cc * std::cos(w), sc * std::sin(w)};
  }
  return x;
}

StokesParameters oracle_monochromatic_stokes(const MonochromaticSpec& spec) {
  validate(spec);
  const double a2 = spec.amplitude * spec.amplitude;
  const double c2chi = std::cos(2.0 * spec.chi), s2chi = std::sin(2.0 * spec.chi);
  return {a2, a2 * c2chi * std::cos(2.0 * spec.theta),
          a2 * c2chi * std::sin(2.0 * spec.theta), a2 * s2chi};
}

QuaternionCovariance oracle_monochromatic_autocov(const MonochromaticSpec& spec,
                                                  int tau_max) {
  if (tau_max < 0)
    throw std::invalid_argument("oracle_monochromatic_autocov: tau_max must be >= 0");
  const StokesParameters s = oracle_monochromatic_stokes(spec);
  QuaternionCovariance cov;
  cov.max_lag = tau_max;
  cov.values.resize(2 * static_cast<std::size_t>(tau_max) + 1);
  for (int tau = -tau_max; tau <= tau_max; ++tau) {
    const double c = std::cos(kTwoPi * spec.nu0 * tau);
    const double sn = std::sin(kTwoPi * spec.nu0 * tau);
    cov.values[static_cast<std::size_t>(tau + tau_max)] =
        Quaternion{2.0 * s.s0 * c, 0.0, 2.0 * s.s1 * c,
                   2.0 * (s.s2 * c + s.s3 * sn)};
  }
  return cov;
}

BivariateSignal gen_white_noise(const WhiteNoiseSpec& spec, std::size_t n) {
  validate(spec);
  if (n == 0) throw std::invalid_argument("gen_white_noise: n must be >= 1");
  GaussianSampler rng(spec.seed);
  const double root_s0 = std::sqrt(spec.s0);
  const double unpol = std::sqrt(1.0 - spec.phi);
  const double pol = std::sqrt(spec.phi);
  const std::complex<double> frame{std::cos(spec.theta), std::sin(spec.theta)};
  BivariateSignal w;
  w.samples.resize(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::complex<double> wu = rng.unpolarized_complex();
    const double wp = rng.standard_normal();
    w.samples[t] = root_s0 * (unpol * wu + pol * frame * wp);
  }
  return w;
}

WhiteNoiseMoments white_noise_moments(const WhiteNoiseSpec& spec) {
  validate(spec);
  const double ct = std::cos(spec.theta), st = std::sin(spec.theta);
  const double var_u = spec.s0 * (0.5 * (1.0 - spec.phi) + spec.phi * ct * ct);
  const double var_v = spec.s0 * (0.5 * (1.0 - spec.phi) + spec.phi * st * st);
  const double cov_uv = spec.s0 * spec.phi * ct * st;
  WhiteNoiseMoments m;
  m.sigma_u = std::sqrt(var_u);
  m.sigma_v = std::sqrt(var_v);
  m.rho_uv = (m.sigma_u > 0.0 && m.sigma_v > 0.0)
                 ? cov_uv / (m.sigma_u * m.sigma_v)
                 : 0.0;
  return m;
}

Quaternion oracle_white_noise_density(double sigma_u, double sigma_v, double rho_uv) {
  if (sigma_u < 0.0 || sigma_v < 0.0)
    throw std::invalid_argument("white noise density: sigmas must be >= 0");
  if (std::abs(rho_uv) > 1.0)
    throw std::invalid_argument("white noise density: |rho_uv| must be <= 1");
  const double pu = sigma_u * sigma_u, pv = sigma_v * sigma_v;
  return {pu + pv, 0.0, pu - pv, 2.0 * rho_uv * sigma_u * sigma_v};
}

double oracle_white_noise_angle(double sigma_u, double sigma_v, double rho_uv) {
  const Quaternion g = oracle_white_noise_density(sigma_u, sigma_v, rho_uv);
  if (g.vector_norm() == 0.0)
    throw std::invalid_argument(
        "white noise angle: orientation undefined for unpolarized noise");
  return 0.5 * std::atan2(2.0 * rho_uv * sigma_u * sigma_v,
                          sigma_u * sigma_u - sigma_v * sigma_v);
}

TheoreticalSpectrum oracle_tone_plus_noise(const MonochromaticSpec& x_spec,
                                           const WhiteNoiseSpec& w_spec,
                                           std::size_t n) {
  validate(x_spec);
  const double k_exact = x_spec.nu0 * static_cast<double>(n);
  const auto k0 = static_cast<std::size_t>(std::llround(k_exact));
  if (std::abs(k_exact - static_cast<double>(k0)) > 1e-9 || k0 == 0 || 2 * k0 >= n)
    throw std::invalid_argument(
        "oracle_tone_plus_noise: nu0 must sit on an interior grid bin k0/n");
  const WhiteNoiseMoments m = white_noise_moments(w_spec);
  const Quaternion floor_density =
      oracle_white_noise_density(m.sigma_u, m.sigma_v, m.rho_uv);
  TheoreticalSpectrum out;
  out.density.assign(n, floor_density);
  const Quaternion line = stokes_to_quaternion(oracle_monochromatic_stokes(x_spec));
  out.lines[k0] = line;
  out.lines[n - k0] = conj_involution(line, Axis::I);
  return out;
}

}  // namespace polarspec
