#include "polarspec/specest.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polarspec {

RealCovariance est_cross_cov(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw std::invalid_argument("est_cross_cov: length mismatch");
  if (u.empty()) throw std::invalid_argument("est_cross_cov: empty input");
  const auto n = static_cast<int>(u.size());
  RealCovariance r;
  r.max_lag = n - 1;
  r.values.assign(2 * static_cast<std::size_t>(n) - 1, 0.0);
  for (int tau = 0; tau < n; ++tau) {
    double acc_uv = 0.0, acc_vu = 0.0;
    for (int t = 0; t + tau < n; ++t) {
      acc_uv += u[static_cast<std::size_t>(t + tau)] * v[static_cast<std::size_t>(t)];
      acc_vu += v[static_cast<std::size_t>(t + tau)] * u[static_cast<std::size_t>(t)];
    }
    r.values[static_cast<std::size_t>(r.max_lag + tau)] = acc_uv / n;
    r.values[static_cast<std::size_t>(r.max_lag - tau)] = acc_vu / n;
  }
  return r;
}

namespace {

struct Components {
  std::vector<double> u, v;
};

Components split_components(const BivariateSignal& x) {
  Components c;
  c.u.resize(x.size());
  c.v.resize(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    c.u[t] = x.u(t);
    c.v[t] = x.v(t);
  }
  return c;
}

}  // namespace

QuaternionCovariance est_quaternion_autocov(const BivariateSignal& x) {
  if (x.size() == 0) throw std::invalid_argument("est_quaternion_autocov: empty signal");
  const Components c = split_components(x);
  const RealCovariance ruu = est_cross_cov(c.u, c.u);
  const RealCovariance rvv = est_cross_cov(c.v, c.v);
  // The k component carries R_vu[tau] (v leading), the orientation for which
  // the QFT of this sequence reproduces the polarization periodogram and the
  // monochromatic autocovariance carries +S3 sin.
  const RealCovariance rvu = est_cross_cov(c.v, c.u);
  QuaternionCovariance g;
  g.max_lag = ruu.max_lag;
  g.values.resize(ruu.values.size());
  for (int tau = -g.max_lag; tau <= g.max_lag; ++tau) {
    const double a = ruu.at(tau), b = rvv.at(tau);
    g.values[static_cast<std::size_t>(tau + g.max_lag)] =
        Quaternion{a + b, 0.0, a - b, 2.0 * rvu.at(tau)};
  }
  return g;
}

QuaternionCovariance est_quaternion_cross_cov(const BivariateSignal& x,
                                              const BivariateSignal& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("est_quaternion_cross_cov: length mismatch");
  if (x.size() == 0)
    throw std::invalid_argument("est_quaternion_cross_cov: empty signal");
  const Components cx = split_components(x);
  const Components cy = split_components(y);
  // Same lag orientation as the autocovariance: expanding the cross-spectral
  // density E[dX conj(dY)] + E[dX conj_invol_j(dY)] j and inverting gives
  // gamma_xy = (R_uxuy + R_vyvx) + i (R_vxuy - R_vyux)
  //          + j (R_uxuy - R_vyvx) + k (R_vxuy + R_vyux),
  // each R with its first-named component leading at positive lags.
  const RealCovariance r_uxuy = est_cross_cov(cx.u, cy.u);
  const RealCovariance r_vyvx = est_cross_cov(cy.v, cx.v);
  const RealCovariance r_vxuy = est_cross_cov(cx.v, cy.u);
  const RealCovariance r_vyux = est_cross_cov(cy.v, cx.u);
  QuaternionCovariance g;
  g.max_lag = r_uxuy.max_lag;
  g.values.resize(r_uxuy.values.size());
  for (int tau = -g.max_lag; tau <= g.max_lag; ++tau) {
    g.values[static_cast<std::size_t>(tau + g.max_lag)] =
        Quaternion{r_uxuy.at(tau) + r_vyvx.at(tau),
                   r_vxuy.at(tau) - r_vyux.at(tau),
                   r_uxuy.at(tau) - r_vyvx.at(tau),
                   r_vxuy.at(tau) + r_vyux.at(tau)};
  }
  return g;
}

namespace {

// |F|^2 + polarmod_j(F) j, the quaternion direct-estimator kernel shared by
// the periodogram and the tapered estimators.
Quaternion density_bin(const Quaternion& f) {
  return Quaternion{f.norm_sq()} + polarmod_j(f) * Quaternion::unit_j();
}

}  // namespace

SpectralDensityEstimate polarization_periodogram(const BivariateSignal& x) {
  if (x.size() == 0)
    throw std::invalid_argument("polarization_periodogram: empty signal");
  const QuaternionSpectrum f = qft_forward(x);
  SpectralDensityEstimate est;
  est.method = EstimatorMethod::periodogram;
  est.bins.resize(f.size());
  const double inv_n = 1.0 / static_cast<double>(x.size());
  for (std::size_t k = 0; k < f.size(); ++k)
    est.bins[k] = density_bin(f.bins[k]) * inv_n;
  return est;
}

SpectralDensityEstimate direct_tapered_estimate(const BivariateSignal& x,
                                                std::span<const double> taper) {
  if (taper.size() != x.size())
    throw std::invalid_argument("direct_tapered_estimate: taper length mismatch");
  BivariateSignal tapered;
  tapered.samples.resize(x.size());
  for (std::size_t t = 0; t < x.size(); ++t)
    tapered.samples[t] = taper[t] * x.samples[t];
  const QuaternionSpectrum f = qft_forward(tapered);
  SpectralDensityEstimate est;
  est.method = EstimatorMethod::direct_tapered;
  est.taper_count = 1;
  est.bins.resize(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) est.bins[k] = density_bin(f.bins[k]);
  return est;
}

SpectralDensityEstimate multitaper_estimate(const BivariateSignal& x,
                                            const TaperSet& tapers) {
  if (tapers.length != x.size())
    throw std::invalid_argument("multitaper_estimate: taper length mismatch");
  if (tapers.count() == 0)
    throw std::invalid_argument("multitaper_estimate: empty taper set");
  SpectralDensityEstimate est;
  est.method = EstimatorMethod::multitaper;
  est.taper_count = tapers.count();
  est.bins.assign(x.size(), Quaternion{});
  for (const auto& taper : tapers.tapers) {
    const SpectralDensityEstimate single = direct_tapered_estimate(x, taper);
    for (std::size_t k = 0; k < est.bins.size(); ++k) est.bins[k] += single.bins[k];
  }
  const double inv_k = 1.0 / static_cast<double>(tapers.count());
  for (auto& bin : est.bins) bin *= inv_k;
  return est;
}

double fejer_kernel(double nu, std::size_t n) {
  const double nd = static_cast<double>(n);
  const double s = std::sin(std::numbers::pi * nu);
  if (s == 0.0) return nd;
  const double sn = std::sin(std::numbers::pi * nd * nu);
  return sn * sn / (nd * s * s);
}

TheoreticalSpectrum expected_periodogram(const TheoreticalSpectrum& density,
                                         std::size_t n) {
  if (!density.density.empty() && density.density.size() != n)
    throw std::invalid_argument("expected_periodogram: density grid size mismatch");
  TheoreticalSpectrum out;
  out.density.assign(n, Quaternion{});
  const double nd = static_cast<double>(n);
  for (std::size_t m = 0; m < n; ++m) {
    Quaternion acc{};
    if (!density.density.empty()) {
      for (std::size_t k = 0; k < n; ++k) {
        const double nu = (static_cast<double>(m) - static_cast<double>(k)) / nd;
        acc += density.density[k] * (fejer_kernel(nu, n) / nd);
      }
    }
    for (const auto& [k0, weight] : density.lines) {
      const double nu = (static_cast<double>(m) - static_cast<double>(k0)) / nd;
      acc += weight * fejer_kernel(nu, n);
    }
    out.density[m] = acc;
  }
  return out;
}

}  // namespace polarspec
