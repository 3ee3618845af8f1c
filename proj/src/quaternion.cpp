#include "polarspec/quaternion.hpp"

#include <algorithm>
#include <numbers>

namespace polarspec {

namespace {

// Below this, cos(2chi) is treated as zero and the (theta, phi) pair is
// degenerate (only theta +- phi enters the product).
constexpr double kDegenerate = 1e-12;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

Quaternion from_polar(const EulerPolarForm& f) {
  if (f.modulus < 0.0)
    throw std::invalid_argument("from_polar: modulus must be nonnegative");
  const Quaternion q = exp_pure(Quaternion::unit_i(), f.theta) *
                       exp_pure(Quaternion::unit_k(), -f.chi) *
                       exp_pure(Quaternion::unit_j(), f.phi);
  return q * f.modulus;
}

EulerPolarForm to_polar(const Quaternion& q) {
  const double m = q.norm();
  if (m == 0.0)
    throw std::invalid_argument("to_polar: zero quaternion has no polar form");
  const Quaternion u = q / m;

  EulerPolarForm f;
  f.modulus = m;
  const double sin2chi = clamp_unit(2.0 * (u.b * u.c - u.a * u.d));
  f.chi = 0.5 * std::asin(sin2chi);
  const double cos2chi = std::cos(2.0 * f.chi);

  if (cos2chi > kDegenerate) {
    // sin(2theta)cos(2chi) = 2(ab + cd), cos(2theta)cos(2chi) = a^2-b^2+c^2-d^2.
    f.theta = 0.5 * std::atan2(2.0 * (u.a * u.b + u.c * u.d),
                               u.a * u.a - u.b * u.b + u.c * u.c - u.d * u.d);
    // Residual exp(j*phi) = exp(k*chi) * exp(-i*theta) * u, read off in C_j.
    const Quaternion r = exp_pure(Quaternion::unit_k(), f.chi) *
                         (exp_pure(Quaternion::unit_i(), -f.theta) * u);
    f.phi = std::atan2(r.c, r.a);
  } else {
    // Gimbal-locked: u = exp(i*theta') * exp(-k*chi), phi folded to {0, pi}.
    const Quaternion r = u * exp_pure(Quaternion::unit_k(), f.chi);
    double tp = std::atan2(r.b, r.a);
    if (tp > std::numbers::pi / 2.0) {
      f.theta = tp - std::numbers::pi;
      f.phi = std::numbers::pi;
    } else if (tp < -std::numbers::pi / 2.0) {
      f.theta = tp + std::numbers::pi;
      f.phi = std::numbers::pi;
    } else {
      f.theta = tp;
      f.phi = 0.0;
    }
  }
  return f;
}

}  // namespace polarspec
