#include "polarspec/polar.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polarspec {

namespace {

constexpr double kClampTol = 1e-9;
std::atomic<std::uint64_t> clamp_count{0};

}  // namespace

std::uint64_t dop_clamp_count() { return clamp_count.load(); }
void reset_dop_clamp_count() { clamp_count.store(0); }

std::optional<double> degree_of_polarization(const Quaternion& g) {
  if (!(g.a > 0.0)) return std::nullopt;
  const double phi = g.vector_norm() / g.a;
  if (phi > 1.0 && phi <= 1.0 + kClampTol) {
    ++clamp_count;
    return 1.0;
  }
  return phi;
}

std::optional<PoincareAngles> poincare_angles(const Quaternion& g) {
  const auto phi = degree_of_polarization(g);
  if (!phi || *phi == 0.0) return std::nullopt;
  const StokesParameters s = quaternion_to_stokes(g);
  double two_theta = std::atan2(s.s2, s.s1);
  if (two_theta == std::numbers::pi) two_theta = -std::numbers::pi;
  // 2 chi = asin(S3 / (Phi S0)), computed in atan2 form: well conditioned at
  // the circular pole S1 = S2 = 0 where asin'(1) diverges.
  const double two_chi = std::atan2(s.s3, std::hypot(s.s1, s.s2));
  return PoincareAngles{0.5 * two_theta, 0.5 * two_chi};
}

UPDecomposition up_decompose(const Quaternion& g) {
  if (g.a < 0.0)
    throw std::invalid_argument("up_decompose: negative total power");
  const double polarized_power = g.vector_norm();
  if (polarized_power > g.a * (1.0 + kClampTol))
    throw std::invalid_argument("up_decompose: degree of polarization exceeds 1");
  double unpolarized = g.a - polarized_power;
  if (unpolarized < 0.0) unpolarized = 0.0;
  // Polarized scalar is S0 - unpolarized so the sum reconstructs g exactly.
  return {unpolarized, Quaternion{g.a - unpolarized, g.b, g.c, g.d}};
}

std::vector<bool> properness_test(std::span<const Quaternion> bins, double threshold) {
  std::vector<bool> flags(bins.size(), false);
  for (std::size_t k = 0; k < bins.size(); ++k) {
    const Quaternion& g = bins[k];
    if (!(g.a > 0.0)) continue;
    const double linear = std::hypot(g.c, g.d) / g.a;  // sqrt(s1^2 + s2^2)
    flags[k] = linear > threshold;
  }
  return flags;
}

PolarizationAttributes analyze_bin(const Quaternion& g) {
  PolarizationAttributes out;
  out.stokes = quaternion_to_stokes(g);
  if (g.a != 0.0) {
    out.s1 = out.stokes.s1 / out.stokes.s0;
    out.s2 = out.stokes.s2 / out.stokes.s0;
    out.s3 = out.stokes.s3 / out.stokes.s0;
  }
  out.phi = degree_of_polarization(g);
  if (const auto angles = poincare_angles(g)) {
    out.theta = angles->theta;
    out.chi = angles->chi;
  }
  return out;
}

}  // namespace polarspec
