#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "polarspec/quaternion.hpp"

namespace polarspec {

/// Unnormalized Stokes parameters of one frequency bin.
struct StokesParameters {
  double s0{0.0};  // total power
  double s1{0.0};  // linear polarization, u/v power imbalance
  double s2{0.0};  // linear polarization, diagonal
  double s3{0.0};  // circular polarization
};

/// Axis mapping of the quaternion spectral density:
/// Gamma = S0 + i*S3 + j*S1 + k*S2 (note the permutation).
constexpr StokesParameters quaternion_to_stokes(const Quaternion& g) {
  return {g.a, g.c, g.d, g.b};
}

constexpr Quaternion stokes_to_quaternion(const StokesParameters& s) {
  return {s.s0, s.s3, s.s1, s.s2};
}

/// Phi = |vector part| / scalar part. Returns nullopt when the scalar part is
/// not positive (undefined). Values in (1, 1 + 1e-9], which can only arise
/// from averaging round-off, are clamped to 1 and counted.
std::optional<double> degree_of_polarization(const Quaternion& g);

/// Number of clamps applied by degree_of_polarization since process start
/// (or the last reset).
std::uint64_t dop_clamp_count();
void reset_dop_clamp_count();

/// Poincare sphere angles: orientation theta in [-pi/2, pi/2) and ellipticity
/// chi in [-pi/4, pi/4]; (2*theta, 2*chi) are the spherical coordinates of the
/// normalized vector part. theta and theta+pi describe the same ellipse; the
/// representative is fixed by halving atan2(S2, S1) and folding +pi/2 to
/// -pi/2. Returns nullopt when Phi is zero or undefined.
struct PoincareAngles {
  double theta{0.0};
  double chi{0.0};
};
std::optional<PoincareAngles> poincare_angles(const Quaternion& g);

/// Unique split Gamma = unpolarized + polarized with the unpolarized part a
/// pure scalar (1 - Phi)*S0 and the polarized part fully polarized (Phi = 1).
/// Reconstruction is exact by construction. Throws for an invalid density
/// (negative power or Phi > 1 + 1e-9).
struct UPDecomposition {
  double unpolarized{0.0};
  Quaternion polarized{};
};
UPDecomposition up_decompose(const Quaternion& g);

/// Rotary-spectrum view of one bin: P_xx(nu) = S0 + S3 (clockwise power at
/// nu > 0) and the complementary density P~_xx(nu) = S1 + i*S2.
struct RotaryBin {
  double p_xx{0.0};
  std::complex<double> p_tilde{0.0, 0.0};
};
constexpr RotaryBin to_rotary(const Quaternion& g) {
  return {g.a + g.b, {g.c, g.d}};
}

/// Flags bins whose normalized linear polarization sqrt(s1^2 + s2^2) exceeds
/// the threshold. A proper signal (S1 = S2 = 0) only flags through estimator
/// noise. Bins with nonpositive scalar part are never flagged.
std::vector<bool> properness_test(std::span<const Quaternion> bins, double threshold);

/// Everything the CSV serialization needs for one bin. Normalized entries are
/// nullopt where S0 is zero; angles additionally require Phi > 0.
struct PolarizationAttributes {
  StokesParameters stokes{};
  std::optional<double> s1, s2, s3;
  std::optional<double> phi;
  std::optional<double> theta, chi;
};
PolarizationAttributes analyze_bin(const Quaternion& g);

}  // namespace polarspec
