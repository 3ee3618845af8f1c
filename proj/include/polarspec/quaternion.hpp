#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace polarspec {

/// Absolute tolerance for algebraic round trips (polar form, inverses).
inline constexpr double kEqTol = 1e-10;

/// Quaternion q = a + b*i + c*j + d*k over doubles.
/// i^2 = j^2 = k^2 = ijk = -1; multiplication is non-commutative.
struct Quaternion {
  double a{0.0};  // scalar part
  double b{0.0};  // i component
  double c{0.0};  // j component
  double d{0.0};  // k component

  constexpr Quaternion() = default;
  constexpr Quaternion(double a_, double b_, double c_, double d_)
      : a(a_), b(b_), c(c_), d(d_) {}
  /// Real scalar embeds as a + 0i + 0j + 0k.
  constexpr explicit Quaternion(double a_) : a(a_) {}

  static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr double scalar_part() const { return a; }
  constexpr Quaternion vector_part() const { return {0.0, b, c, d}; }

  constexpr double norm_sq() const { return a * a + b * b + c * c + d * d; }
  double norm() const { return std::sqrt(norm_sq()); }
  double vector_norm() const { return std::sqrt(b * b + c * c + d * d); }

  constexpr Quaternion conj() const { return {a, -b, -c, -d}; }

  Quaternion inverse() const {
    const double n2 = norm_sq();
    if (n2 == 0.0) throw std::invalid_argument("Quaternion::inverse: zero quaternion");
    return {a / n2, -b / n2, -c / n2, -d / n2};
  }

  constexpr Quaternion operator-() const { return {-a, -b, -c, -d}; }

  constexpr Quaternion& operator+=(const Quaternion& q) {
    a += q.a; b += q.b; c += q.c; d += q.d;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& q) {
    a -= q.a; b -= q.b; c -= q.c; d -= q.d;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    a *= s; b *= s; c *= s; d *= s;
    return *this;
  }
  constexpr Quaternion& operator/=(double s) {
    a /= s; b /= s; c /= s; d /= s;
    return *this;
  }

  friend constexpr Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
  friend constexpr Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
  friend constexpr Quaternion operator*(Quaternion p, double s) { return p *= s; }
  friend constexpr Quaternion operator*(double s, Quaternion p) { return p *= s; }
  friend constexpr Quaternion operator/(Quaternion p, double s) { return p /= s; }

  // Hamilton product.
  friend constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
            p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
            p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
            p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

inline Quaternion multiply(const Quaternion& p, const Quaternion& q) { return p * q; }
inline Quaternion conj(const Quaternion& q) { return q.conj(); }

enum class Axis { I, J, K };

/// Involution with respect to an axis: -mu*q*mu. Fixes the scalar part and the
/// axis component, negates the other two vector components.
constexpr Quaternion involution(const Quaternion& q, Axis axis) {
  switch (axis) {
    case Axis::I: return {q.a, q.b, -q.c, -q.d};
    case Axis::J: return {q.a, -q.b, q.c, -q.d};
    case Axis::K: return {q.a, -q.b, -q.c, q.d};
  }
  return q;  // unreachable
}

/// Conjugation composed with the axis involution (an anti-automorphism).
/// Negates exactly the axis component: conj_involution(a+bi+cj+dk, J) = a+bi-cj+dk.
constexpr Quaternion conj_involution(const Quaternion& q, Axis axis) {
  switch (axis) {
    case Axis::I: return {q.a, -q.b, q.c, q.d};
    case Axis::J: return {q.a, q.b, -q.c, q.d};
    case Axis::K: return {q.a, q.b, q.c, -q.d};
  }
  return q;  // unreachable
}

/// q * conj_involution(q, J). For q in span{1, j} this is |q|^2; in general it
/// lands in span{1, i, k} and carries the polarization information of q.
/// Expanded through the symplectic split so the j component is exactly zero.
constexpr Quaternion polarmod_j(const Quaternion& q) {
  return {q.a * q.a + q.c * q.c - q.b * q.b - q.d * q.d,
          2.0 * (q.a * q.b + q.c * q.d), 0.0, 2.0 * (q.a * q.d - q.c * q.b)};
}

/// exp(mu*theta) = cos(theta) + mu*sin(theta) for a unit pure quaternion mu.
inline Quaternion exp_pure(const Quaternion& mu, double theta) {
  constexpr double tol = 1e-9;
  if (std::abs(mu.a) > tol)
    throw std::invalid_argument("exp_pure: mu must be a pure quaternion");
  if (std::abs(mu.norm() - 1.0) > tol)
    throw std::invalid_argument("exp_pure: mu must have unit modulus");
  const double s = std::sin(theta);
  return {std::cos(theta), mu.b * s, mu.c * s, mu.d * s};
}

/// Euler polar form q = modulus * exp(i*theta) * exp(-k*chi) * exp(j*phi),
/// theta in [-pi/2, pi/2], chi in [-pi/4, pi/4], phi in [-pi, pi].
struct EulerPolarForm {
  double modulus{0.0};
  double theta{0.0};
  double chi{0.0};
  double phi{0.0};
};

Quaternion from_polar(const EulerPolarForm& f);

/// Extracts the Euler polar form. chi comes first from the k-related invariant
/// sin(2chi) = 2(bc - ad)/|q|^2, then theta from atan2 on invariants scaled by
/// cos(2chi), then phi from the residual exp(j*phi).
/// Branch cuts: theta = +pi/2 is preferred over -pi/2, phi = +pi over -pi.
/// At chi = +-pi/4 only theta +- phi is determined; the convention there is
/// phi in {0, pi}, with pi absorbing a sign when theta leaves [-pi/2, pi/2].
/// Throws std::invalid_argument for a zero quaternion (angles undefined).
EulerPolarForm to_polar(const Quaternion& q);

/// Symplectic decomposition q = simplex + i * perplex with both parts in the
/// complex subfield spanned by {1, j}; complex re/im hold the 1/j components.
struct SymplecticSplit {
  std::complex<double> simplex;  // a + c j
  std::complex<double> perplex;  // b + d j
};

constexpr SymplecticSplit symplectic_split(const Quaternion& q) {
  return {{q.a, q.c}, {q.b, q.d}};
}

constexpr Quaternion symplectic_join(const SymplecticSplit& s) {
  return {s.simplex.real(), s.perplex.real(), s.simplex.imag(), s.perplex.imag()};
}

}  // namespace polarspec
