#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "polarspec/quaternion.hpp"

namespace polarspec::testing {

/// Independent multiplication oracle: expands p*q over the canonical basis
/// with an explicit product table for 1, i, j, k (the Eq.-2 relations),
/// structurally unrelated to the production 16-term formula.
inline Quaternion table_multiply(const Quaternion& p, const Quaternion& q) {
  // basis_product[x][y] = (sign, basis index) of e_x * e_y with 0:1 1:i 2:j 3:k
  struct Entry {
    int sign;
    int index;
  };
  static constexpr Entry table[4][4] = {
      {{1, 0}, {1, 1}, {1, 2}, {1, 3}},
      {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
      {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
      {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}},
  };
  const std::array<double, 4> pc{p.a, p.b, p.c, p.d};
  const std::array<double, 4> qc{q.a, q.b, q.c, q.d};
  std::array<double, 4> out{0.0, 0.0, 0.0, 0.0};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      const Entry e = table[x][y];
      out[static_cast<std::size_t>(e.index)] +=
          e.sign * pc[static_cast<std::size_t>(x)] * qc[static_cast<std::size_t>(y)];
    }
  return {out[0], out[1], out[2], out[3]};
}

inline Quaternion random_quaternion(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  return {dist(rng), dist(rng), dist(rng), dist(rng)};
}

inline double max_abs_diff(const Quaternion& p, const Quaternion& q) {
  return (p - q).norm();
}

}  // namespace polarspec::testing
