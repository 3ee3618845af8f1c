#pragma once

#include <cstdlib>
#include <vector>

#include "polarspec/quaternion.hpp"

namespace polarspec {

/// Real-valued lag sequence on tau = -max_lag .. +max_lag.
/// at() returns 0 beyond the stored range (|tau| >= N convention).
struct RealCovariance {
  std::vector<double> values;  // index = tau + max_lag
  int max_lag{0};

  double at(int tau) const {
    if (std::abs(tau) > max_lag) return 0.0;
    return values[static_cast<std::size_t>(tau + max_lag)];
  }
};

/// Quaternion-valued lag sequence on tau = -max_lag .. +max_lag.
struct QuaternionCovariance {
  std::vector<Quaternion> values;  // index = tau + max_lag
  int max_lag{0};

  Quaternion at(int tau) const {
    if (std::abs(tau) > max_lag) return Quaternion{};
    return values[static_cast<std::size_t>(tau + max_lag)];
  }
};

}  // namespace polarspec
