#pragma once

#include <complex>
#include <vector>

#include "polarspec/quaternion.hpp"

namespace polarspec {

/// Bivariate signal x[t] = u[t] + i v[t], stored as complex samples with
/// u = real part, v = imaginary part. Sampling step is fixed at 1.
struct BivariateSignal {
  std::vector<std::complex<double>> samples;

  std::size_t size() const { return samples.size(); }
  double u(std::size_t t) const { return samples[t].real(); }
  double v(std::size_t t) const { return samples[t].imag(); }
};

/// Embeds a bivariate signal as a quaternion sequence u + v*i (C_i-valued).
inline std::vector<Quaternion> to_quaternion_sequence(const BivariateSignal& x) {
  std::vector<Quaternion> q(x.size());
  for (std::size_t t = 0; t < x.size(); ++t)
    q[t] = Quaternion{x.u(t), x.v(t), 0.0, 0.0};
  return q;
}

}  // namespace polarspec
