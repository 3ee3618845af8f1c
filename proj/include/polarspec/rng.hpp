#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace polarspec {

/// Stream derivation rule for parallel Monte-Carlo: independent substreams are
/// obtained as derive_seed(master, index) = mix(master ^ mix(index)), where
/// mix is the splitmix64 finalizer. Nested layers (cell, repetition,
/// realization) derive repeatedly. The rule is part of the reproducibility
/// contract: results must not depend on worker count.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Seeded Gaussian sampler: mt19937_64 bits + explicit Box-Muller, so the
/// exact output stream is identical across platforms and toolchains
/// (std::normal_distribution makes no such guarantee).
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  double standard_normal();

  /// Unpolarized complex sample: independent N(0, 1/2) real and imaginary
  /// parts, so E|z|^2 = 1. Consumes one Box-Muller pair.
  std::complex<double> unpolarized_complex();

 private:
  std::mt19937_64 engine_;
  double spare_{0.0};
  bool has_spare_{false};
};

}  // namespace polarspec
