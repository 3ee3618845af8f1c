#include "polarspec/qft.hpp"

#include <algorithm>
#include <stdexcept>

#include "polarspec/dft.hpp"

namespace polarspec {

double bin_frequency(std::size_t k, std::size_t n) {
  return static_cast<double>(k) / static_cast<double>(n);
}

double signed_bin_frequency(std::size_t k, std::size_t n) {
  const double nu = bin_frequency(k, n);
  return nu < 0.5 ? nu : nu - 1.0;
}

namespace {

QuaternionSpectrum transform(std::vector<std::complex<double>> simplex,
                             std::vector<std::complex<double>> perplex,
                             bool inverse) {
  if (inverse) {
    dft_inverse(simplex);
    dft_inverse(perplex);
  } else {
    dft_forward(simplex);
    dft_forward(perplex);
  }
  QuaternionSpectrum out;
  out.bins.resize(simplex.size());
  for (std::size_t k = 0; k < simplex.size(); ++k)
    out.bins[k] = symplectic_join({simplex[k], perplex[k]});
  return out;
}

}  // namespace

QuaternionSpectrum qft_forward(const std::vector<Quaternion>& x) {
  if (x.empty()) throw std::invalid_argument("qft_forward: empty signal");
  // x[t] = x1[t] + i x2[t] with x1, x2 in C_j; the right-multiplied exp(-j...)
  // kernel acts inside C_j, so each half is a plain complex DFT.
  std::vector<std::complex<double>> simplex(x.size()), perplex(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    const SymplecticSplit s = symplectic_split(x[t]);
    simplex[t] = s.simplex;
    perplex[t] = s.perplex;
  }
  return transform(std::move(simplex), std::move(perplex), false);
}

QuaternionSpectrum qft_forward(const BivariateSignal& x) {
  if (x.size() == 0) throw std::invalid_argument("qft_forward: empty signal");
  std::vector<std::complex<double>> simplex(x.size()), perplex(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    simplex[t] = {x.u(t), 0.0};
    perplex[t] = {x.v(t), 0.0};
  }
  return transform(std::move(simplex), std::move(perplex), false);
}

std::vector<Quaternion> qft_inverse(const QuaternionSpectrum& X) {
  if (X.size() == 0) throw std::invalid_argument("qft_inverse: empty spectrum");
  std::vector<std::complex<double>> simplex(X.size()), perplex(X.size());
  for (std::size_t k = 0; k < X.size(); ++k) {
    const SymplecticSplit s = symplectic_split(X.bins[k]);
    simplex[k] = s.simplex;
    perplex[k] = s.perplex;
  }
  return transform(std::move(simplex), std::move(perplex), true).bins;
}

double check_i_hermitian(const QuaternionSpectrum& X) {
  const std::size_t n = X.size();
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t mirror = (n - k) % n;
    const Quaternion diff = X.bins[mirror] - involution(X.bins[k], Axis::I);
    worst = std::max(worst, diff.norm());
  }
  return worst;
}

}  // namespace polarspec
