#include "polarspec/dpss.hpp"

#include <lapacke.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "polarspec/errors.hpp"

namespace polarspec {

namespace {

// In-band energy fraction lambda = h^T B h with B[t,t'] = sin(2 pi W (t-t')) /
// (pi (t-t')), diagonal 2W. The DPSS are eigenvectors of B as well, so this
// doubles as an independent concentration measure.
double concentration(const std::vector<double>& h, double w) {
  const auto n = static_cast<std::ptrdiff_t>(h.size());
  double acc = 0.0;
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    acc += h[t] * h[t] * 2.0 * w;
    for (std::ptrdiff_t s = t + 1; s < n; ++s) {
      const double dt = static_cast<double>(t - s);
      const double b = std::sin(2.0 * std::numbers::pi * w * dt) /
                       (std::numbers::pi * dt);
      acc += 2.0 * h[t] * h[s] * b;
    }
  }
  return acc;
}

void fix_sign(std::vector<double>& h, std::size_t order) {
  bool flip;
  if (order % 2 == 0) {
    flip = std::accumulate(h.begin(), h.end(), 0.0) < 0.0;
  } else {
    flip = h.size() > 1 && h[1] - h[0] < 0.0;
  }
  if (flip)
    for (double& v : h) v = -v;
}

}  // namespace

TaperSet slepian_tapers(std::size_t n, double nw, std::size_t k) {
  if (k < 1) throw std::invalid_argument("slepian_tapers: need at least one taper");
  if (k > n) throw std::invalid_argument("slepian_tapers: taper count exceeds length");
  if (!(nw > 0.0) || nw >= static_cast<double>(n) / 2.0)
    throw std::invalid_argument("slepian_tapers: nw must lie in (0, n/2)");

  const auto ni = static_cast<lapack_int>(n);
  const double w = nw / static_cast<double>(n);
  const double cw = std::cos(2.0 * std::numbers::pi * w);
  std::vector<double> diag(n), off(n > 1 ? n - 1 : 0);
  for (std::size_t t = 0; t < n; ++t) {
    const double half = (static_cast<double>(n) - 1.0 - 2.0 * static_cast<double>(t)) / 2.0;
    diag[t] = half * half * cw;
  }
  for (std::size_t t = 1; t < n; ++t)
    off[t - 1] = static_cast<double>(t) * static_cast<double>(n - t) / 2.0;

  // Top k eigenvalues by index (ascending), then their eigenvectors.
  lapack_int found = 0, nsplit = 0;
  std::vector<double> eigenvalues(n);
  std::vector<lapack_int> iblock(n), isplit(n);
  const lapack_int il = ni - static_cast<lapack_int>(k) + 1;
  lapack_int info = LAPACKE_dstebz('I', 'E', ni, 0.0, 0.0, il, ni, 0.0,
                                   diag.data(), off.data(), &found, &nsplit,
                                   eigenvalues.data(), iblock.data(), isplit.data());
  if (info != 0 || found != static_cast<lapack_int>(k))
    throw numerical_error("slepian_tapers: eigenvalue bisection failed (info=" +
                          std::to_string(info) + ")");

  std::vector<double> vectors(n * k);
  std::vector<lapack_int> ifail(k);
  info = LAPACKE_dstein(LAPACK_COL_MAJOR, ni, diag.data(), off.data(), found,
                        eigenvalues.data(), iblock.data(), isplit.data(),
                        vectors.data(), ni, ifail.data());
  if (info != 0)
    throw numerical_error("slepian_tapers: inverse iteration failed (info=" +
                          std::to_string(info) + ")");

  TaperSet set;
  set.length = n;
  set.nw = nw;
  set.tapers.resize(k);
  set.concentrations.resize(k);
  // dstein returns ascending eigenvalue order; most concentrated taper last.
  for (std::size_t order = 0; order < k; ++order) {
    const std::size_t column = k - 1 - order;
    auto& h = set.tapers[order];
    h.assign(vectors.begin() + static_cast<std::ptrdiff_t>(column * n),
             vectors.begin() + static_cast<std::ptrdiff_t>((column + 1) * n));
    const double norm = std::sqrt(std::inner_product(h.begin(), h.end(), h.begin(), 0.0));
    for (double& v : h) v /= norm;
    fix_sign(h, order);
    set.concentrations[order] = concentration(h, w);
  }
  return set;
}

TaperSet rectangular_taper(std::size_t n) {
  if (n == 0) throw std::invalid_argument("rectangular_taper: n must be >= 1");
  TaperSet set;
  set.length = n;
  set.tapers.assign(1, std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))));
  return set;
}

}  // namespace polarspec
