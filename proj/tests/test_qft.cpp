#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "polarspec/dft.hpp"
#include "polarspec/qft.hpp"
#include "polarspec/rng.hpp"
#include "polarspec/sigmodel.hpp"
#include "test_helpers.hpp"

using namespace polarspec;
using testing::max_abs_diff;
using testing::random_quaternion;
using testing::table_multiply;

namespace {

// Brute-force axis-j quaternion DFT with the kernel multiplied on the right,
// using the table-expansion product. O(N^2) oracle for qft_forward.
std::vector<Quaternion> brute_force_qft(const std::vector<Quaternion>& x) {
  const std::size_t n = x.size();
  std::vector<Quaternion> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    Quaternion acc{};
    for (std::size_t t = 0; t < n; ++t) {
      const double w = -2.0 * std::numbers::pi * static_cast<double>(k) *
                       static_cast<double>(t) / static_cast<double>(n);
      const Quaternion kernel{std::cos(w), 0.0, std::sin(w), 0.0};
      acc += table_multiply(x[t], kernel);
    }
    out[k] = acc;
  }
  return out;
}

std::vector<Quaternion> random_signal(std::mt19937_64& rng, std::size_t n) {
  std::vector<Quaternion> x(n);
  for (auto& q : x) q = random_quaternion(rng, 1.0);
  return x;
}

BivariateSignal random_bivariate(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  BivariateSignal x;
  x.samples.resize(n);
  for (auto& s : x.samples) s = {dist(rng), dist(rng)};
  return x;
}

}  // namespace

TEST_CASE("frequency helpers") {
  CHECK(bin_frequency(3, 8) == doctest::Approx(0.375));
  CHECK(signed_bin_frequency(3, 8) == doctest::Approx(0.375));
  CHECK(signed_bin_frequency(4, 8) == doctest::Approx(-0.5));
  CHECK(signed_bin_frequency(7, 8) == doctest::Approx(-0.125));
}

TEST_CASE("constant signal concentrates at DC") {
  BivariateSignal x;
  x.samples.assign(8, {1.0, 0.0});
  const QuaternionSpectrum X = qft_forward(x);
  CHECK(max_abs_diff(X.bins[0], Quaternion{8.0, 0.0, 0.0, 0.0}) < 1e-12);
  for (std::size_t k = 1; k < 8; ++k) CHECK(X.bins[k].norm() < 1e-12);
}

TEST_CASE("kernel eigenfunction gives a single line") {
  // x[t] = exp(j 2 pi t 3/8), N = 8: line of magnitude 8 at k = 3
  std::vector<Quaternion> x(8);
  for (std::size_t t = 0; t < 8; ++t)
    x[t] = exp_pure(Quaternion::unit_j(),
                    2.0 * std::numbers::pi * static_cast<double>(t) * 3.0 / 8.0);
  const QuaternionSpectrum X = qft_forward(x);
  for (std::size_t k = 0; k < 8; ++k) {
    if (k == 3)
      CHECK(max_abs_diff(X.bins[k], Quaternion{8.0, 0.0, 0.0, 0.0}) < 1e-12);
    else
      CHECK(X.bins[k].norm() < 1e-12);
  }
}

TEST_CASE("qft_forward matches the brute-force oracle") {
  std::mt19937_64 rng(101);
  for (std::size_t n : {1, 2, 5, 12, 64}) {
    const std::vector<Quaternion> x = random_signal(rng, n);
    const QuaternionSpectrum X = qft_forward(x);
    const std::vector<Quaternion> oracle = brute_force_qft(x);
    for (std::size_t k = 0; k < n; ++k)
      CHECK(max_abs_diff(X.bins[k], oracle[k]) < 1e-9);
  }
}

TEST_CASE("qft errors on empty input") {
  CHECK_THROWS_AS(qft_forward(std::vector<Quaternion>{}), std::invalid_argument);
  CHECK_THROWS_AS(qft_forward(BivariateSignal{}), std::invalid_argument);
  CHECK_THROWS_AS(qft_inverse(QuaternionSpectrum{}), std::invalid_argument);
}

TEST_CASE("inverse of a DC delta is the constant signal") {
  QuaternionSpectrum X;
  X.bins.assign(16, Quaternion{});
  X.bins[0] = Quaternion{16.0, 0.0, 0.0, 0.0};
  const std::vector<Quaternion> x = qft_inverse(X);
  for (const auto& q : x)
    CHECK(max_abs_diff(q, Quaternion{1.0, 0.0, 0.0, 0.0}) < 1e-12);
}

TEST_CASE("inverse of the zero spectrum is the zero signal") {
  QuaternionSpectrum zero;
  zero.bins.assign(9, Quaternion{});
  for (const auto& q : qft_inverse(zero)) CHECK(q.norm() == 0.0);
}

TEST_CASE("round trips") {
  std::mt19937_64 rng(102);
  for (std::size_t n : {3, 17, 64, 129}) {
    const std::vector<Quaternion> x = random_signal(rng, n);
    const std::vector<Quaternion> back = qft_inverse(qft_forward(x));
    for (std::size_t t = 0; t < n; ++t) CHECK(max_abs_diff(back[t], x[t]) < 1e-10);
  }
}

TEST_CASE("round trip on the tone-plus-noise validation signal") {
  const MonochromaticSpec tone{1.0, -std::numbers::pi / 3.0, std::numbers::pi / 8.0, 0.125};
  WhiteNoiseSpec noise{10.0, 0.2, std::numbers::pi / 8.0, 99};
  const std::size_t n = 1024;
  BivariateSignal y = gen_monochromatic(tone, n);
  const BivariateSignal w = gen_white_noise(noise, n);
  for (std::size_t t = 0; t < n; ++t) y.samples[t] += w.samples[t];
  const std::vector<Quaternion> x = to_quaternion_sequence(y);
  const std::vector<Quaternion> back = qft_inverse(qft_forward(x));
  double worst = 0.0;
  for (std::size_t t = 0; t < n; ++t)
    worst = std::max(worst, max_abs_diff(back[t], x[t]));
  CHECK(worst < 1e-9);
}

TEST_CASE("left quaternion linearity") {
  std::mt19937_64 rng(103);
  const std::vector<Quaternion> x = random_signal(rng, 32);
  const Quaternion lambda = random_quaternion(rng, 2.0);
  std::vector<Quaternion> scaled(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) scaled[t] = lambda * x[t];
  const QuaternionSpectrum X = qft_forward(x);
  const QuaternionSpectrum Y = qft_forward(scaled);
  for (std::size_t k = 0; k < x.size(); ++k)
    CHECK(max_abs_diff(Y.bins[k], lambda * X.bins[k]) < 1e-10 * (1.0 + X.bins[k].norm()));
}

TEST_CASE("Parseval identity") {
  std::mt19937_64 rng(104);
  for (std::size_t n : {16, 100}) {
    const std::vector<Quaternion> x = random_signal(rng, n);
    double time_power = 0.0, freq_power = 0.0;
    for (const auto& q : x) time_power += q.norm_sq();
    const QuaternionSpectrum X = qft_forward(x);
    for (const auto& q : X.bins) freq_power += q.norm_sq();
    CHECK(freq_power / static_cast<double>(n) ==
          doctest::Approx(time_power).epsilon(1e-9));
  }
}

TEST_CASE("restriction to C_j reproduces the complex DFT bit for bit") {
  std::mt19937_64 rng(105);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const std::size_t n = 48;
  std::vector<Quaternion> x(n);
  std::vector<std::complex<double>> z(n);
  for (std::size_t t = 0; t < n; ++t) {
    const double re = dist(rng), im = dist(rng);
    x[t] = Quaternion{re, 0.0, im, 0.0};
    z[t] = {re, im};
  }
  const QuaternionSpectrum X = qft_forward(x);
  dft_forward(z);
  for (std::size_t k = 0; k < n; ++k) {
    CHECK(X.bins[k].a == z[k].real());
    CHECK(X.bins[k].c == z[k].imag());
    CHECK(X.bins[k].b == 0.0);
    CHECK(X.bins[k].d == 0.0);
  }
}

TEST_CASE("i-hermitian symmetry") {
  std::mt19937_64 rng(106);

  SUBCASE("bivariate signals satisfy it") {
    for (std::size_t n : {8, 31, 64}) {
      const BivariateSignal x = random_bivariate(rng, n);
      CHECK(check_i_hermitian(qft_forward(x)) < 1e-10);
    }
  }

  SUBCASE("zero spectrum trivially satisfies it") {
    QuaternionSpectrum zero;
    zero.bins.assign(8, Quaternion{});
    CHECK(check_i_hermitian(zero) == 0.0);
  }

  SUBCASE("a j-contaminated signal violates it") {
    std::vector<Quaternion> x(16);
    for (auto& q : x) q = random_quaternion(rng, 1.0);
    x[3].c += 2.0;  // any component outside C_i breaks the symmetry
    CHECK(check_i_hermitian(qft_forward(x)) > 0.1);
  }

  SUBCASE("hand-checked N=4 case") {
    // x = [1, i, 0, 0]: X_1 = 1 - k and X_3 = 1 + k
    std::vector<Quaternion> x(4);
    x[0] = Quaternion{1.0, 0.0, 0.0, 0.0};
    x[1] = Quaternion{0.0, 1.0, 0.0, 0.0};
    const QuaternionSpectrum X = qft_forward(x);
    CHECK(max_abs_diff(X.bins[1], Quaternion{1.0, 0.0, 0.0, -1.0}) < 1e-12);
    CHECK(max_abs_diff(X.bins[3], Quaternion{1.0, 0.0, 0.0, 1.0}) < 1e-12);
    CHECK(check_i_hermitian(X) < 1e-12);
  }
}
