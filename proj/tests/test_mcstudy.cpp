#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polarspec/mcstudy.hpp"
#include "polarspec/polar.hpp"
#include "polarspec/qft.hpp"
#include "polarspec/rng.hpp"
#include "test_helpers.hpp"

using namespace polarspec;
using testing::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

SignalFactory noise_factory(WhiteNoiseSpec base, std::size_t n, std::uint64_t master) {
  return [base, n, master](std::size_t m) {
    WhiteNoiseSpec spec = base;
    spec.seed = derive_seed(master, m);
    return gen_white_noise(spec, n);
  };
}

const EstimatorFn kPeriodogram = [](const BivariateSignal& x) {
  return polarization_periodogram(x);
};

}  // namespace

TEST_CASE("averaged_dop_estimate") {
  SUBCASE("single periodogram gives 1 wherever nonzero") {
    WhiteNoiseSpec spec{1.0, 0.3, 0.1, 5};
    std::vector<SpectralDensityEstimate> one{
        polarization_periodogram(gen_white_noise(spec, 64))};
    for (std::size_t k = 0; k < 64; ++k) {
      const auto phi = averaged_dop_estimate(one, k);
      REQUIRE(phi.has_value());
      CHECK(*phi == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("identical fully polarized estimates stay at 1 for any M") {
    const MonochromaticSpec tone{1.0, 0.4, 0.2, 0.125};
    const SpectralDensityEstimate est =
        polarization_periodogram(gen_monochromatic(tone, 64));
    std::vector<SpectralDensityEstimate> many(7, est);
    CHECK(*averaged_dop_estimate(many, 8) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("zero total power is undefined") {
    SpectralDensityEstimate zero;
    zero.bins.assign(8, Quaternion{});
    std::vector<SpectralDensityEstimate> estimates{zero, zero};
    CHECK(!averaged_dop_estimate(estimates, 3).has_value());
  }
  SUBCASE("M = 500 on unpolarized noise estimates near zero") {
    const std::size_t n = 64;
    std::vector<SpectralDensityEstimate> estimates;
    estimates.reserve(500);
    for (std::size_t m = 0; m < 500; ++m) {
      WhiteNoiseSpec spec{1.0, 0.0, 0.0, derive_seed(997, m)};
      estimates.push_back(polarization_periodogram(gen_white_noise(spec, n)));
    }
    double mean = 0.0;
    for (std::size_t k = 1; k < n / 2; ++k)
      mean += *averaged_dop_estimate(estimates, k);
    mean /= static_cast<double>(n / 2 - 1);
    CHECK(mean < 0.1);
  }
}

TEST_CASE("average_estimates matches the Eq.-74 sums") {
  std::vector<SpectralDensityEstimate> estimates;
  for (std::size_t m = 0; m < 4; ++m) {
    WhiteNoiseSpec spec{2.0, 0.5, 0.4, derive_seed(31, m)};
    estimates.push_back(polarization_periodogram(gen_white_noise(spec, 32)));
  }
  const SpectralDensityEstimate avg = average_estimates(estimates);
  for (std::size_t k = 0; k < 32; ++k) {
    const auto via_avg = degree_of_polarization(avg.bins[k]);
    const auto via_sums = averaged_dop_estimate(estimates, k);
    CHECK(*via_avg == doctest::Approx(*via_sums).epsilon(1e-12));
  }
}

TEST_CASE("ensemble kernel: parallel, reference and thread counts agree bitwise") {
  const std::size_t n = 96, runs = 70;  // deliberately not a chunk multiple
  const SignalFactory factory = noise_factory({1.0, 0.4, 0.7, 0}, n, 11);
  const EnsembleMoments a = ensemble_moments(factory, kPeriodogram, runs, 0);
  const EnsembleMoments b = ensemble_moments_reference(factory, kPeriodogram, runs);
  const EnsembleMoments c = ensemble_moments(factory, kPeriodogram, runs, 1);
  const EnsembleMoments d = ensemble_moments(factory, kPeriodogram, runs, 2);
  CHECK(a.sum == b.sum);
  CHECK(a.sum_sq == b.sum_sq);
  CHECK(a.sum == c.sum);
  CHECK(a.sum == d.sum);
  CHECK(a.count == runs);
}

TEST_CASE("ensemble kernel propagates worker exceptions") {
  SignalFactory bad = [](std::size_t m) -> BivariateSignal {
    if (m == 17) throw std::invalid_argument("boom");
    BivariateSignal x;
    x.samples.assign(8, {1.0, 0.0});
    return x;
  };
  CHECK_THROWS_AS(ensemble_moments(bad, kPeriodogram, 32), std::invalid_argument);
}

TEST_CASE("bias study") {
  BiasStudyConfig cfg;
  cfg.phi_grid = {0.0, 0.4, 0.8, 1.0};
  cfg.m_values = {1, 2, 5};
  cfg.n = 64;
  cfg.replicates = 30;
  cfg.seed = 90;

  const BiasTable table = run_bias_study(cfg);
  REQUIRE(table.cells.size() == 12);

  SUBCASE("M = 1 bias is exactly 1 - Phi") {
    for (const auto& cell : table.cells)
      if (cell.m == 1) CHECK(std::abs(cell.bias - (1.0 - cell.phi_true)) < 1e-12);
  }
  SUBCASE("fully polarized noise has zero bias for every M") {
    for (const auto& cell : table.cells)
      if (cell.phi_true == 1.0) CHECK(std::abs(cell.bias) < 1e-9);
  }
  SUBCASE("bias decreases with M within paired standard errors") {
    for (const auto& diff : table.adjacent_diffs)
      CHECK(diff.mean_diff >= -3.0 * diff.std_error);
  }
  SUBCASE("bias is positive at partial polarization") {
    for (const auto& cell : table.cells)
      if (cell.phi_true == 0.4 && cell.m == 5) CHECK(cell.bias > 0.0);
  }
  SUBCASE("reference and thread counts reproduce the table bitwise") {
    const BiasTable ref = run_bias_study_reference(cfg);
    const BiasTable two = run_bias_study(cfg, 2);
    REQUIRE(ref.cells.size() == table.cells.size());
    for (std::size_t i = 0; i < table.cells.size(); ++i) {
      CHECK(table.cells[i].bias == ref.cells[i].bias);
      CHECK(table.cells[i].std_error == ref.cells[i].std_error);
      CHECK(table.cells[i].bias == two.cells[i].bias);
    }
    REQUIRE(ref.adjacent_diffs.size() == table.adjacent_diffs.size());
    for (std::size_t i = 0; i < table.adjacent_diffs.size(); ++i)
      CHECK(table.adjacent_diffs[i].mean_diff == ref.adjacent_diffs[i].mean_diff);
  }
  SUBCASE("identical seeds give identical tables") {
    const BiasTable again = run_bias_study(cfg);
    for (std::size_t i = 0; i < table.cells.size(); ++i)
      CHECK(table.cells[i].bias == again.cells[i].bias);
  }
  SUBCASE("config validation") {
    BiasStudyConfig bad = cfg;
    bad.phi_grid = {1.5};
    CHECK_THROWS_AS(run_bias_study(bad), std::invalid_argument);
    bad = cfg;
    bad.m_values = {0};
    CHECK_THROWS_AS(run_bias_study(bad), std::invalid_argument);
    bad = cfg;
    bad.n = 63;
    CHECK_THROWS_AS(run_bias_study(bad), std::invalid_argument);
  }
}

TEST_CASE("section 5 experiment") {
  Section5Config cfg;
  cfg.seed = 2024;
  const Section5Report report = run_section5_experiment(cfg);
  REQUIRE(report.tone_bin == 128);
  REQUIRE(report.periodogram_avg.size() == 1024);

  SUBCASE("averaged periodogram hits the theoretical attributes at the tone bin") {
    const PolarizationAttributes attr =
        analyze_bin(report.periodogram_avg.bins[report.tone_bin]);
    CHECK(*attr.s1 == doctest::Approx(-0.349).epsilon(0.05));
    CHECK(*attr.s2 == doctest::Approx(-0.605).epsilon(0.05));
    CHECK(*attr.s3 == doctest::Approx(0.700).epsilon(0.05));
    CHECK(*attr.phi == doctest::Approx(0.989).epsilon(0.02));
  }

  SUBCASE("noise bins of the multitaper estimate have s3 within 3 sigma of 0") {
    // stay clear of the tone's 2NW-bin leakage band
    std::vector<double> s3;
    for (std::size_t k = 200; k <= 480; k += 28)
      s3.push_back(*analyze_bin(report.multitaper_avg.bins[k]).s3);
    double mean = 0.0, var = 0.0;
    for (double v : s3) mean += v;
    mean /= static_cast<double>(s3.size());
    for (double v : s3) var += (v - mean) * (v - mean);
    var /= static_cast<double>(s3.size() - 1);
    const double sd = std::sqrt(var);
    for (double v : s3) CHECK(std::abs(v) < 3.0 * sd + 1e-12);
  }

  SUBCASE("multitaper variance is below the periodogram variance at noise bins") {
    double pg = 0.0, mt = 0.0;
    for (std::size_t k = 200; k <= 480; ++k) {
      pg += report.periodogram_var[k].a;
      mt += report.multitaper_var[k].a;
    }
    CHECK(mt < pg);
  }

  SUBCASE("noise bins carry the noise polarization attributes") {
    double s1 = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 200; k <= 480; ++k, ++count)
      s1 += *analyze_bin(report.periodogram_avg.bins[k]).s1;
    CHECK(s1 / static_cast<double>(count) == doctest::Approx(0.141).epsilon(0.15));
  }

  SUBCASE("expected-periodogram theory columns agree with the closed form") {
    const PolarizationAttributes attr = analyze_bin(report.expected.density[128]);
    CHECK(*attr.phi == doctest::Approx(0.989).epsilon(1e-3));
  }
}

TEST_CASE("spectral increments are (1,j)-proper: conj-involution moments vanish") {
  const std::size_t n = 128, runs = 500;
  std::vector<std::size_t> bins{7, 33, 61};
  std::vector<Quaternion> moment_i(bins.size(), Quaternion{});
  std::vector<Quaternion> moment_k(bins.size(), Quaternion{});
  for (std::size_t m = 0; m < runs; ++m) {
    WhiteNoiseSpec spec{1.0, 0.3, 0.5, derive_seed(60601, m)};
    const QuaternionSpectrum X = qft_forward(gen_white_noise(spec, n));
    for (std::size_t b = 0; b < bins.size(); ++b) {
      const Quaternion x = X.bins[bins[b]];
      moment_i[b] += x * conj_involution(x, Axis::I);
      moment_k[b] += x * conj_involution(x, Axis::K);
    }
  }
  // each component fluctuates at about n/sqrt(runs)
  const double band = 3.0 * static_cast<double>(n) / std::sqrt(static_cast<double>(runs));
  for (std::size_t b = 0; b < bins.size(); ++b) {
    for (const Quaternion* m : {&moment_i[b], &moment_k[b]}) {
      const Quaternion mean = *m / static_cast<double>(runs);
      CHECK(std::abs(mean.a) < band);
      CHECK(std::abs(mean.b) < band);
      CHECK(std::abs(mean.c) < band);
      CHECK(std::abs(mean.d) < band);
    }
  }
}

TEST_CASE("properness flags on Monte-Carlo averaged estimates") {
  const std::size_t n = 64, m_avg = 50;

  SUBCASE("circular white noise with the 4/sqrt(M) heuristic flags under 5%") {
    const SignalFactory factory = noise_factory({1.0, 0.0, 0.0, 0}, n, 5150);
    const EnsembleMoments moments = ensemble_moments(factory, kPeriodogram, m_avg);
    std::vector<Quaternion> bins(n);
    for (std::size_t k = 0; k < n; ++k) bins[k] = moments.mean(k);
    const std::vector<bool> flags =
        properness_test(bins, 4.0 / std::sqrt(static_cast<double>(m_avg)));
    std::size_t flagged = 0;
    for (bool f : flags) flagged += f ? 1 : 0;
    CHECK(static_cast<double>(flagged) < 0.05 * static_cast<double>(n));
  }

  SUBCASE("improper noise (phi = 0.2, theta = pi/8) flags essentially all bins") {
    // |(s1, s2)| = 0.2 sits far above a 0.05 threshold at M = 50
    const SignalFactory factory = noise_factory({1.0, 0.2, kPi / 8.0, 0}, n, 5151);
    const EnsembleMoments moments = ensemble_moments(factory, kPeriodogram, m_avg);
    std::vector<Quaternion> bins(n);
    for (std::size_t k = 0; k < n; ++k) bins[k] = moments.mean(k);
    const std::vector<bool> flags = properness_test(bins, 0.05);
    std::size_t flagged = 0;
    for (bool f : flags) flagged += f ? 1 : 0;
    CHECK(static_cast<double>(flagged) >= 0.95 * static_cast<double>(n));
  }
}
