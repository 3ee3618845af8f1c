#include "polarspec/mcstudy.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>

#include "polarspec/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polarspec {

namespace {

// Chunk width of the parallel reduction; fixed so results do not depend on
// the thread count.
constexpr std::size_t kChunk = 16;

int resolve_threads(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

Quaternion square_components(const Quaternion& q) {
  return {q.a * q.a, q.b * q.b, q.c * q.c, q.d * q.d};
}

}  // namespace

std::optional<double> averaged_dop_estimate(
    std::span<const SpectralDensityEstimate> estimates, std::size_t bin) {
  if (estimates.empty())
    throw std::invalid_argument("averaged_dop_estimate: no estimates");
  Quaternion total{};
  for (const auto& est : estimates) {
    if (bin >= est.size())
      throw std::invalid_argument("averaged_dop_estimate: bin out of range");
    total += est.bins[bin];
  }
  if (total.a == 0.0) return std::nullopt;
  return total.vector_norm() / total.a;
}

SpectralDensityEstimate average_estimates(
    std::span<const SpectralDensityEstimate> estimates) {
  if (estimates.empty())
    throw std::invalid_argument("average_estimates: no estimates");
  const std::size_t n = estimates.front().size();
  SpectralDensityEstimate avg;
  avg.method = estimates.front().method;
  avg.taper_count = estimates.front().taper_count;
  avg.bins.assign(n, Quaternion{});
  for (const auto& est : estimates) {
    if (est.size() != n)
      throw std::invalid_argument("average_estimates: mismatched bin counts");
    for (std::size_t k = 0; k < n; ++k) avg.bins[k] += est.bins[k];
  }
  const double inv = 1.0 / static_cast<double>(estimates.size());
  for (auto& bin : avg.bins) bin *= inv;
  return avg;
}

Quaternion EnsembleMoments::mean(std::size_t bin) const {
  return sum[bin] / static_cast<double>(count);
}

Quaternion EnsembleMoments::component_variance(std::size_t bin) const {
  if (count < 2) throw std::invalid_argument("component_variance: count < 2");
  const double nd = static_cast<double>(count);
  const Quaternion m = square_components(sum[bin]) / nd;
  return (sum_sq[bin] - m) / (nd - 1.0);
}

std::optional<double> EnsembleMoments::averaged_dop(std::size_t bin) const {
  if (sum[bin].a == 0.0) return std::nullopt;
  return sum[bin].vector_norm() / sum[bin].a;
}

namespace {

void accumulate_range(const SignalFactory& factory, const EstimatorFn& estimator,
                      std::size_t begin, std::size_t end,
                      std::vector<Quaternion>& sum, std::vector<Quaternion>& sum_sq) {
  for (std::size_t m = begin; m < end; ++m) {
    const SpectralDensityEstimate est = estimator(factory(m));
    if (sum.empty()) {
      sum.assign(est.size(), Quaternion{});
      sum_sq.assign(est.size(), Quaternion{});
    } else if (est.size() != sum.size()) {
      throw std::invalid_argument("ensemble_moments: estimate size changed");
    }
    for (std::size_t k = 0; k < est.size(); ++k) {
      sum[k] += est.bins[k];
      sum_sq[k] += square_components(est.bins[k]);
    }
  }
}

}  // namespace

EnsembleMoments ensemble_moments(const SignalFactory& factory,
                                 const EstimatorFn& estimator,
                                 std::size_t realizations, int threads) {
  if (realizations == 0)
    throw std::invalid_argument("ensemble_moments: need at least one realization");
  const std::size_t chunks = (realizations + kChunk - 1) / kChunk;
  std::vector<std::vector<Quaternion>> partial_sum(chunks), partial_sq(chunks);
  std::exception_ptr failure = nullptr;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
#endif
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    try {
      const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
      const std::size_t end = std::min(begin + kChunk, realizations);
      accumulate_range(factory, estimator, begin, end,
                       partial_sum[static_cast<std::size_t>(c)],
                       partial_sq[static_cast<std::size_t>(c)]);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  EnsembleMoments out;
  out.count = realizations;
  out.sum = std::move(partial_sum[0]);
  out.sum_sq = std::move(partial_sq[0]);
  for (std::size_t c = 1; c < chunks; ++c) {
    for (std::size_t k = 0; k < out.sum.size(); ++k) {
      out.sum[k] += partial_sum[c][k];
      out.sum_sq[k] += partial_sq[c][k];
    }
  }
  return out;
}

EnsembleMoments ensemble_moments_reference(const SignalFactory& factory,
                                           const EstimatorFn& estimator,
                                           std::size_t realizations) {
  if (realizations == 0)
    throw std::invalid_argument("ensemble_moments: need at least one realization");
  // Same chunked summation order as the parallel kernel, executed in-line.
  EnsembleMoments out;
  out.count = realizations;
  for (std::size_t begin = 0; begin < realizations; begin += kChunk) {
    std::vector<Quaternion> sum, sum_sq;
    accumulate_range(factory, estimator, begin,
                     std::min(begin + kChunk, realizations), sum, sum_sq);
    if (out.sum.empty()) {
      out.sum = std::move(sum);
      out.sum_sq = std::move(sum_sq);
    } else {
      for (std::size_t k = 0; k < out.sum.size(); ++k) {
        out.sum[k] += sum[k];
        out.sum_sq[k] += sum_sq[k];
      }
    }
  }
  return out;
}

namespace {

void validate(const BiasStudyConfig& cfg) {
  if (cfg.phi_grid.empty() || cfg.m_values.empty())
    throw std::invalid_argument("bias study: empty phi or M grid");
  for (double phi : cfg.phi_grid)
    if (!(phi >= 0.0 && phi <= 1.0))
      throw std::invalid_argument("bias study: phi must lie in [0, 1]");
  for (int m : cfg.m_values)
    if (m < 1) throw std::invalid_argument("bias study: M values must be >= 1");
  if (cfg.n < 4 || cfg.n % 2 != 0)
    throw std::invalid_argument("bias study: n must be even and >= 4");
  if (cfg.replicates < 2)
    throw std::invalid_argument("bias study: need at least 2 replicates");
}

// One repetition of one Phi cell: run max(M) realizations, keep running
// per-bin sums of the periodogram, and record the interior-bin average of
// Phi-hat at every snapshot M.
std::vector<double> bias_repetition(double phi_true, std::uint64_t rep_seed,
                                    std::size_t n, const std::vector<int>& snapshots) {
  std::vector<Quaternion> sums(n, Quaternion{});
  std::vector<double> out(snapshots.size(), 0.0);
  const int max_m = snapshots.back();
  std::size_t next = 0;
  for (int m = 1; m <= max_m; ++m) {
    WhiteNoiseSpec spec;
    spec.s0 = 1.0;
    spec.phi = phi_true;
    spec.theta = 0.0;
    spec.seed = derive_seed(rep_seed, static_cast<std::uint64_t>(m - 1));
    const SpectralDensityEstimate est =
        polarization_periodogram(gen_white_noise(spec, n));
    for (std::size_t k = 0; k < n; ++k) sums[k] += est.bins[k];
    while (next < snapshots.size() && snapshots[next] == m) {
      double acc = 0.0;
      std::size_t used = 0;
      for (std::size_t k = 1; k < n / 2; ++k) {  // interior positive bins
        if (sums[k].a == 0.0) continue;
        acc += sums[k].vector_norm() / sums[k].a;
        ++used;
      }
      out[next] = acc / static_cast<double>(used);
      ++next;
    }
  }
  return out;
}

BiasTable summarize_bias(const BiasStudyConfig& cfg,
                         const std::vector<int>& snapshots,
                         const std::vector<std::vector<double>>& values) {
  const std::size_t reps = static_cast<std::size_t>(cfg.replicates);
  BiasTable table;
  for (std::size_t p = 0; p < cfg.phi_grid.size(); ++p) {
    const double phi = cfg.phi_grid[p];
    for (std::size_t mi = 0; mi < snapshots.size(); ++mi) {
      double mean = 0.0;
      for (std::size_t r = 0; r < reps; ++r) mean += values[p * reps + r][mi];
      mean /= static_cast<double>(reps);
      double var = 0.0;
      for (std::size_t r = 0; r < reps; ++r) {
        const double d = values[p * reps + r][mi] - mean;
        var += d * d;
      }
      var /= static_cast<double>(reps - 1);
      table.cells.push_back({phi, snapshots[mi], mean - phi,
                             std::sqrt(var / static_cast<double>(reps))});
    }
    for (std::size_t mi = 0; mi + 1 < snapshots.size(); ++mi) {
      double mean = 0.0;
      for (std::size_t r = 0; r < reps; ++r)
        mean += values[p * reps + r][mi] - values[p * reps + r][mi + 1];
      mean /= static_cast<double>(reps);
      double var = 0.0;
      for (std::size_t r = 0; r < reps; ++r) {
        const double d =
            values[p * reps + r][mi] - values[p * reps + r][mi + 1] - mean;
        var += d * d;
      }
      var /= static_cast<double>(reps - 1);
      table.adjacent_diffs.push_back({phi, snapshots[mi], snapshots[mi + 1], mean,
                                      std::sqrt(var / static_cast<double>(reps))});
    }
  }
  return table;
}

std::vector<int> sorted_snapshots(const BiasStudyConfig& cfg) {
  std::vector<int> snapshots = cfg.m_values;
  std::sort(snapshots.begin(), snapshots.end());
  snapshots.erase(std::unique(snapshots.begin(), snapshots.end()), snapshots.end());
  return snapshots;
}

}  // namespace

BiasTable run_bias_study(const BiasStudyConfig& cfg, int threads) {
  validate(cfg);
  const std::vector<int> snapshots = sorted_snapshots(cfg);
  const std::size_t reps = static_cast<std::size_t>(cfg.replicates);
  const std::size_t jobs = cfg.phi_grid.size() * reps;
  std::vector<std::vector<double>> values(jobs);
  std::exception_ptr failure = nullptr;

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(resolve_threads(threads))
#endif
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(jobs); ++j) {
    try {
      const std::size_t p = static_cast<std::size_t>(j) / reps;
      const std::size_t r = static_cast<std::size_t>(j) % reps;
      const std::uint64_t rep_seed =
          derive_seed(derive_seed(cfg.seed, p), static_cast<std::uint64_t>(r));
      values[static_cast<std::size_t>(j)] =
          bias_repetition(cfg.phi_grid[p], rep_seed, cfg.n, snapshots);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return summarize_bias(cfg, snapshots, values);
}

BiasTable run_bias_study_reference(const BiasStudyConfig& cfg) {
  validate(cfg);
  const std::vector<int> snapshots = sorted_snapshots(cfg);
  const std::size_t reps = static_cast<std::size_t>(cfg.replicates);
  std::vector<std::vector<double>> values(cfg.phi_grid.size() * reps);
  for (std::size_t p = 0; p < cfg.phi_grid.size(); ++p) {
    for (std::size_t r = 0; r < reps; ++r) {
      const std::uint64_t rep_seed =
          derive_seed(derive_seed(cfg.seed, p), static_cast<std::uint64_t>(r));
      values[p * reps + r] =
          bias_repetition(cfg.phi_grid[p], rep_seed, cfg.n, snapshots);
    }
  }
  return summarize_bias(cfg, snapshots, values);
}

Section5Report run_section5_experiment(const Section5Config& cfg) {
  if (cfg.realizations == 0)
    throw std::invalid_argument("section 5: need at least one realization");
  Section5Report report;
  report.tone = MonochromaticSpec{1.0, -std::numbers::pi / 3.0,
                                  std::numbers::pi / 8.0, 0.125};
  report.noise = WhiteNoiseSpec{10.0, 0.2, std::numbers::pi / 8.0, 0};
  report.truth = oracle_tone_plus_noise(report.tone, report.noise, cfg.n);
  report.expected = expected_periodogram(report.truth, cfg.n);
  report.tone_bin = report.truth.lines.begin()->first;

  const BivariateSignal tone = gen_monochromatic(report.tone, cfg.n);
  const WhiteNoiseSpec noise_template = report.noise;
  const std::uint64_t master = cfg.seed;
  const std::size_t n = cfg.n;
  SignalFactory factory = [tone, noise_template, master, n](std::size_t m) {
    WhiteNoiseSpec spec = noise_template;
    spec.seed = derive_seed(master, m);
    BivariateSignal y = gen_white_noise(spec, n);
    for (std::size_t t = 0; t < n; ++t) y.samples[t] += tone.samples[t];
    return y;
  };

  const EstimatorFn pgram = [](const BivariateSignal& y) {
    return polarization_periodogram(y);
  };
  const TaperSet tapers = slepian_tapers(cfg.n, cfg.nw, cfg.tapers);
  const EstimatorFn mt = [tapers](const BivariateSignal& y) {
    return multitaper_estimate(y, tapers);
  };

  const EnsembleMoments pg =
      ensemble_moments(factory, pgram, cfg.realizations, cfg.threads);
  const EnsembleMoments mm =
      ensemble_moments(factory, mt, cfg.realizations, cfg.threads);

  const double inv_m = 1.0 / static_cast<double>(cfg.realizations);
  report.periodogram_avg.method = EstimatorMethod::periodogram;
  report.periodogram_avg.bins.resize(cfg.n);
  report.multitaper_avg.method = EstimatorMethod::multitaper;
  report.multitaper_avg.taper_count = cfg.tapers;
  report.multitaper_avg.bins.resize(cfg.n);
  for (std::size_t k = 0; k < cfg.n; ++k) {
    report.periodogram_avg.bins[k] = pg.sum[k] * inv_m;
    report.multitaper_avg.bins[k] = mm.sum[k] * inv_m;
  }
  if (cfg.realizations >= 2) {
    report.periodogram_var.resize(cfg.n);
    report.multitaper_var.resize(cfg.n);
    for (std::size_t k = 0; k < cfg.n; ++k) {
      report.periodogram_var[k] = pg.component_variance(k);
      report.multitaper_var[k] = mm.component_variance(k);
    }
  }
  return report;
}

}  // namespace polarspec
