// Timing comparison of the OpenMP Monte-Carlo kernels against their serial
// reference implementations.

#include <chrono>
#include <cstdio>

#include "polarspec/mcstudy.hpp"
#include "polarspec/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace polarspec;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

void bench_ensemble(std::size_t n, std::size_t realizations) {
  WhiteNoiseSpec base{10.0, 0.2, 0.0, 0};
  SignalFactory factory = [base, n](std::size_t m) {
    WhiteNoiseSpec spec = base;
    spec.seed = derive_seed(42, m);
    return gen_white_noise(spec, n);
  };
  EstimatorFn estimator = [](const BivariateSignal& x) {
    return polarization_periodogram(x);
  };
  estimator(factory(0));  // warm the FFT plan cache outside the timers

  auto start = std::chrono::steady_clock::now();
  const EnsembleMoments serial =
      ensemble_moments_reference(factory, estimator, realizations);
  const double t_serial = seconds_since(start);

  start = std::chrono::steady_clock::now();
  const EnsembleMoments parallel = ensemble_moments(factory, estimator, realizations);
  const double t_parallel = seconds_since(start);

  const bool identical = serial.sum == parallel.sum && serial.sum_sq == parallel.sum_sq;
  std::printf("ensemble_moments      N=%-5zu M=%-5zu serial %.3fs  parallel %.3fs  speedup %.2fx  identical=%s\n",
              n, realizations, t_serial, t_parallel, t_serial / t_parallel,
              identical ? "yes" : "NO");
}

void bench_bias_study() {
  BiasStudyConfig cfg;
  cfg.phi_grid = {0.0, 0.4, 0.8};
  cfg.m_values = {1, 5, 20, 100};
  cfg.n = 128;
  cfg.replicates = 40;
  cfg.seed = 7;

  auto start = std::chrono::steady_clock::now();
  const BiasTable serial = run_bias_study_reference(cfg);
  const double t_serial = seconds_since(start);

  start = std::chrono::steady_clock::now();
  const BiasTable parallel = run_bias_study(cfg);
  const double t_parallel = seconds_since(start);

  bool identical = serial.cells.size() == parallel.cells.size();
  for (std::size_t i = 0; identical && i < serial.cells.size(); ++i)
    identical = serial.cells[i].bias == parallel.cells[i].bias &&
                serial.cells[i].std_error == parallel.cells[i].std_error;
  std::printf("run_bias_study        %zu cells            serial %.3fs  parallel %.3fs  speedup %.2fx  identical=%s\n",
              serial.cells.size(), t_serial, t_parallel, t_serial / t_parallel,
              identical ? "yes" : "NO");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; parallel kernels run serially\n");
#endif
  bench_ensemble(1024, 400);
  bench_ensemble(128, 4000);
  bench_bias_study();
  return 0;
}
