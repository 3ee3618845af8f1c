#include "polarspec/dft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace polarspec {

namespace {

// FFTW plan creation is not thread-safe; fftw_execute_dft on distinct buffers is.
std::mutex plan_mutex;

fftw_plan get_plan(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find({n, sign});
  if (it != cache.end()) return it->second;
  // Planned with a throwaway buffer; FFTW_UNALIGNED makes the plan valid for
  // any caller buffer passed to fftw_execute_dft.
  std::vector<std::complex<double>> tmp(n);
  auto* p = reinterpret_cast<fftw_complex*>(tmp.data());
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), p, p, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan == nullptr) throw std::runtime_error("dft: FFTW planning failed");
  cache.emplace(std::make_pair(n, sign), plan);
  return plan;
}

void execute(std::vector<std::complex<double>>& x, int sign) {
  if (x.empty()) throw std::invalid_argument("dft: empty input");
  fftw_plan plan = get_plan(x.size(), sign);
  auto* p = reinterpret_cast<fftw_complex*>(x.data());
  fftw_execute_dft(plan, p, p);
}

}  // namespace

void dft_forward(std::vector<std::complex<double>>& x) { execute(x, FFTW_FORWARD); }

void dft_inverse(std::vector<std::complex<double>>& x) {
  execute(x, FFTW_BACKWARD);
  const double inv = 1.0 / static_cast<double>(x.size());
  for (auto& v : x) v *= inv;
}

}  // namespace polarspec
