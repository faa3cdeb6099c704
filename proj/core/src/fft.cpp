#include "fraclame/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace fraclame {

namespace {

// FFTW planner is not thread-safe; executing a cached plan on new arrays is.
std::mutex g_planner_mutex;

struct PlanCache {
  std::map<std::tuple<int, int, int, int>, fftw_plan> plans;
  ~PlanCache() {
    for (auto& [key, plan] : plans) fftw_destroy_plan(plan);
  }
};

fftw_plan cached_plan(const GridSpec& grid, int howmany, int sign,
                      fftw_complex* data) {
  static PlanCache cache;
  std::lock_guard<std::mutex> lock(g_planner_mutex);
  const auto key = std::make_tuple(grid.dim, grid.points_per_dim, howmany, sign);
  auto it = cache.plans.find(key);
  if (it != cache.plans.end()) return it->second;

  int n[2] = {grid.points_per_dim, grid.points_per_dim};
  // FFTW_UNALIGNED so the plan may be re-executed on any buffer.
  fftw_plan plan = fftw_plan_many_dft(
      grid.dim, n, howmany, data, nullptr, howmany, 1, data, nullptr, howmany,
      1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw std::runtime_error("fftw plan creation failed");
  cache.plans.emplace(key, plan);
  return plan;
}

}  // namespace

void fft_inplace(const GridSpec& grid, std::complex<double>* data, int howmany,
                 int sign) {
  auto* raw = reinterpret_cast<fftw_complex*>(data);
  fftw_plan plan = cached_plan(grid, howmany, sign, raw);
  fftw_execute_dft(plan, raw, raw);
}

void fft_inplace(const GridSpec& grid, std::vector<std::complex<double>>& data,
                 int howmany, int sign) {
  const std::size_t expected =
      static_cast<std::size_t>(grid.nodes()) * howmany;
  if (data.size() != expected)
    throw std::invalid_argument("fft_inplace: buffer size mismatch");
  fft_inplace(grid, data.data(), howmany, sign);
}

}  // namespace fraclame
