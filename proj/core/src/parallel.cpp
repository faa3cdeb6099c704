#include "fraclame/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace fraclame {

namespace {

std::atomic<int> g_threads{0};

int default_threads() {
  if (const char* env = std::getenv("FRACLAME_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

int thread_count() {
  const int t = g_threads.load(std::memory_order_relaxed);
  return t > 0 ? t : default_threads();
}

void set_thread_count(int threads) {
  g_threads.store(threads, std::memory_order_relaxed);
}

void parallel_for(int begin, int end, const std::function<void(int)>& fn) {
  const int n = end - begin;
  if (n <= 0) return;
  const int t = std::min(thread_count(), n);
  if (t <= 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(t);
  const int chunk = (n + t - 1) / t;
  for (int w = 0; w < t; ++w) {
    const int lo = begin + w * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : workers) th.join();
}

double parallel_sum(int begin, int end,
                    const std::function<double(int)>& term) {
  const int n = end - begin;
  if (n <= 0) return 0.0;
  const int t = std::min(thread_count(), n);
  if (t <= 1) {
    double sum = 0.0;
    for (int i = begin; i < end; ++i) sum += term(i);
    return sum;
  }
  std::vector<double> partial(t, 0.0);
  std::vector<std::thread> workers;
  workers.reserve(t);
  const int chunk = (n + t - 1) / t;
  for (int w = 0; w < t; ++w) {
    const int lo = begin + w * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, w, &partial, &term] {
      double s = 0.0;
      for (int i = lo; i < hi; ++i) s += term(i);
      partial[w] = s;
    });
  }
  for (auto& th : workers) th.join();
  // combine in block order
  double sum = 0.0;
  for (double s : partial) sum += s;
  return sum;
}

}  // namespace fraclame
