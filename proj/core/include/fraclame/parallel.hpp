#pragma once

#include <functional>
#include <vector>

namespace fraclame {

/// Number of worker threads used by the pair-sum loops. Resolution order:
/// explicit set_thread_count, FRACLAME_THREADS, hardware concurrency.
int thread_count();
void set_thread_count(int threads);  // <= 0 resets to the default

/// Runs fn(i) for i in [begin, end) on static contiguous blocks.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

/// Sum of term(i) over [begin, end). Per-block partial sums are combined
/// in block order, so the result is identical across runs for a fixed
/// thread count.
double parallel_sum(int begin, int end,
                    const std::function<double(int)>& term);

}  // namespace fraclame
