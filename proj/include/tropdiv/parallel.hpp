#pragma once

#include <cstddef>
#include <functional>

namespace tropdiv {

// Parallel kernels keep a serial path with identical results for testing.
enum class Execution { serial, parallel };

// OpenMP's thread count, capped by TROPDIV_THREADS when it holds a positive
// integer.
int worker_count();

// Runs body(thread_index, i) for i in [0, n) on worker_count() threads. Each
// thread index in [0, threads) is used by one thread only, so per-thread
// scratch indexed by it needs no locking.
void parallel_for(std::size_t n, int threads, const std::function<void(int, std::size_t)>& body);

// Smallest i in [0, n) with pred(thread, i), or n. Work proceeds in blocks
// so a hit early in the range stops the sweep soon after.
std::size_t parallel_find_first(std::size_t n, int threads, const std::function<bool(int, std::size_t)>& pred);

}  // namespace tropdiv
