#include "tropdiv/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

namespace tropdiv {

int worker_count() {
  int n = omp_get_max_threads();
  if (const char* env = std::getenv("TROPDIV_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min<long>(n, cap);
  }
  return std::max(n, 1);
}

namespace {

// Exceptions must not escape an OpenMP region; the first one is rethrown.
class ErrorSlot {
 public:
  void capture() {
#pragma omp critical(tropdiv_error_slot)
    if (!error_) error_ = std::current_exception();
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace

void parallel_for(std::size_t n, int threads, const std::function<void(int, std::size_t)>& body) {
  threads = std::max(threads, 1);
  ErrorSlot err;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      body(omp_get_thread_num(), static_cast<std::size_t>(i));
    } catch (...) {
      err.capture();
    }
  }
  err.rethrow();
}

std::size_t parallel_find_first(std::size_t n, int threads, const std::function<bool(int, std::size_t)>& pred) {
  threads = std::max(threads, 1);
  const std::size_t block = static_cast<std::size_t>(threads) * 16;
  std::vector<char> hit;
  for (std::size_t lo = 0; lo < n; lo += block) {
    const std::size_t hi = std::min(n, lo + block);
    hit.assign(hi - lo, 0);
    parallel_for(hi - lo, threads, [&](int t, std::size_t i) { hit[i] = pred(t, lo + i) ? 1 : 0; });
    for (std::size_t i = 0; i < hit.size(); ++i)
      if (hit[i]) return lo + i;
  }
  return n;
}

}  // namespace tropdiv
