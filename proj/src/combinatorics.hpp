#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "tropdiv/errors.hpp"

namespace tropdiv::detail {

// Nondecreasing index sequences of length k over {0..n-1}, in lexicographic
// order; f returns false to stop early.
inline void for_each_multiset(int n, int k, const std::function<bool(const std::vector<int>&)>& f) {
  if (k < 0 || (n == 0 && k > 0)) return;
  std::vector<int> idx(k, 0);
  while (true) {
    if (!f(idx)) return;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - 1) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[i];
  }
}

// All of them, refusing more than `limit`.
inline std::vector<std::vector<int>> multisets(int n, int k, std::size_t limit = 5'000'000) {
  std::vector<std::vector<int>> out;
  for_each_multiset(n, k, [&](const std::vector<int>& idx) {
    if (out.size() >= limit) throw DomainError("search space too large");
    out.push_back(idx);
    return true;
  });
  return out;
}

}  // namespace tropdiv::detail
