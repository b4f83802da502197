#pragma once

#include <cstdint>
#include <vector>

#include "tropdiv/divisor.hpp"
#include "tropdiv/graph.hpp"

namespace tropdiv {

// toward_head[e] orients edge e from its tail to its head.
struct Orientation {
  std::vector<bool> toward_head;

  // Orientation number `code` in binary, bit e set meaning tail -> head.
  static Orientation from_code(const FiniteGraph& g, std::uint64_t code);
};

std::vector<int> indegrees(const FiniteGraph& g, const Orientation& o);
// D_O = sum (indeg(v) - 1) v.
Divisor orientation_divisor(const FiniteGraph& g, const Orientation& o);
bool is_acyclic(const FiniteGraph& g, const Orientation& o);

}  // namespace tropdiv
