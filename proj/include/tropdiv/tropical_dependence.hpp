#pragma once

#include <span>
#include <vector>

#include "tropdiv/divisor.hpp"
#include "tropdiv/graph.hpp"
#include "tropdiv/plfunction.hpp"

namespace tropdiv {

// True iff min_i (f_i + b_i) is attained at least twice at every point.
bool verify_tropical_dependence(const MetricGraph& g, std::span<const PLFunction> fs, std::span<const Rational> bs);

struct MinCombination {
  PLFunction theta;
  // supp(div(theta) + D), computed from theta.
  std::vector<GraphPoint> support;
  // The same set from the functions attaining the minimum: a point lies in
  // the support iff it is in supp(div(f_j) + D) or on the boundary of the
  // region where theta = f_j + b_j.
  std::vector<GraphPoint> support_from_pieces;
};

// Requires D + div(f_i) >= 0 for every i (PreconditionError otherwise).
// Throws ConsistencyError if the two support computations disagree for any
// attaining index.
MinCombination min_combination(const MetricGraph& g, std::span<const PLFunction> fs, std::span<const Rational> bs,
                               const Divisor& d);

}  // namespace tropdiv
