#pragma once

#include <vector>

#include "tropdiv/divisor.hpp"
#include "tropdiv/graph.hpp"
#include "tropdiv/plfunction.hpp"

namespace tropdiv {

// Unburnt points (vertices and chip locations) of a fire lit at q; empty iff
// d is q-reduced. Throws PreconditionError naming a negative point other than q.
std::vector<GraphPoint> dhar_unburnt(const MetricGraph& g, const Divisor& d, const GraphPoint& q);

enum class Arithmetic { automatic, rational };

struct ReduceOptions {
  bool witness = true;
  bool trace = false;
  Arithmetic arithmetic = Arithmetic::automatic;
};

struct MetricReduction {
  Divisor reduced;
  // reduced = d + div(witness); empty when not requested.
  PLFunction witness;
  // Unburnt points at each firing step of the burning phase.
  std::vector<std::vector<GraphPoint>> trace;
};

MetricReduction reduce(const MetricGraph& g, const Divisor& d, const GraphPoint& q, const ReduceOptions& opts = {});
Divisor reduced_divisor(const MetricGraph& g, const Divisor& d, const GraphPoint& q);

bool is_reduced(const MetricGraph& g, const Divisor& d, const GraphPoint& q);
// d is q-reduced for every point q of g; for effective d this says d is the
// only effective divisor in its class.
bool is_reduced_everywhere(const MetricGraph& g, const Divisor& d);
bool is_equivalent(const MetricGraph& g, const Divisor& a, const Divisor& b);
bool equivalent_to_effective(const MetricGraph& g, const Divisor& d);

// Independent route: scale lengths to integers, subdivide into unit edges and
// reduce on the finite graph. Throws DomainError if the subdivision would
// exceed max_vertices.
Divisor reduce_by_subdivision(const MetricGraph& g, const Divisor& d, const GraphPoint& q, int max_vertices = 20000);

}  // namespace tropdiv
