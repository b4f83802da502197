#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tropdiv/divisor.hpp"
#include "tropdiv/graph.hpp"
#include "tropdiv/parallel.hpp"

namespace tropdiv {

// Vertices plus the points splitting every edge into `parts` equal pieces.
std::vector<GraphPoint> grid_points(const MetricGraph& g, int parts);

// Least-index effective divisor of degree d on the grid with rank >= r.
std::optional<Divisor> find_rank_divisor(const MetricGraph& g, int r, int d, int parts,
                                         Execution exec = Execution::parallel);

struct GonalityResult {
  // Empty when no grid divisor of degree <= max_degree has rank >= 1.
  std::optional<int> gonality;
  Divisor witness;
  int parts = 1;
};

// Divisorial gonality restricted to grid divisors; an upper bound in general.
GonalityResult gonality(const MetricGraph& g, int max_degree, int parts = 1, Execution exec = Execution::parallel);

struct CliffordIndexResult {
  // Empty when no grid divisor has r(D) > max(0, deg D - g + 1).
  std::optional<int> index;
  Divisor witness;
  int witness_rank = -1;
  int parts = 1;
};

CliffordIndexResult clifford_index(const MetricGraph& g, int parts = 1, Execution exec = Execution::parallel);

// Vertex analogue of w^r_d: the largest k such that every effective vertex
// divisor E of degree r + k lies below some vertex divisor class of degree d
// and rank >= r; -1 if there is no such class. Requires r >= 0.
int brill_noether_rank(const FiniteGraph& g, int r, int d, Execution exec = Execution::parallel);

// r#(D) = min over vertex divisors 0 <= E <= weights of deg E + r(D - 2E).
int weighted_rank(const MetricGraph& g, const Divisor& d);
// The unweighted graph with weight(v) loops of the given length at each v,
// each loop split into two parallel edges through a new midpoint vertex.
// Existing vertex and edge indices are kept.
MetricGraph virtual_loop_graph(const MetricGraph& g, const Rational& loop_length);
int weighted_rank_by_loops(const MetricGraph& g, const Divisor& d, const Rational& loop_length);

struct WeightedRiemannRochReport {
  int rank_d = -1;
  int rank_k_minus_d = -1;
  int degree = 0;
  int weighted_genus = 0;
  bool holds = false;
};

WeightedRiemannRochReport weighted_riemann_roch_check(const MetricGraph& g, const Divisor& d);

// r(K - g P) >= 0. DomainError when genus < 2.
bool is_weierstrass_point(const MetricGraph& g, const GraphPoint& p);
std::vector<GraphPoint> weierstrass_points(const MetricGraph& g, int parts, Execution exec = Execution::parallel);

struct OrientationLawReport {
  std::uint64_t orientations = 0;
  std::uint64_t acyclic = 0;
  bool holds = true;
  // Orientation code of the first violation.
  std::optional<std::uint64_t> counterexample;
};

// For every orientation O, rank(D_O) = -1 iff O is acyclic.
OrientationLawReport orientation_rank_law(const FiniteGraph& g, Execution exec = Execution::parallel);

}  // namespace tropdiv
