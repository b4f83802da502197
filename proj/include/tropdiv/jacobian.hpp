#pragma once

#include <vector>

#include "tropdiv/divisor.hpp"
#include "tropdiv/graph.hpp"
#include "tropdiv/linalg.hpp"
#include "tropdiv/parallel.hpp"
#include "tropdiv/spanning_trees.hpp"

namespace tropdiv {

struct JacobianStructure {
  // d_1 | d_2 | ... with every d_i > 1.
  std::vector<Integer> invariant_factors;
  Integer order;
};

// Smith normal form of the Laplacian with the first vertex deleted.
JacobianStructure jacobian_structure(const FiniteGraph& g);

struct PeriodLattice {
  SpanningTree tree;
  // cycles[i][e] in {-1, 0, 1}: the fundamental cycle of the i-th non-tree
  // edge, traversed along that edge's tail -> head direction.
  std::vector<std::vector<int>> cycles;
  // gram[i][j] = sum_e length(e) cycles[i][e] cycles[j][e].
  RationalMatrix gram;
};

PeriodLattice period_gram(const MetricGraph& g);
PeriodLattice period_gram(const MetricGraph& g, const SpanningTree& tree);

struct AbelJacobiImage {
  // Pairings with the basis forms, reduced so that gram^-1 * coords lies in
  // [0, 1)^g.
  std::vector<Rational> coords;
  // gram^-1 * coords.
  std::vector<Rational> lattice_coords;
  bool in_lattice = false;
};

// Degree-0 divisors only (ValidationError otherwise); genus >= 1.
AbelJacobiImage abel_jacobi(const MetricGraph& g, const PeriodLattice& lattice, const GraphPoint& base,
                            const Divisor& d);
AbelJacobiImage abel_jacobi(const MetricGraph& g, const GraphPoint& base, const Divisor& d);

struct ZhangMeasure {
  // Total mass carried by each edge, spread with constant density.
  std::vector<Rational> edge_mass;
  std::vector<Rational> vertex_atom;
  Rational total;
};

// Mass of edge e is (1/g#) sum over trees T missing e of w(T)/w(G), with
// w(T) the product of lengths off T; atoms are weight(v)/g#. Needs g# >= 1.
ZhangMeasure zhang_measure(const MetricGraph& g, Execution exec = Execution::parallel);
// Same quantity from effective resistances: the tree-weighted probability
// that e is missing from T is 1 - R_eff(e)/length(e).
ZhangMeasure zhang_measure_by_resistance(const MetricGraph& g);

struct VolumeReport {
  // Sum over spanning trees of the product of lengths off the tree.
  Rational tree_sum;
  Rational gram_determinant;
};

VolumeReport volume_report(const MetricGraph& g, Execution exec = Execution::parallel);

}  // namespace tropdiv
