#pragma once

#include <map>
#include <vector>

#include "tropdiv/chip_firing.hpp"
#include "tropdiv/divisor.hpp"
#include "tropdiv/graph.hpp"
#include "tropdiv/parallel.hpp"
#include "tropdiv/spanning_trees.hpp"

namespace tropdiv {

struct IntegralBreakDivisor {
  Divisor divisor;
  // Trees whose closed cell contains the divisor, as indices into the
  // lexicographic tree list.
  std::vector<std::size_t> trees;
};

struct BreakEnumeration {
  std::vector<SpanningTree> trees;
  // Sorted by divisor.
  std::vector<IntegralBreakDivisor> divisors;
};

// For every spanning tree, every way of putting one chip on an endpoint of
// each edge off the tree.
BreakEnumeration enumerate_integral_break_divisors(const FiniteGraph& g, Execution exec = Execution::parallel);

// Matches degree-g classes against the enumeration through their reduced
// forms at the first vertex.
class BreakIndex {
 public:
  explicit BreakIndex(const FiniteGraph& g, Execution exec = Execution::parallel);
  // The unique integral break divisor equivalent to d. DomainError when
  // deg d != genus; ConsistencyError if the class is missed.
  const IntegralBreakDivisor& representative(const Divisor& d) const;
  const BreakEnumeration& enumeration() const { return enumeration_; }
  // Number of enumerated divisors sharing each reduced class; all 1 when
  // the representative is unique.
  std::size_t max_class_multiplicity() const { return max_multiplicity_; }

 private:
  FiniteGraph g_;
  BreakEnumeration enumeration_;
  std::map<Chips, std::size_t> by_class_;
  std::size_t max_multiplicity_ = 0;
};

const IntegralBreakDivisor& break_representative(const BreakIndex& index, const Divisor& d);

struct UniversalReducednessReport {
  // Complement of the support connected and simply connected.
  bool complement_contractible = false;
  // The above plus d(s) <= val(s) - 1 at every support point.
  bool topological = false;
  // q-reduced for every node of the refinement by supp(d) and every
  // midpoint between consecutive nodes.
  bool by_dhar = false;
};

// Requires d effective of degree g (PreconditionError otherwise).
UniversalReducednessReport universal_reducedness(const MetricGraph& g, const Divisor& d);
// by_dhar, after checking it agrees with the topological test
// (ConsistencyError otherwise).
bool is_universally_reduced(const MetricGraph& g, const Divisor& d);

struct SimpleBreakReport {
  int rank_d = -1;
  int rank_k_minus_d = -1;
  bool holds = false;
};

// rank(d) = 0 and rank(K - d) = -1 for universally reduced d.
SimpleBreakReport simple_break_rank_law(const MetricGraph& g, const Divisor& d);

}  // namespace tropdiv
