#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tropdiv/divisor.hpp"
#include "tropdiv/graph.hpp"

namespace tropdiv {

using Chips = std::vector<std::int64_t>;

Divisor chip_fire(const FiniteGraph& g, const Divisor& d, std::span<const VertexId> fire_set);

// Vertices left unburnt by a fire lit at q, in increasing order. Throws
// PreconditionError naming a vertex other than q that holds negative chips.
std::vector<VertexId> dhar_unburnt(const FiniteGraph& g, const Divisor& d, VertexId q);
std::vector<VertexId> dhar_unburnt(const FiniteGraph& g, const Chips& chips, VertexId q);

struct FiniteReduction {
  Divisor reduced;
  // reduced = d + div(witness), with div as in principal_divisor.
  std::vector<std::int64_t> witness;
  // Unburnt set fired at each burning step.
  std::vector<std::vector<VertexId>> trace;
};

FiniteReduction reduce(const FiniteGraph& g, const Divisor& d, VertexId q);
// Fast path without witness or trace; chips modified in place.
void reduce_in_place(const FiniteGraph& g, Chips& chips, VertexId q);

bool is_reduced(const FiniteGraph& g, const Divisor& d, VertexId q);
bool is_equivalent(const FiniteGraph& g, const Divisor& a, const Divisor& b);
// Effective divisor equivalent to d, if one exists.
bool equivalent_to_effective(const FiniteGraph& g, const Divisor& d);

}  // namespace tropdiv
