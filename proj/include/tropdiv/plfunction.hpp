#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tropdiv/divisor.hpp"
#include "tropdiv/graph.hpp"
#include "tropdiv/rational.hpp"

namespace tropdiv {

struct Knot {
  Rational offset;
  Rational value;
};

// Continuous function, linear with integer slope between consecutive knots.
// Every edge carries knots at offset 0 and at its length, matching the values
// at its tail and head.
class PLFunction {
 public:
  PLFunction() = default;
  // `interior[e]` lists knots strictly inside edge e in increasing order; an
  // empty outer vector means no interior knots anywhere.
  PLFunction(const MetricGraph& g, std::vector<Rational> vertex_values,
             std::vector<std::vector<Knot>> interior = {});
  static PLFunction constant(const MetricGraph& g, const Rational& c);

  int num_vertices() const { return static_cast<int>(vertex_values_.size()); }
  int num_edges() const { return static_cast<int>(knots_.size()); }
  const Rational& vertex_value(VertexId v) const { return vertex_values_[v]; }
  std::span<const Knot> knots(EdgeId e) const { return knots_[e]; }

  Rational value_at(const GraphPoint& p) const;
  Rational value_on_edge(EdgeId e, const Rational& offset) const;
  // Sum of incoming slopes.
  std::int64_t ord_at(const MetricGraph& g, const GraphPoint& p) const;
  Divisor div(const MetricGraph& g) const;

  // Slope leaving p along edge e (direction away from p). For an interior
  // point, `toward_head` picks the direction.
  std::int64_t slope_from_vertex(const MetricGraph& g, VertexId v, EdgeId e) const;
  std::int64_t slope_inside(EdgeId e, const Rational& offset, bool toward_head) const;

  PLFunction& operator+=(const PLFunction& o);
  PLFunction& operator-=(const PLFunction& o);
  friend PLFunction operator+(PLFunction a, const PLFunction& b) { return a += b; }
  friend PLFunction operator-(PLFunction a, const PLFunction& b) { return a -= b; }
  PLFunction scaled(std::int64_t k) const;
  PLFunction shifted(const Rational& c) const;

  // Drops knots whose neighbouring slopes agree.
  void simplify();
  // Equal as functions.
  bool same_function(const PLFunction& o) const;

 private:
  void combine(const PLFunction& o, int sign);

  std::vector<Rational> vertex_values_;
  std::vector<std::vector<Knot>> knots_;
};

// Offsets on edge e where some function has a knot or two of the shifted
// functions cross; sorted, including 0 and the edge length.
std::vector<Rational> common_breakpoints(std::span<const PLFunction> fs, std::span<const Rational> shifts, EdgeId e);

// min_i (f_i + b_i).
PLFunction tropical_min(const MetricGraph& g, std::span<const PLFunction> fs, std::span<const Rational> shifts);

// Integer vertex function on a finite graph, realized with unit edge lengths.
PLFunction from_potential(const MetricGraph& unit_graph, std::span<const std::int64_t> f);

// ord_v(f) = sum over edges vw of f(v) - f(w).
std::vector<std::int64_t> principal_divisor(const FiniteGraph& g, std::span<const std::int64_t> f);

}  // namespace tropdiv
