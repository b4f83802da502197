#include "tropdiv/tropical_dependence.hpp"

#include <algorithm>

#include "tropdiv/errors.hpp"

namespace tropdiv {

namespace {

void check_inputs(const MetricGraph& g, std::span<const PLFunction> fs, std::span<const Rational> bs) {
  if (fs.empty() || fs.size() != bs.size()) throw ValidationError("need matching non-empty function and shift lists");
  for (const auto& f : fs) {
    if (f.num_vertices() != g.num_vertices() || f.num_edges() != g.num_edges()) {
      throw ValidationError("function does not live on this graph");
    }
  }
}

int attaining_count(std::span<const PLFunction> fs, std::span<const Rational> bs, const GraphPoint& p) {
  Rational best = fs[0].value_at(p) + bs[0];
  int count = 1;
  for (std::size_t i = 1; i < fs.size(); ++i) {
    Rational v = fs[i].value_at(p) + bs[i];
    if (v < best) {
      best = v;
      count = 1;
    } else if (v == best) {
      ++count;
    }
  }
  return count;
}

// Vertices, plus every knot and crossing point on every edge.
std::vector<GraphPoint> candidate_points(const MetricGraph& g, std::span<const PLFunction> fs,
                                         std::span<const Rational> bs, const Divisor& d) {
  std::vector<GraphPoint> pts;
  for (VertexId v = 0; v < g.num_vertices(); ++v) pts.push_back(GraphPoint::vertex(v));
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto offs = common_breakpoints(fs, bs, e);
    for (std::size_t k = 1; k + 1 < offs.size(); ++k) pts.push_back(GraphPoint::on_edge(g, e, offs[k]));
  }
  for (const auto& [p, n] : d.chips()) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Outgoing slopes of f at p, one per tangent direction, in a fixed order.
std::vector<std::int64_t> outgoing_slopes(const MetricGraph& g, const PLFunction& f, const GraphPoint& p) {
  std::vector<std::int64_t> out;
  if (p.is_vertex()) {
    for (EdgeId e : g.model().incident(p.vertex_id())) out.push_back(f.slope_from_vertex(g, p.vertex_id(), e));
  } else {
    out.push_back(f.slope_inside(p.edge_id(), p.offset(), true));
    out.push_back(f.slope_inside(p.edge_id(), p.offset(), false));
  }
  return out;
}

}  // namespace

bool verify_tropical_dependence(const MetricGraph& g, std::span<const PLFunction> fs, std::span<const Rational> bs) {
  check_inputs(g, fs, bs);
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (attaining_count(fs, bs, GraphPoint::vertex(v)) < 2) return false;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    // Between consecutive breakpoints no two functions cross, so the set of
    // minimizers is constant on each open interval.
    auto offs = common_breakpoints(fs, bs, e);
    for (std::size_t k = 0; k + 1 < offs.size(); ++k) {
      if (k > 0 && attaining_count(fs, bs, GraphPoint::on_edge(g, e, offs[k])) < 2) return false;
      Rational mid = (offs[k] + offs[k + 1]) / 2;
      if (attaining_count(fs, bs, GraphPoint::on_edge(g, e, mid)) < 2) return false;
    }
  }
  return true;
}

MinCombination min_combination(const MetricGraph& g, std::span<const PLFunction> fs, std::span<const Rational> bs,
                               const Divisor& d) {
  check_inputs(g, fs, bs);
  std::vector<Divisor> divs;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    divs.push_back(d + fs[i].div(g));
    if (!divs.back().is_effective()) {
      throw PreconditionError("function " + std::to_string(i) + " is not in R(D): D + div(f) is not effective");
    }
  }
  MinCombination out;
  out.theta = tropical_min(g, fs, bs);
  Divisor total = d + out.theta.div(g);
  for (const GraphPoint& p : candidate_points(g, fs, bs, d)) {
    const bool direct = total[p] != 0;
    if (direct) out.support.push_back(p);
    const Rational value = out.theta.value_at(p);
    const auto theta_slopes = outgoing_slopes(g, out.theta, p);
    bool first = true;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (fs[j].value_at(p) + bs[j] != value) continue;
      bool in_support = divs[j][p] != 0;
      bool boundary = false;
      auto slopes = outgoing_slopes(g, fs[j], p);
      for (std::size_t k = 0; k < slopes.size(); ++k) boundary = boundary || theta_slopes[k] < slopes[k];
      const bool lemma = in_support || boundary;
      if (lemma != direct) {
        throw ConsistencyError("support characterization disagrees at " + point_name(g.model(), p));
      }
      if (first && lemma) out.support_from_pieces.push_back(p);
      first = false;
    }
  }
  return out;
}

}  // namespace tropdiv
