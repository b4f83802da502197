#include "tropdiv/metric_reduce.hpp"

#include <map>

#include "metric_engine.hpp"
#include "tropdiv/chip_firing.hpp"
#include "tropdiv/errors.hpp"
#include "tropdiv/linalg.hpp"

namespace tropdiv {

namespace detail {

Integer lattice_denominator(const MetricGraph& g, const Divisor& d, const GraphPoint* q) {
  Integer n = 1;
  for (const auto& l : g.lengths()) n = lcm(n, l.get_den());
  for (const auto& [p, c] : d.chips())
    if (!p.is_vertex()) n = lcm(n, p.offset().get_den());
  if (q && !q->is_vertex()) n = lcm(n, q->offset().get_den());
  return n;
}

bool lattice_fits(const MetricGraph& g, const Integer& n) {
  Rational t = g.total_length() * Rational(n);
  return ceil_of(t) < Integer(1) << 52;
}

Host<std::int64_t> lattice_host(const MetricGraph& g, const LatticeScale& scale) {
  Host<std::int64_t> h;
  h.graph = &g;
  for (const auto& l : g.lengths()) h.length.push_back(scale.from(l));
  return h;
}

Host<Rational> rational_host(const MetricGraph& g) {
  Host<Rational> h;
  h.graph = &g;
  h.length = g.lengths();
  return h;
}

}  // namespace detail

namespace {

using detail::Base;
using detail::ChipState;

void check_rd1(const MetricGraph& g, const Divisor& d, const GraphPoint& q) {
  for (const auto& [p, n] : d.chips()) {
    if (n < 0 && p != q) throw PreconditionError("negative chips at " + point_name(g.model(), p) + " (not the base point)");
  }
}

// Node = vertex, chip location or base point; segments are the pieces of
// edges between consecutive nodes.
struct Model {
  std::vector<GraphPoint> nodes;
  std::map<GraphPoint, int> index;
  struct Segment {
    int a, b;
    EdgeId edge;
    Rational from, to;  // offsets along the host edge, from < to
  };
  std::vector<Segment> segments;
};

Model build_model(const MetricGraph& g, const Divisor& d, const GraphPoint& q) {
  Model m;
  for (VertexId v = 0; v < g.num_vertices(); ++v) m.nodes.push_back(GraphPoint::vertex(v));
  std::vector<std::vector<GraphPoint>> on_edge(g.num_edges());
  auto add_interior = [&](const GraphPoint& p) {
    if (!p.is_vertex()) on_edge[p.edge_id()].push_back(p);
  };
  for (const auto& [p, n] : d.chips()) add_interior(p);
  add_interior(q);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto& pts = on_edge[e];
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    int prev = g.model().edge(e).tail;
    Rational prev_off = 0;
    for (const auto& p : pts) {
      int id = static_cast<int>(m.nodes.size());
      m.nodes.push_back(p);
      m.segments.push_back({prev, id, e, prev_off, p.offset()});
      prev = id;
      prev_off = p.offset();
    }
    m.segments.push_back({prev, g.model().edge(e).head, e, prev_off, g.length(e)});
  }
  for (std::size_t i = 0; i < m.nodes.size(); ++i) m.index[m.nodes[i]] = static_cast<int>(i);
  return m;
}

// Adds a PL function f with d + div(f) nonnegative away from q.
PLFunction clear_negatives(const MetricGraph& g, const Divisor& d, const GraphPoint& q) {
  Model m = build_model(g, d, q);
  const int nn = static_cast<int>(m.nodes.size());
  const int qi = m.index.at(q);
  // Potential with unit net outflow at every node except q, where it is zero.
  std::vector<int> var(nn, -1);
  int nv = 0;
  for (int i = 0; i < nn; ++i)
    if (i != qi) var[i] = nv++;
  RationalMatrix lap(nv, std::vector<Rational>(nv, 0));
  for (const auto& s : m.segments) {
    Rational c = 1 / (s.to - s.from);
    for (int side = 0; side < 2; ++side) {
      int x = side ? s.b : s.a;
      int y = side ? s.a : s.b;
      if (var[x] < 0) continue;
      lap[var[x]][var[x]] += c;
      if (var[y] >= 0) lap[var[x]][var[y]] -= c;
    }
  }
  std::vector<Rational> phi(nn, 0);
  if (nv > 0) {
    auto sol = solve(lap, std::vector<Rational>(nv, Rational(1)));
    for (int i = 0; i < nn; ++i)
      if (var[i] >= 0) phi[i] = sol[var[i]];
  }
  std::vector<std::int64_t> deg(nn, 0);
  for (const auto& s : m.segments) {
    ++deg[s.a];
    ++deg[s.b];
  }
  std::int64_t bound = 0;
  for (int i = 0; i < nn; ++i)
    if (i != qi) bound = std::max(bound, deg[i] - d[m.nodes[i]]);
  // Incoming slope at x along a segment to y is floor((f(x) - f(y)) / len).
  auto gain = [&](std::int64_t mult, std::vector<Integer>& out) {
    out.assign(nn, 0);
    Rational M(static_cast<long>(mult));
    for (const auto& s : m.segments) {
      Rational len = s.to - s.from;
      out[s.a] += floor_of(M * (phi[s.a] - phi[s.b]) / len);
      out[s.b] += floor_of(M * (phi[s.b] - phi[s.a]) / len);
    }
  };
  std::int64_t mult = 0;
  std::vector<Integer> got;
  for (;; ++mult) {
    gain(mult, got);
    bool ok = true;
    for (int i = 0; i < nn && ok; ++i)
      if (i != qi && got[i] + d[m.nodes[i]] < 0) ok = false;
    if (ok) break;
    if (mult > bound) throw ConsistencyError("could not clear negative chips");
  }
  Rational M(static_cast<long>(mult));
  std::vector<Rational> vv(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) vv[v] = M * phi[v];
  std::vector<std::vector<Knot>> interior(g.num_edges());
  for (const auto& s : m.segments) {
    Rational fa = M * phi[s.a];
    Rational fb = M * phi[s.b];
    Rational len = s.to - s.from;
    // Slope (toward b) ceil first, then floor; the kink carries one chip.
    Rational avg = (fb - fa) / len;
    if (!is_integer(avg)) {
      Integer fl = floor_of(avg);
      Rational p = (fb - fa) - Rational(fl) * len;
      interior[s.edge].push_back({s.from + p, fa + (Rational(fl) + 1) * p});
    }
    if (s.b >= g.num_vertices()) interior[s.edge].push_back({s.to, fb});
  }
  for (auto& ks : interior)
    std::sort(ks.begin(), ks.end(), [](const Knot& x, const Knot& y) { return x.offset < y.offset; });
  return PLFunction(g, std::move(vv), std::move(interior));
}

template <class S, class Scale>
MetricReduction burn_phase(const MetricGraph& g, const Divisor& d, const GraphPoint& q, const ReduceOptions& opts,
                           detail::Host<S> host, const Scale& scale, MetricReduction out) {
  detail::Burner<S> burner(host);
  ChipState<S> st = detail::to_state<S>(g, d, scale);
  Base<S> base = detail::to_base<S>(q, scale);
  std::function<void(const detail::FireRecord<S>&)> on_fire;
  if (opts.witness || opts.trace) {
    on_fire = [&](const detail::FireRecord<S>& rec) {
      if (opts.trace) {
        std::vector<GraphPoint> pts;
        for (VertexId v = 0; v < g.num_vertices(); ++v)
          if ((*rec.unburnt_vertices)[v]) pts.push_back(GraphPoint::vertex(v));
        for (const auto& [e, off] : rec.unburnt_interior) pts.push_back(GraphPoint::on_edge(g, e, Rational(scale.to(off))));
        out.trace.push_back(std::move(pts));
      }
      if (opts.witness) {
        std::vector<Rational> vv;
        for (const auto& x : rec.vertex_values) vv.push_back(Rational(scale.to(x)));
        std::vector<std::vector<Knot>> interior(g.num_edges());
        for (EdgeId e = 0; e < g.num_edges(); ++e)
          for (const auto& [o, val] : rec.knots[e]) interior[e].push_back({Rational(scale.to(o)), Rational(scale.to(val))});
        out.witness += PLFunction(g, std::move(vv), std::move(interior));
      }
    };
  }
  detail::reduce_effective(burner, st, base, on_fire);
  out.reduced = detail::from_state(g, st, scale);
  return out;
}

}  // namespace

std::vector<GraphPoint> dhar_unburnt(const MetricGraph& g, const Divisor& d, const GraphPoint& q) {
  check_divisor(g, d);
  check_rd1(g, d, q);
  auto host = detail::rational_host(g);
  detail::IdentityScale scale;
  detail::Burner<Rational> burner(host);
  ChipState<Rational> st = detail::to_state<Rational>(g, d, scale);
  Base<Rational> base = detail::to_base<Rational>(q, scale);
  detail::Burner<Rational>::add_base(st, base);
  std::vector<GraphPoint> out;
  if (!burner.burn(st, base)) return out;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (!burner.burnt()[v]) out.push_back(GraphPoint::vertex(v));
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    for (std::size_t j = 0; j < st.echips[e].size(); ++j)
      if (!burner.burnt()[burner.first_interior(e) + static_cast<int>(j)])
        out.push_back(GraphPoint::on_edge(g, e, st.echips[e][j].off));
  return out;
}

MetricReduction reduce(const MetricGraph& g, const Divisor& d, const GraphPoint& q, const ReduceOptions& opts) {
  check_divisor(g, d);
  MetricReduction out;
  if (opts.witness) out.witness = PLFunction::constant(g, 0);
  Divisor start = d;
  bool negative = false;
  for (const auto& [p, n] : d.chips())
    if (n < 0 && p != q) negative = true;
  if (negative) {
    PLFunction f = clear_negatives(g, d, q);
    start = d + f.div(g);
    if (opts.witness) out.witness += f;
  }
  Integer n = detail::lattice_denominator(g, start, &q);
  if (opts.arithmetic == Arithmetic::automatic && detail::lattice_fits(g, n)) {
    detail::LatticeScale scale{n};
    return burn_phase<std::int64_t>(g, start, q, opts, detail::lattice_host(g, scale), scale, std::move(out));
  }
  return burn_phase<Rational>(g, start, q, opts, detail::rational_host(g), detail::IdentityScale{}, std::move(out));
}

Divisor reduced_divisor(const MetricGraph& g, const Divisor& d, const GraphPoint& q) {
  ReduceOptions opts;
  opts.witness = false;
  return reduce(g, d, q, opts).reduced;
}

bool is_reduced(const MetricGraph& g, const Divisor& d, const GraphPoint& q) {
  for (const auto& [p, n] : d.chips())
    if (n < 0 && p != q) return false;
  return dhar_unburnt(g, d, q).empty();
}

bool is_reduced_everywhere(const MetricGraph& g, const Divisor& d) {
  if (!d.is_effective()) return false;
  std::vector<GraphPoint> interior;
  for (const auto& [p, n] : d.chips())
    if (!p.is_vertex()) interior.push_back(p);
  Refinement ref = refine(g, interior);
  // A fire lit anywhere inside a chip-free open segment burns the whole
  // segment first, so one basepoint per node and per segment is exact.
  for (VertexId v = 0; v < ref.graph.num_vertices(); ++v)
    if (!dhar_unburnt(g, d, ref.unmap_point(g, GraphPoint::vertex(v))).empty()) return false;
  for (EdgeId e = 0; e < ref.graph.num_edges(); ++e) {
    GraphPoint mid = GraphPoint::on_edge(ref.graph, e, ref.graph.length(e) / 2);
    if (!dhar_unburnt(g, d, ref.unmap_point(g, mid)).empty()) return false;
  }
  return true;
}

bool is_equivalent(const MetricGraph& g, const Divisor& a, const Divisor& b) {
  if (a.degree() != b.degree()) return false;
  return reduced_divisor(g, a - b, GraphPoint::vertex(0)).is_zero();
}

bool equivalent_to_effective(const MetricGraph& g, const Divisor& d) {
  if (d.degree() < 0) return false;
  return reduced_divisor(g, d, GraphPoint::vertex(0)).is_effective();
}

Divisor reduce_by_subdivision(const MetricGraph& g, const Divisor& d, const GraphPoint& q, int max_vertices) {
  Integer n = detail::lattice_denominator(g, d, &q);
  detail::LatticeScale scale{n};
  std::vector<std::int64_t> units;
  std::int64_t total = g.num_vertices();
  for (const auto& l : g.lengths()) {
    units.push_back(scale.from(l));
    total += units.back() - 1;
  }
  if (total > max_vertices) throw DomainError("subdivision too large");
  // Vertex ids: host vertices, then interior unit points edge by edge.
  std::vector<std::pair<VertexId, VertexId>> ends;
  std::vector<int> first(g.num_edges());
  int next = g.num_vertices();
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    first[e] = next;
    int prev = g.model().edge(e).tail;
    for (std::int64_t k = 1; k < units[e]; ++k) {
      ends.push_back({prev, next});
      prev = next++;
    }
    ends.push_back({prev, g.model().edge(e).head});
  }
  FiniteGraph fg = FiniteGraph::from_edges(next, ends);
  auto vertex_of = [&](const GraphPoint& p) -> VertexId {
    if (p.is_vertex()) return p.vertex_id();
    return first[p.edge_id()] + static_cast<int>(scale.from(p.offset())) - 1;
  };
  Chips chips(next, 0);
  for (const auto& [p, c] : d.chips()) chips[vertex_of(p)] += c;
  reduce_in_place(fg, chips, vertex_of(q));
  Divisor out;
  for (VertexId v = 0; v < g.num_vertices(); ++v) out.add(GraphPoint::vertex(v), chips[v]);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    for (std::int64_t k = 1; k < units[e]; ++k)
      out.add(GraphPoint::on_edge(g, e, scale.to(k)), chips[first[e] + k - 1]);
  return out;
}

}  // namespace tropdiv
