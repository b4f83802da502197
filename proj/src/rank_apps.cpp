#include "tropdiv/rank_apps.hpp"

#include <algorithm>
#include <map>

#include "combinatorics.hpp"
#include "tropdiv/chip_firing.hpp"
#include "tropdiv/errors.hpp"
#include "tropdiv/orientation.hpp"
#include "tropdiv/rank.hpp"

namespace tropdiv {

namespace {

Integer grid_denominator(const std::vector<GraphPoint>& pts) {
  Integer n = 1;
  for (const auto& p : pts)
    if (!p.is_vertex()) n = lcm(n, p.offset().get_den());
  return n;
}

int threads_for(Execution exec) { return exec == Execution::parallel ? worker_count() : 1; }

std::vector<MetricRankEngine> engines(const MetricGraph& g, const Integer& n, int count) {
  std::vector<MetricRankEngine> out;
  for (int i = 0; i < count; ++i) out.emplace_back(g, n);
  return out;
}

std::vector<FiniteRankEngine> engines(const FiniteGraph& g, int count) {
  std::vector<FiniteRankEngine> out;
  for (int i = 0; i < count; ++i) out.emplace_back(g);
  return out;
}

Divisor from_indices(const std::vector<GraphPoint>& pts, const std::vector<int>& idx) {
  Divisor d;
  for (int i : idx) d.add(pts[i], 1);
  return d;
}

}  // namespace

std::vector<GraphPoint> grid_points(const MetricGraph& g, int parts) {
  if (parts < 1) throw ValidationError("grid parts must be positive");
  std::vector<GraphPoint> pts;
  for (VertexId v = 0; v < g.num_vertices(); ++v) pts.push_back(GraphPoint::vertex(v));
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    for (int k = 1; k < parts; ++k) pts.push_back(GraphPoint::on_edge(g, e, g.length(e) * Rational(k, parts)));
  return pts;
}

std::optional<Divisor> find_rank_divisor(const MetricGraph& g, int r, int d, int parts, Execution exec) {
  if (d < 0) return std::nullopt;
  auto pts = grid_points(g, parts);
  auto cands = detail::multisets(static_cast<int>(pts.size()), d);
  const int threads = threads_for(exec);
  auto eng = engines(g, grid_denominator(pts), threads);
  std::size_t hit = parallel_find_first(cands.size(), threads, [&](int t, std::size_t i) {
    return eng[t].rank_at_least(from_indices(pts, cands[i]), r);
  });
  if (hit == cands.size()) return std::nullopt;
  return from_indices(pts, cands[hit]);
}

GonalityResult gonality(const MetricGraph& g, int max_degree, int parts, Execution exec) {
  GonalityResult out;
  out.parts = parts;
  for (int d = 1; d <= max_degree; ++d) {
    if (auto w = find_rank_divisor(g, 1, d, parts, exec)) {
      out.gonality = d;
      out.witness = *w;
      return out;
    }
  }
  return out;
}

CliffordIndexResult clifford_index(const MetricGraph& g, int parts, Execution exec) {
  CliffordIndexResult out;
  out.parts = parts;
  auto pts = grid_points(g, parts);
  const int genus = g.genus();
  const int threads = threads_for(exec);
  auto eng = engines(g, grid_denominator(pts), threads);
  for (int d = 2; d <= 2 * genus - 2; ++d) {
    auto cands = detail::multisets(static_cast<int>(pts.size()), d);
    std::vector<int> ranks(cands.size(), -1);
    parallel_for(cands.size(), threads, [&](int t, std::size_t i) {
      ranks[i] = eng[t].rank(from_indices(pts, cands[i])).rank;
    });
    for (std::size_t i = 0; i < cands.size(); ++i) {
      const int r = ranks[i];
      if (r <= std::max(0, d - genus + 1)) continue;
      if (!out.index || d - 2 * r < *out.index) {
        out.index = d - 2 * r;
        out.witness = from_indices(pts, cands[i]);
        out.witness_rank = r;
      }
    }
    // Clifford's inequality makes 0 the floor.
    if (out.index && *out.index == 0) break;
  }
  return out;
}

int brill_noether_rank(const FiniteGraph& g, int r, int d, Execution exec) {
  if (r < 0) throw ValidationError("brill_noether_rank needs r >= 0");
  if (d < 0) return -1;
  const int n = g.num_vertices();
  const int threads = threads_for(exec);
  auto eng = engines(g, threads);
  // Classes of W^r_d, one reduced representative each.
  std::map<Chips, char> classes;
  for (const auto& idx : detail::multisets(n, d)) {
    Chips c(n, 0);
    for (int i : idx) ++c[i];
    reduce_in_place(g, c, 0);
    classes.emplace(std::move(c), 0);
  }
  std::vector<Chips> reps;
  for (const auto& [c, unused] : classes) reps.push_back(c);
  std::vector<char> keep(reps.size(), 0);
  parallel_for(reps.size(), threads,
               [&](int t, std::size_t i) { keep[i] = eng[t].rank_at_least(Divisor::from_vector(reps[i]), r); });
  std::vector<Divisor> w;
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (keep[i]) w.push_back(Divisor::from_vector(reps[i]));
  if (w.empty()) return -1;
  for (int k = 0; r + k <= d; ++k) {
    auto es = detail::multisets(n, r + k);
    std::size_t bad = parallel_find_first(es.size(), threads, [&](int t, std::size_t i) {
      Divisor e;
      for (int v : es[i]) e.add(GraphPoint::vertex(v), 1);
      for (const auto& cls : w)
        if (eng[t].rank_at_least(cls - e, 0)) return false;
      return true;
    });
    if (bad != es.size()) return k - 1;
  }
  return d - r;
}

int weighted_rank(const MetricGraph& g, const Divisor& d) {
  check_divisor(g, d);
  Integer n = 1;
  for (const auto& [p, c] : d.chips())
    if (!p.is_vertex()) n = lcm(n, p.offset().get_den());
  MetricRankEngine engine(g, n);
  std::vector<int> e(g.num_vertices(), 0);
  int best = engine.rank(d).rank;
  // Odometer over 0 <= E <= W.
  while (true) {
    VertexId v = 0;
    while (v < g.num_vertices() && e[v] == g.weight(v)) e[v++] = 0;
    if (v == g.num_vertices()) break;
    ++e[v];
    Divisor ev;
    int deg = 0;
    for (VertexId u = 0; u < g.num_vertices(); ++u) {
      ev.add(GraphPoint::vertex(u), e[u]);
      deg += e[u];
    }
    if (deg - 1 >= best) continue;
    best = std::min(best, deg + engine.rank(d - 2 * ev).rank);
  }
  return best;
}

MetricGraph virtual_loop_graph(const MetricGraph& g, const Rational& loop_length) {
  if (loop_length <= 0) throw ValidationError("loop length must be positive");
  const FiniteGraph& m = g.model();
  std::vector<std::string> vids, eids;
  std::vector<std::pair<VertexId, VertexId>> ends;
  std::vector<Rational> lengths = g.lengths();
  for (VertexId v = 0; v < m.num_vertices(); ++v) vids.push_back(m.vertex_id(v));
  for (EdgeId e = 0; e < m.num_edges(); ++e) {
    eids.push_back(m.edge_id(e));
    ends.emplace_back(m.edge(e).tail, m.edge(e).head);
  }
  for (VertexId v = 0; v < m.num_vertices(); ++v) {
    for (int k = 0; k < g.weight(v); ++k) {
      const std::string tag = m.vertex_id(v) + "~loop" + std::to_string(k + 1);
      VertexId mid = static_cast<VertexId>(vids.size());
      vids.push_back(tag);
      for (int half = 0; half < 2; ++half) {
        eids.push_back(tag + (half == 0 ? ".a" : ".b"));
        ends.emplace_back(v, mid);
        lengths.push_back(loop_length / 2);
      }
    }
  }
  return MetricGraph(FiniteGraph(std::move(vids), std::move(eids), ends), std::move(lengths));
}

int weighted_rank_by_loops(const MetricGraph& g, const Divisor& d, const Rational& loop_length) {
  check_divisor(g, d);
  return rank(virtual_loop_graph(g, loop_length), d).rank;
}

WeightedRiemannRochReport weighted_riemann_roch_check(const MetricGraph& g, const Divisor& d) {
  WeightedRiemannRochReport r;
  r.rank_d = weighted_rank(g, d);
  r.rank_k_minus_d = weighted_rank(g, weighted_canonical(g) - d);
  r.degree = static_cast<int>(d.degree());
  r.weighted_genus = g.weighted_genus();
  r.holds = r.rank_d - r.rank_k_minus_d == r.degree + 1 - r.weighted_genus;
  return r;
}

bool is_weierstrass_point(const MetricGraph& g, const GraphPoint& p) {
  if (g.genus() < 2) throw DomainError("Weierstrass points need genus at least 2");
  Divisor d = canonical_divisor(g);
  d.add(p, -g.genus());
  return rank_at_least(g, d, 0);
}

std::vector<GraphPoint> weierstrass_points(const MetricGraph& g, int parts, Execution exec) {
  if (g.genus() < 2) throw DomainError("Weierstrass points need genus at least 2");
  auto pts = grid_points(g, parts);
  std::vector<char> flag(pts.size(), 0);
  const int threads = threads_for(exec);
  auto eng = engines(g, grid_denominator(pts), threads);
  const Divisor k = canonical_divisor(g);
  parallel_for(pts.size(), threads, [&](int t, std::size_t i) {
    Divisor d = k;
    d.add(pts[i], -g.genus());
    flag[i] = eng[t].rank_at_least(d, 0);
  });
  std::vector<GraphPoint> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (flag[i]) out.push_back(pts[i]);
  return out;
}

OrientationLawReport orientation_rank_law(const FiniteGraph& g, Execution exec) {
  if (g.num_edges() > 24) throw DomainError("too many edges to sweep all orientations");
  const std::uint64_t total = std::uint64_t{1} << g.num_edges();
  const int threads = threads_for(exec);
  auto eng = engines(g, threads);
  std::vector<char> acyclic(total), negative(total);
  parallel_for(total, threads, [&](int t, std::size_t code) {
    auto o = Orientation::from_code(g, code);
    acyclic[code] = is_acyclic(g, o);
    negative[code] = !eng[t].rank_at_least(orientation_divisor(g, o), 0);
  });
  OrientationLawReport rep;
  rep.orientations = total;
  for (std::uint64_t c = 0; c < total; ++c) {
    rep.acyclic += acyclic[c] ? 1 : 0;
    if (acyclic[c] != negative[c] && rep.holds) {
      rep.holds = false;
      rep.counterexample = c;
    }
  }
  return rep;
}

}  // namespace tropdiv
