#include "tropdiv/jacobian.hpp"

#include <deque>

#include "tropdiv/errors.hpp"

namespace tropdiv {

JacobianStructure jacobian_structure(const FiniteGraph& g) {
  JacobianStructure out;
  out.order = 1;
  const int n = g.num_vertices();
  if (n == 1) return out;
  auto lap = laplacian(g);
  IntegerMatrix m(n - 1, std::vector<Integer>(n - 1));
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) m[i - 1][j - 1] = static_cast<long>(lap[i][j]);
  for (auto& d : smith_diagonal(std::move(m))) {
    Integer a = abs(d);
    if (a == 0) throw ConsistencyError("reduced Laplacian is singular");
    out.order *= a;
    if (a > 1) out.invariant_factors.push_back(a);
  }
  return out;
}

namespace {

// Signed tree path from the first vertex: for each vertex, the edges on the
// path from vertex 0 with +1 when traversed tail -> head.
std::vector<std::vector<std::pair<EdgeId, int>>> tree_paths(const FiniteGraph& g, const SpanningTree& tree) {
  std::vector<std::vector<EdgeId>> adj(g.num_vertices());
  for (EdgeId e : tree) {
    adj[g.edge(e).tail].push_back(e);
    adj[g.edge(e).head].push_back(e);
  }
  std::vector<std::vector<std::pair<EdgeId, int>>> path(g.num_vertices());
  std::vector<char> seen(g.num_vertices(), 0);
  std::deque<VertexId> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    for (EdgeId e : adj[v]) {
      VertexId w = g.other_end(e, v);
      if (seen[w]) continue;
      seen[w] = 1;
      path[w] = path[v];
      path[w].emplace_back(e, g.edge(e).tail == v ? 1 : -1);
      q.push_back(w);
    }
  }
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (!seen[v]) throw ValidationError("edge set is not a spanning tree");
  return path;
}

// x(v)_i = integral of the i-th basis form from vertex 0 to v along the tree.
std::vector<Rational> pairing_at(const MetricGraph& g, const PeriodLattice& lat,
                                 const std::vector<std::vector<std::pair<EdgeId, int>>>& paths, const GraphPoint& p) {
  const std::size_t k = lat.cycles.size();
  std::vector<Rational> x(k, Rational(0));
  VertexId start = p.is_vertex() ? p.vertex_id() : g.model().edge(p.edge_id()).tail;
  for (const auto& [e, sign] : paths[start])
    for (std::size_t i = 0; i < k; ++i) x[i] += g.length(e) * (sign * lat.cycles[i][e]);
  if (!p.is_vertex())
    for (std::size_t i = 0; i < k; ++i) x[i] += p.offset() * lat.cycles[i][p.edge_id()];
  return x;
}

}  // namespace

PeriodLattice period_gram(const MetricGraph& g) { return period_gram(g, bfs_tree(g.model())); }

PeriodLattice period_gram(const MetricGraph& g, const SpanningTree& tree) {
  const FiniteGraph& m = g.model();
  if (static_cast<int>(tree.size()) != m.num_vertices() - 1) throw ValidationError("edge set is not a spanning tree");
  PeriodLattice out;
  out.tree = tree;
  auto paths = tree_paths(m, tree);
  for (EdgeId e : complement_edges(m, tree)) {
    // tail -> head along e, then back from head to tail through the tree.
    std::vector<int> c(m.num_edges(), 0);
    c[e] = 1;
    for (const auto& [f, s] : paths[m.edge(e).tail]) c[f] += s;
    for (const auto& [f, s] : paths[m.edge(e).head]) c[f] -= s;
    out.cycles.push_back(std::move(c));
  }
  const std::size_t k = out.cycles.size();
  out.gram.assign(k, std::vector<Rational>(k, Rational(0)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (EdgeId e = 0; e < m.num_edges(); ++e) out.gram[i][j] += g.length(e) * (out.cycles[i][e] * out.cycles[j][e]);
  return out;
}

AbelJacobiImage abel_jacobi(const MetricGraph& g, const PeriodLattice& lat, const GraphPoint& base, const Divisor& d) {
  if (g.genus() < 1) throw DomainError("Abel-Jacobi needs genus at least 1");
  check_divisor(g, d);
  if (d.degree() != 0) throw ValidationError("Abel-Jacobi takes degree-0 divisors");
  auto paths = tree_paths(g.model(), lat.tree);
  const std::size_t k = lat.cycles.size();
  std::vector<Rational> x(k, Rational(0));
  auto xb = pairing_at(g, lat, paths, base);
  for (const auto& [p, n] : d.chips()) {
    auto xp = pairing_at(g, lat, paths, p);
    for (std::size_t i = 0; i < k; ++i) x[i] += (xp[i] - xb[i]) * n;
  }
  AbelJacobiImage out;
  std::vector<Rational> t = solve(lat.gram, x);
  out.in_lattice = true;
  for (auto& ti : t) {
    out.in_lattice = out.in_lattice && is_integer(ti);
    ti -= Rational(floor_of(ti));
  }
  out.coords.assign(k, Rational(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out.coords[i] += lat.gram[i][j] * t[j];
  out.lattice_coords = std::move(t);
  return out;
}

AbelJacobiImage abel_jacobi(const MetricGraph& g, const GraphPoint& base, const Divisor& d) {
  return abel_jacobi(g, period_gram(g), base, d);
}

namespace {

Rational off_tree_weight(const MetricGraph& g, const SpanningTree& t) {
  Rational w = 1;
  for (EdgeId e : complement_edges(g.model(), t)) w *= g.length(e);
  return w;
}

void add_atoms(const MetricGraph& g, ZhangMeasure& z, const Rational& gsharp) {
  z.vertex_atom.assign(g.num_vertices(), Rational(0));
  for (VertexId v = 0; v < g.num_vertices(); ++v) z.vertex_atom[v] = Rational(g.weight(v)) / gsharp;
  z.total = 0;
  for (const auto& m : z.edge_mass) z.total += m;
  for (const auto& a : z.vertex_atom) z.total += a;
}

}  // namespace

ZhangMeasure zhang_measure(const MetricGraph& g, Execution exec) {
  const int gsharp = g.weighted_genus();
  if (gsharp < 1) throw DomainError("Zhang measure needs weighted genus at least 1");
  auto trees = spanning_trees(g.model(), 10'000'000, exec);
  ZhangMeasure z;
  z.edge_mass.assign(g.num_edges(), Rational(0));
  Rational wg = 0;
  for (const auto& t : trees) {
    Rational w = off_tree_weight(g, t);
    wg += w;
    for (EdgeId e : complement_edges(g.model(), t)) z.edge_mass[e] += w;
  }
  for (auto& m : z.edge_mass) m /= wg * gsharp;
  add_atoms(g, z, gsharp);
  return z;
}

ZhangMeasure zhang_measure_by_resistance(const MetricGraph& g) {
  const int gsharp = g.weighted_genus();
  if (gsharp < 1) throw DomainError("Zhang measure needs weighted genus at least 1");
  const FiniteGraph& m = g.model();
  const int n = m.num_vertices();
  ZhangMeasure z;
  z.edge_mass.assign(g.num_edges(), Rational(0));
  if (n > 1) {
    // Conductance Laplacian grounded at vertex 0, inverted.
    RationalMatrix lap(n - 1, std::vector<Rational>(n - 1, Rational(0)));
    for (EdgeId e = 0; e < m.num_edges(); ++e) {
      Rational c = 1 / g.length(e);
      int a = m.edge(e).tail - 1, b = m.edge(e).head - 1;
      if (a >= 0) lap[a][a] += c;
      if (b >= 0) lap[b][b] += c;
      if (a >= 0 && b >= 0) {
        lap[a][b] -= c;
        lap[b][a] -= c;
      }
    }
    RationalMatrix inv = inverse(lap);
    auto entry = [&](int a, int b) { return a < 0 || b < 0 ? Rational(0) : inv[a][b]; };
    for (EdgeId e = 0; e < m.num_edges(); ++e) {
      int a = m.edge(e).tail - 1, b = m.edge(e).head - 1;
      Rational r = entry(a, a) + entry(b, b) - 2 * entry(a, b);
      z.edge_mass[e] = (1 - r / g.length(e)) / gsharp;
    }
  }
  add_atoms(g, z, gsharp);
  return z;
}

VolumeReport volume_report(const MetricGraph& g, Execution exec) {
  VolumeReport v;
  v.tree_sum = 0;
  for (const auto& t : spanning_trees(g.model(), 10'000'000, exec)) v.tree_sum += off_tree_weight(g, t);
  auto lat = period_gram(g);
  v.gram_determinant = lat.gram.empty() ? Rational(1) : determinant(lat.gram);
  return v;
}

}  // namespace tropdiv
