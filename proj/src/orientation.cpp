#include "tropdiv/orientation.hpp"

#include "tropdiv/errors.hpp"

namespace tropdiv {

Orientation Orientation::from_code(const FiniteGraph& g, std::uint64_t code) {
  if (g.num_edges() > 63) throw DomainError("too many edges to index orientations");
  Orientation o;
  for (EdgeId e = 0; e < g.num_edges(); ++e) o.toward_head.push_back(((code >> e) & 1u) != 0);
  return o;
}

std::vector<int> indegrees(const FiniteGraph& g, const Orientation& o) {
  if (static_cast<int>(o.toward_head.size()) != g.num_edges()) throw ValidationError("orientation size mismatch");
  std::vector<int> in(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) ++in[o.toward_head[e] ? g.edge(e).head : g.edge(e).tail];
  return in;
}

Divisor orientation_divisor(const FiniteGraph& g, const Orientation& o) {
  auto in = indegrees(g, o);
  Divisor d;
  for (VertexId v = 0; v < g.num_vertices(); ++v) d.add(GraphPoint::vertex(v), in[v] - 1);
  return d;
}

bool is_acyclic(const FiniteGraph& g, const Orientation& o) {
  // Kahn: repeatedly remove sources.
  auto in = indegrees(g, o);
  std::vector<VertexId> sources;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (in[v] == 0) sources.push_back(v);
  int removed = 0;
  while (!sources.empty()) {
    VertexId v = sources.back();
    sources.pop_back();
    ++removed;
    for (EdgeId e : g.incident(v)) {
      VertexId from = o.toward_head[e] ? g.edge(e).tail : g.edge(e).head;
      if (from != v) continue;
      VertexId to = g.other_end(e, v);
      if (--in[to] == 0) sources.push_back(to);
    }
  }
  return removed == g.num_vertices();
}

}  // namespace tropdiv
