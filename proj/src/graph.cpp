#include "tropdiv/graph.hpp"

#include <algorithm>
#include <numeric>

#include "tropdiv/errors.hpp"

namespace tropdiv {

FiniteGraph::FiniteGraph(std::vector<std::string> vertex_ids, std::vector<std::string> edge_ids,
                         std::vector<std::pair<VertexId, VertexId>> ends)
    : vertex_ids_(std::move(vertex_ids)), edge_ids_(std::move(edge_ids)) {
  const int n = num_vertices();
  if (n == 0) throw ValidationError("graph has no vertices");
  if (edge_ids_.size() != ends.size()) throw ValidationError("edge id count does not match edge count");
  for (VertexId v = 0; v < n; ++v) {
    if (!vertex_index_.emplace(vertex_ids_[v], v).second) {
      throw ValidationError("duplicate vertex id '" + vertex_ids_[v] + "'");
    }
  }
  incidence_.assign(n, {});
  for (EdgeId e = 0; e < static_cast<EdgeId>(ends.size()); ++e) {
    auto [a, b] = ends[e];
    if (a < 0 || a >= n || b < 0 || b >= n) throw ValidationError("edge '" + edge_ids_[e] + "' has an invalid endpoint");
    if (a == b) throw ValidationError("edge '" + edge_ids_[e] + "' is a loop");
    if (!edge_index_.emplace(edge_ids_[e], e).second) {
      throw ValidationError("duplicate edge id '" + edge_ids_[e] + "'");
    }
    edges_.push_back({std::min(a, b), std::max(a, b)});
    incidence_[a].push_back(e);
    incidence_[b].push_back(e);
  }
  std::vector<bool> seen(n, false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (EdgeId e : incidence_[v]) {
      VertexId w = other_end(e, v);
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) throw ValidationError("graph is disconnected");
}

FiniteGraph FiniteGraph::from_edges(int n, const std::vector<std::pair<VertexId, VertexId>>& ends) {
  std::vector<std::string> vs, es;
  for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i + 1));
  for (std::size_t i = 0; i < ends.size(); ++i) es.push_back("e" + std::to_string(i + 1));
  return FiniteGraph(std::move(vs), std::move(es), ends);
}

int FiniteGraph::multiplicity(VertexId u, VertexId v) const {
  int m = 0;
  for (EdgeId e : incidence_[u]) m += other_end(e, u) == v ? 1 : 0;
  return m;
}

std::optional<VertexId> FiniteGraph::find_vertex(std::string_view id) const {
  auto it = vertex_index_.find(std::string(id));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> FiniteGraph::find_edge(std::string_view id) const {
  auto it = edge_index_.find(std::string(id));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

MetricGraph::MetricGraph(FiniteGraph model, std::vector<Rational> lengths, std::vector<int> weights)
    : model_(std::move(model)), lengths_(std::move(lengths)), weights_(std::move(weights)) {
  if (static_cast<int>(lengths_.size()) != model_.num_edges()) throw ValidationError("length count does not match edge count");
  for (EdgeId e = 0; e < model_.num_edges(); ++e) {
    lengths_[e].canonicalize();
    if (lengths_[e] <= 0) throw ValidationError("edge '" + model_.edge_id(e) + "' has non-positive length");
  }
  if (weights_.empty()) weights_.assign(model_.num_vertices(), 0);
  if (static_cast<int>(weights_.size()) != model_.num_vertices()) throw ValidationError("weight count does not match vertex count");
  for (VertexId v = 0; v < model_.num_vertices(); ++v) {
    if (weights_[v] < 0) throw ValidationError("vertex '" + model_.vertex_id(v) + "' has negative weight");
  }
}

MetricGraph MetricGraph::unit(FiniteGraph model) {
  std::vector<Rational> lengths(model.num_edges(), Rational(1));
  return MetricGraph(std::move(model), std::move(lengths));
}

int MetricGraph::total_weight() const { return std::accumulate(weights_.begin(), weights_.end(), 0); }

Rational MetricGraph::total_length() const {
  Rational t = 0;
  for (const auto& l : lengths_) t += l;
  return t;
}

GraphPoint GraphPoint::vertex(VertexId v) {
  GraphPoint p;
  p.vertex_ = v;
  return p;
}

GraphPoint GraphPoint::on_edge(const MetricGraph& g, EdgeId e, const Rational& offset) {
  if (e < 0 || e >= g.num_edges()) throw ValidationError("edge index out of range");
  const Rational& len = g.length(e);
  if (offset < 0 || offset > len) {
    throw ValidationError("offset " + to_string(offset) + " outside edge '" + g.model().edge_id(e) + "'");
  }
  if (offset == 0) return vertex(g.model().edge(e).tail);
  if (offset == len) return vertex(g.model().edge(e).head);
  GraphPoint p;
  p.edge_ = e;
  p.offset_ = offset;
  p.offset_.canonicalize();
  return p;
}

bool operator<(const GraphPoint& a, const GraphPoint& b) {
  if (a.is_vertex() != b.is_vertex()) return a.is_vertex();
  if (a.is_vertex()) return a.vertex_ < b.vertex_;
  if (a.edge_ != b.edge_) return a.edge_ < b.edge_;
  return a.offset_ < b.offset_;
}

std::string point_name(const FiniteGraph& g, const GraphPoint& p) {
  if (p.is_vertex()) return g.vertex_id(p.vertex_id());
  return g.edge_id(p.edge_id()) + "@" + to_string(p.offset());
}

GraphPoint parse_point(const MetricGraph& g, std::string_view text) {
  auto at = text.find('@');
  if (at == std::string_view::npos) {
    auto v = g.model().find_vertex(text);
    if (!v) throw ValidationError("unknown vertex '" + std::string(text) + "'");
    return GraphPoint::vertex(*v);
  }
  auto e = g.model().find_edge(text.substr(0, at));
  if (!e) throw ValidationError("unknown edge '" + std::string(text.substr(0, at)) + "'");
  return GraphPoint::on_edge(g, *e, parse_rational(text.substr(at + 1)));
}

std::vector<std::vector<std::int64_t>> laplacian(const FiniteGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<std::int64_t>> L(n, std::vector<std::int64_t>(n, 0));
  for (const Edge& e : g.edges()) {
    L[e.tail][e.tail] += 1;
    L[e.head][e.head] += 1;
    L[e.tail][e.head] -= 1;
    L[e.head][e.tail] -= 1;
  }
  return L;
}

int genus(const FiniteGraph& g) { return g.genus(); }
int genus(const MetricGraph& g) { return g.genus(); }

Refinement refine(const MetricGraph& g, std::span<const GraphPoint> points) {
  const FiniteGraph& m = g.model();
  Refinement out;
  out.cuts.assign(m.num_edges(), {});
  for (const GraphPoint& p : points) {
    if (!p.is_vertex()) out.cuts[p.edge_id()].push_back(p.offset());
  }
  std::vector<std::string> vids;
  for (VertexId v = 0; v < m.num_vertices(); ++v) vids.push_back(m.vertex_id(v));
  std::vector<std::string> eids;
  std::vector<std::pair<VertexId, VertexId>> ends;
  std::vector<Rational> lengths;
  std::vector<int> weights = g.weights();
  out.pieces.assign(m.num_edges(), {});
  out.cut_vertices.assign(m.num_edges(), {});
  for (EdgeId e = 0; e < m.num_edges(); ++e) {
    auto& cuts = out.cuts[e];
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.empty()) {
      out.pieces[e].push_back(static_cast<EdgeId>(ends.size()));
      eids.push_back(m.edge_id(e));
      ends.push_back({m.edge(e).tail, m.edge(e).head});
      lengths.push_back(g.length(e));
      out.piece_origin.push_back({e, Rational(0), false});
      continue;
    }
    VertexId prev = m.edge(e).tail;
    Rational prev_off = 0;
    for (std::size_t k = 0; k <= cuts.size(); ++k) {
      VertexId next;
      Rational next_off;
      if (k < cuts.size()) {
        next = static_cast<VertexId>(vids.size());
        out.cut_vertices[e].push_back(next);
        vids.push_back(m.edge_id(e) + "@" + to_string(cuts[k]));
        weights.push_back(0);
        next_off = cuts[k];
      } else {
        next = m.edge(e).head;
        next_off = g.length(e);
      }
      out.pieces[e].push_back(static_cast<EdgeId>(ends.size()));
      eids.push_back(m.edge_id(e) + "." + std::to_string(k));
      ends.push_back({prev, next});
      lengths.push_back(next_off - prev_off);
      out.piece_origin.push_back({e, prev_off, prev > next});
      prev = next;
      prev_off = next_off;
    }
  }
  out.graph = MetricGraph(FiniteGraph(std::move(vids), std::move(eids), std::move(ends)), std::move(lengths),
                          std::move(weights));
  return out;
}

GraphPoint Refinement::map_point(const MetricGraph&, const GraphPoint& p) const {
  if (p.is_vertex()) return p;
  const EdgeId e = p.edge_id();
  const auto& c = cuts[e];
  auto it = std::lower_bound(c.begin(), c.end(), p.offset());
  std::size_t k = static_cast<std::size_t>(it - c.begin());
  if (it != c.end() && *it == p.offset()) {
    return GraphPoint::vertex(cut_vertices[e][k]);
  }
  const EdgeId piece = pieces[e][k];
  const PieceOrigin& o = piece_origin[piece];
  Rational local = p.offset() - o.start;
  if (o.flipped) local = graph.length(piece) - local;
  return GraphPoint::on_edge(graph, piece, local);
}

GraphPoint Refinement::unmap_point(const MetricGraph& original, const GraphPoint& p) const {
  if (p.is_vertex()) {
    if (p.vertex_id() < original.num_vertices()) return p;
    for (EdgeId e = 0; e < original.num_edges(); ++e) {
      const auto& cv = cut_vertices[e];
      auto it = std::find(cv.begin(), cv.end(), p.vertex_id());
      if (it != cv.end()) return GraphPoint::on_edge(original, e, cuts[e][it - cv.begin()]);
    }
    throw ValidationError("point does not belong to the refinement");
  }
  const PieceOrigin& o = piece_origin[p.edge_id()];
  Rational local = o.flipped ? graph.length(p.edge_id()) - p.offset() : p.offset();
  return GraphPoint::on_edge(original, o.edge, o.start + local);
}

MetricGraph rescale(const MetricGraph& g, const Rational& factor) {
  if (factor <= 0) throw ValidationError("rescale factor must be positive");
  std::vector<Rational> lengths = g.lengths();
  for (auto& l : lengths) l *= factor;
  return MetricGraph(g.model(), std::move(lengths), g.weights());
}

}  // namespace tropdiv
