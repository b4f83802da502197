#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tropdiv/rational.hpp"

namespace tropdiv {

using VertexId = int;
using EdgeId = int;

// tail < head always holds after construction.
struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
};

// Connected loopless multigraph. Edge endpoints are normalized so the tail has
// the lower vertex index; parallel edges keep their input order.
class FiniteGraph {
 public:
  FiniteGraph() = default;
  FiniteGraph(std::vector<std::string> vertex_ids, std::vector<std::string> edge_ids,
              std::vector<std::pair<VertexId, VertexId>> ends);

  // Vertices v1..vn, edges e1..em.
  static FiniteGraph from_edges(int n, const std::vector<std::pair<VertexId, VertexId>>& ends);

  int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const EdgeId> incident(VertexId v) const { return incidence_[v]; }
  int valence(VertexId v) const { return static_cast<int>(incidence_[v].size()); }
  VertexId other_end(EdgeId e, VertexId v) const {
    return edges_[e].tail == v ? edges_[e].head : edges_[e].tail;
  }
  // Number of edges joining u and v.
  int multiplicity(VertexId u, VertexId v) const;

  const std::string& vertex_id(VertexId v) const { return vertex_ids_[v]; }
  const std::string& edge_id(EdgeId e) const { return edge_ids_[e]; }
  std::optional<VertexId> find_vertex(std::string_view id) const;
  std::optional<EdgeId> find_edge(std::string_view id) const;

  int genus() const { return num_edges() - num_vertices() + 1; }

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<std::string> edge_ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, EdgeId> edge_index_;
};

class MetricGraph {
 public:
  MetricGraph() = default;
  MetricGraph(FiniteGraph model, std::vector<Rational> lengths, std::vector<int> weights = {});

  static MetricGraph unit(FiniteGraph model);

  const FiniteGraph& model() const { return model_; }
  const Rational& length(EdgeId e) const { return lengths_[e]; }
  const std::vector<Rational>& lengths() const { return lengths_; }
  int weight(VertexId v) const { return weights_[v]; }
  const std::vector<int>& weights() const { return weights_; }
  int total_weight() const;

  int num_vertices() const { return model_.num_vertices(); }
  int num_edges() const { return model_.num_edges(); }
  int genus() const { return model_.genus(); }
  int weighted_genus() const { return genus() + total_weight(); }
  Rational total_length() const;

 private:
  FiniteGraph model_;
  std::vector<Rational> lengths_;
  std::vector<int> weights_;
};

// A vertex, or a point strictly inside an edge at a rational offset from the
// edge's tail.
class GraphPoint {
 public:
  GraphPoint() = default;
  static GraphPoint vertex(VertexId v);
  // Offsets 0 and length(e) become the corresponding vertex.
  static GraphPoint on_edge(const MetricGraph& g, EdgeId e, const Rational& offset);

  bool is_vertex() const { return edge_ < 0; }
  VertexId vertex_id() const { return vertex_; }
  EdgeId edge_id() const { return edge_; }
  const Rational& offset() const { return offset_; }

  friend bool operator==(const GraphPoint& a, const GraphPoint& b) {
    return a.vertex_ == b.vertex_ && a.edge_ == b.edge_ && a.offset_ == b.offset_;
  }
  friend bool operator!=(const GraphPoint& a, const GraphPoint& b) { return !(a == b); }
  // Vertices first by index, then edge points by (edge, offset).
  friend bool operator<(const GraphPoint& a, const GraphPoint& b);

 private:
  VertexId vertex_ = -1;
  EdgeId edge_ = -1;
  Rational offset_;
};

// "v1" or "e3@1/2".
std::string point_name(const FiniteGraph& g, const GraphPoint& p);
GraphPoint parse_point(const MetricGraph& g, std::string_view text);

std::vector<std::vector<std::int64_t>> laplacian(const FiniteGraph& g);

int genus(const FiniteGraph& g);
int genus(const MetricGraph& g);

struct Refinement {
  MetricGraph graph;
  // For each original edge, the new edges covering it from tail to head and
  // the interior cut offsets (strictly increasing).
  std::vector<std::vector<EdgeId>> pieces;
  std::vector<std::vector<Rational>> cuts;
  std::vector<std::vector<VertexId>> cut_vertices;
  // Per refined edge: original edge, offset of the piece start, and whether
  // the refined edge runs against the original direction.
  struct PieceOrigin {
    EdgeId edge;
    Rational start;
    bool flipped;
  };
  std::vector<PieceOrigin> piece_origin;
  // Original vertices keep their indices; new vertices are appended.
  GraphPoint map_point(const MetricGraph& original, const GraphPoint& p) const;
  // Inverse of map_point for points of the refined graph.
  GraphPoint unmap_point(const MetricGraph& original, const GraphPoint& p) const;
};

// New vertices are named "<edge>@<offset>", new edges "<edge>.<k>".
Refinement refine(const MetricGraph& g, std::span<const GraphPoint> points);

MetricGraph rescale(const MetricGraph& g, const Rational& factor);

}  // namespace tropdiv
