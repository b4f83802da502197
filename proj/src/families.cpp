#include "tropdiv/families.hpp"

namespace tropdiv::families {

namespace {

FiniteGraph named(std::vector<std::string> vs, const std::vector<std::pair<VertexId, VertexId>>& ends) {
  std::vector<std::string> es;
  for (std::size_t i = 0; i < ends.size(); ++i) es.push_back("e" + std::to_string(i + 1));
  return FiniteGraph(std::move(vs), std::move(es), ends);
}

}  // namespace

FiniteGraph path(int n) {
  std::vector<std::pair<VertexId, VertexId>> ends;
  for (int i = 0; i + 1 < n; ++i) ends.push_back({i, i + 1});
  return FiniteGraph::from_edges(n, ends);
}

FiniteGraph cycle(int n) {
  std::vector<std::pair<VertexId, VertexId>> ends;
  for (int i = 0; i < n; ++i) ends.push_back({i, (i + 1) % n});
  return FiniteGraph::from_edges(n, ends);
}

FiniteGraph complete(int n) {
  std::vector<std::pair<VertexId, VertexId>> ends;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) ends.push_back({i, j});
  return FiniteGraph::from_edges(n, ends);
}

FiniteGraph complete_bipartite(int m, int n) {
  std::vector<std::pair<VertexId, VertexId>> ends;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) ends.push_back({i, m + j});
  return FiniteGraph::from_edges(m + n, ends);
}

FiniteGraph petersen() {
  std::vector<std::pair<VertexId, VertexId>> ends;
  for (int i = 0; i < 5; ++i) {
    ends.push_back({i, (i + 1) % 5});
    ends.push_back({i, i + 5});
    ends.push_back({5 + i, 5 + (i + 2) % 5});
  }
  return FiniteGraph::from_edges(10, ends);
}

FiniteGraph banana(int g) {
  std::vector<std::pair<VertexId, VertexId>> ends(g + 1, {0, 1});
  return named({"P", "Q"}, ends);
}

FiniteGraph theta() { return banana(2); }

FiniteGraph dhar_example() {
  return FiniteGraph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
}

FiniteGraph hyperelliptic_genus3() {
  return named({"a", "b", "c", "d"}, {{0, 1}, {0, 1}, {2, 3}, {2, 3}, {0, 2}, {1, 3}});
}

FiniteGraph single_vertex() { return FiniteGraph({"v1"}, {}, {}); }

MetricGraph circle(const Rational& length) {
  FiniteGraph g = named({"O", "A"}, {{0, 1}, {0, 1}});
  return MetricGraph(std::move(g), {length / 2, length / 2});
}

MetricGraph two_loops() {
  FiniteGraph g = named({"x", "a", "b"}, {{0, 1}, {0, 1}, {0, 2}, {0, 2}});
  Rational h(1, 2);
  return MetricGraph(std::move(g), {h, h, h, h});
}

FiniteGraph random_connected(std::mt19937_64& rng, int n, int extra) {
  std::vector<std::pair<VertexId, VertexId>> ends;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    ends.push_back({pick(rng), v});
  }
  if (n >= 2) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int k = 0; k < extra; ++k) {
      int a = pick(rng), b = pick(rng);
      while (b == a) b = pick(rng);
      ends.push_back({a, b});
    }
  }
  return FiniteGraph::from_edges(n, ends);
}

MetricGraph random_lengths(std::mt19937_64& rng, FiniteGraph g, int max_num, int den) {
  std::uniform_int_distribution<int> pick(1, max_num);
  std::vector<Rational> lengths;
  for (int e = 0; e < g.num_edges(); ++e) {
    Rational l(pick(rng), den);
    l.canonicalize();
    lengths.push_back(l);
  }
  return MetricGraph(std::move(g), std::move(lengths));
}

}  // namespace tropdiv::families
