#include "tropdiv/spanning_trees.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "tropdiv/errors.hpp"
#include "tropdiv/linalg.hpp"

namespace tropdiv {

Integer spanning_tree_count_determinant(const FiniteGraph& g) {
  const int n = g.num_vertices();
  if (n == 1) return 1;
  auto lap = laplacian(g);
  IntegerMatrix m(n - 1, std::vector<Integer>(n - 1));
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) m[i - 1][j - 1] = static_cast<long>(lap[i][j]);
  return bareiss_determinant(std::move(m));
}

namespace {

// Union-find with an undo log, for include/exclude recursion.
class RollbackDsu {
 public:
  explicit RollbackDsu(int n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    log_.push_back(b);
    return true;
  }
  void undo() {
    int b = log_.back();
    log_.pop_back();
    size_[parent_[b]] -= size_[b];
    parent_[b] = b;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<int> log_;
};

struct Enumerator {
  const FiniteGraph& g;
  std::size_t limit;
  std::vector<SpanningTree>* out;
  RollbackDsu dsu;
  SpanningTree chosen;
  // Stop descending at this depth and record the prefix instead.
  int split_depth = -1;
  std::vector<SpanningTree>* prefixes = nullptr;

  Enumerator(const FiniteGraph& graph, std::size_t lim, std::vector<SpanningTree>* o)
      : g(graph), limit(lim), out(o), dsu(graph.num_vertices()) {}

  void emit() {
    if (out->size() >= limit) throw DomainError("too many spanning trees");
    out->push_back(chosen);
  }

  void run(EdgeId i) {
    const int need = g.num_vertices() - 1 - static_cast<int>(chosen.size());
    if (need == 0) {
      emit();
      return;
    }
    if (g.num_edges() - i < need) return;
    if (i == split_depth) {
      prefixes->push_back(chosen);
      return;
    }
    if (dsu.unite(g.edge(i).tail, g.edge(i).head)) {
      chosen.push_back(i);
      run(i + 1);
      chosen.pop_back();
      dsu.undo();
    }
    run(i + 1);
  }
};

}  // namespace

std::vector<SpanningTree> spanning_trees(const FiniteGraph& g, std::size_t limit, Execution exec) {
  std::vector<SpanningTree> out;
  const int threads = exec == Execution::parallel ? worker_count() : 1;
  if (threads == 1 || g.num_edges() < 8) {
    Enumerator en(g, limit, &out);
    en.run(0);
    return out;
  }
  // Prefixes: which of the first `depth` edges are chosen. Completing them
  // in prefix order reproduces the serial order.
  const int depth = std::min(g.num_edges() / 2, 10);
  std::vector<SpanningTree> prefixes;
  Enumerator top(g, limit, &out);
  top.split_depth = depth;
  top.prefixes = &prefixes;
  top.run(0);
  std::vector<std::vector<SpanningTree>> parts(prefixes.size());
  parallel_for(prefixes.size(), threads, [&](int, std::size_t k) {
    Enumerator en(g, limit, &parts[k]);
    for (EdgeId e : prefixes[k]) {
      en.dsu.unite(g.edge(e).tail, g.edge(e).head);
      en.chosen.push_back(e);
    }
    en.run(depth);
  });
  for (auto& p : parts) {
    if (out.size() + p.size() > limit) throw DomainError("too many spanning trees");
    out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  }
  // Trees completed before the split depth were emitted by `top` first;
  // restore lexicographic order overall.
  std::sort(out.begin(), out.end());
  return out;
}

Integer spanning_tree_count(const FiniteGraph& g, Execution exec) {
  Integer det = spanning_tree_count_determinant(g);
  Integer enumerated = static_cast<unsigned long>(spanning_trees(g, 10'000'000, exec).size());
  if (det != enumerated) throw ConsistencyError("spanning tree counts disagree");
  return det;
}

std::vector<EdgeId> complement_edges(const FiniteGraph& g, const SpanningTree& t) {
  std::vector<char> in(g.num_edges(), 0);
  for (EdgeId e : t) in[e] = 1;
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!in[e]) out.push_back(e);
  return out;
}

SpanningTree bfs_tree(const FiniteGraph& g) {
  std::vector<char> seen(g.num_vertices(), 0);
  SpanningTree t;
  std::deque<VertexId> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    for (EdgeId e : g.incident(v)) {
      VertexId w = g.other_end(e, v);
      if (seen[w]) continue;
      seen[w] = 1;
      t.push_back(e);
      q.push_back(w);
    }
  }
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace tropdiv
