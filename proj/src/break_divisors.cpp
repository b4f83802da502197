#include "tropdiv/break_divisors.hpp"

#include <algorithm>
#include <numeric>

#include "tropdiv/errors.hpp"
#include "tropdiv/metric_reduce.hpp"
#include "tropdiv/rank.hpp"

namespace tropdiv {

BreakEnumeration enumerate_integral_break_divisors(const FiniteGraph& g, Execution exec) {
  BreakEnumeration out;
  out.trees = spanning_trees(g, 10'000'000, exec);
  const int threads = exec == Execution::parallel ? worker_count() : 1;
  std::vector<std::vector<Chips>> per_tree(out.trees.size());
  parallel_for(out.trees.size(), threads, [&](int, std::size_t t) {
    auto off = complement_edges(g, out.trees[t]);
    if (off.size() > 20) throw DomainError("genus too large for endpoint enumeration");
    std::vector<Chips> found;
    for (std::uint32_t mask = 0; mask < (1u << off.size()); ++mask) {
      Chips c(g.num_vertices(), 0);
      for (std::size_t j = 0; j < off.size(); ++j) ++c[(mask >> j & 1u) ? g.edge(off[j]).head : g.edge(off[j]).tail];
      found.push_back(std::move(c));
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    per_tree[t] = std::move(found);
  });
  std::map<Chips, std::vector<std::size_t>> merged;
  for (std::size_t t = 0; t < per_tree.size(); ++t)
    for (auto& c : per_tree[t]) merged[c].push_back(t);
  for (auto& [c, trees] : merged) out.divisors.push_back({Divisor::from_vector(c), std::move(trees)});
  return out;
}

BreakIndex::BreakIndex(const FiniteGraph& g, Execution exec) : g_(g), enumeration_(enumerate_integral_break_divisors(g, exec)) {
  std::map<Chips, std::size_t> count;
  for (std::size_t i = 0; i < enumeration_.divisors.size(); ++i) {
    Chips c = enumeration_.divisors[i].divisor.to_vector(g_.num_vertices());
    reduce_in_place(g_, c, 0);
    by_class_.emplace(c, i);
    max_multiplicity_ = std::max(max_multiplicity_, ++count[c]);
  }
}

const IntegralBreakDivisor& BreakIndex::representative(const Divisor& d) const {
  if (d.degree() != g_.genus()) throw DomainError("break representatives exist for degree-g divisors only");
  Chips c = d.to_vector(g_.num_vertices());
  reduce_in_place(g_, c, 0);
  auto it = by_class_.find(c);
  if (it == by_class_.end()) throw ConsistencyError("class has no integral break divisor");
  return enumeration_.divisors[it->second];
}

const IntegralBreakDivisor& break_representative(const BreakIndex& index, const Divisor& d) {
  return index.representative(d);
}

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

}  // namespace

UniversalReducednessReport universal_reducedness(const MetricGraph& g, const Divisor& d) {
  check_divisor(g, d);
  if (!d.is_effective() || d.degree() != g.genus()) {
    throw PreconditionError("universal reducedness is tested on effective divisors of degree g");
  }
  UniversalReducednessReport rep;
  auto support = d.support();
  std::vector<GraphPoint> interior;
  for (const auto& p : support)
    if (!p.is_vertex()) interior.push_back(p);
  Refinement ref = refine(g, interior);
  const FiniteGraph& m = ref.graph.model();
  std::vector<char> in_support(m.num_vertices(), 0);
  bool local_ok = true;
  for (const auto& p : support) {
    GraphPoint q = ref.map_point(g, p);
    in_support[q.vertex_id()] = 1;
    local_ok = local_ok && d[p] <= m.valence(q.vertex_id()) - 1;
  }
  // Open complement: vertices off the support with the edges between them,
  // plus one open interval per edge joining two support points.
  Dsu dsu(m.num_vertices());
  int kept_vertices = 0, components = 0;
  bool acyclic = true;
  for (VertexId v = 0; v < m.num_vertices(); ++v) kept_vertices += in_support[v] ? 0 : 1;
  components = kept_vertices;
  for (EdgeId e = 0; e < m.num_edges(); ++e) {
    VertexId a = m.edge(e).tail, b = m.edge(e).head;
    if (in_support[a] && in_support[b]) {
      ++components;
    } else if (!in_support[a] && !in_support[b]) {
      if (dsu.unite(a, b)) {
        --components;
      } else {
        acyclic = false;
      }
    }
  }
  rep.complement_contractible = components == 1 && acyclic;
  rep.topological = rep.complement_contractible && local_ok;

  rep.by_dhar = is_reduced_everywhere(g, d);
  return rep;
}

bool is_universally_reduced(const MetricGraph& g, const Divisor& d) {
  auto rep = universal_reducedness(g, d);
  if (rep.topological != rep.by_dhar) throw ConsistencyError("universal reducedness tests disagree");
  return rep.by_dhar;
}

SimpleBreakReport simple_break_rank_law(const MetricGraph& g, const Divisor& d) {
  if (!is_universally_reduced(g, d)) throw PreconditionError("divisor is not universally reduced");
  SimpleBreakReport rep;
  rep.rank_d = rank(g, d).rank;
  rep.rank_k_minus_d = rank(g, canonical_divisor(g) - d).rank;
  rep.holds = rep.rank_d == 0 && rep.rank_k_minus_d == -1;
  return rep;
}

}  // namespace tropdiv
