#include "tropdiv/chip_firing.hpp"

#include <algorithm>
#include <deque>

#include "tropdiv/errors.hpp"
#include "tropdiv/linalg.hpp"
#include "tropdiv/plfunction.hpp"

namespace tropdiv {

namespace {

// Subtract k times the indicator of `in_set` from f, updating chips.
void fire_set(const FiniteGraph& g, Chips& chips, std::vector<std::int64_t>* witness, const std::vector<char>& in_set,
              std::int64_t k) {
  for (const Edge& e : g.edges()) {
    if (in_set[e.tail] != in_set[e.head]) {
      VertexId from = in_set[e.tail] ? e.tail : e.head;
      VertexId to = in_set[e.tail] ? e.head : e.tail;
      chips[from] -= k;
      chips[to] += k;
    }
  }
  if (witness) {
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (in_set[v]) (*witness)[v] -= k;
  }
}

std::vector<char> unburnt_mask(const FiniteGraph& g, const Chips& chips, VertexId q) {
  const int n = g.num_vertices();
  std::vector<char> burnt(n, 0);
  std::vector<std::int64_t> burnt_edges(n, 0);
  std::deque<VertexId> queue{q};
  burnt[q] = 1;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : g.incident(v)) {
      VertexId w = g.other_end(e, v);
      if (burnt[w]) continue;
      if (++burnt_edges[w] > chips[w]) {
        burnt[w] = 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<char> unburnt(n);
  for (VertexId v = 0; v < n; ++v) unburnt[v] = !burnt[v];
  return unburnt;
}

void check_rd1(const FiniteGraph& g, const Chips& chips, VertexId q) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (v != q && chips[v] < 0) {
      throw PreconditionError("negative chips at " + g.vertex_id(v) + " (not the base point)");
    }
  }
}

// Makes chips nonnegative away from q by adding div(ceil(M * phi)), where phi
// solves the reduced Laplacian system L_q phi = 1 with phi(q) = 0. Each
// rounding loses less than one chip per edge, so M = max(val(v) - D(v))
// suffices.
void fix_negatives(const FiniteGraph& g, Chips& chips, std::vector<std::int64_t>* witness, VertexId q) {
  const int n = g.num_vertices();
  std::int64_t mult = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (v != q) mult = std::max<std::int64_t>(mult, g.valence(v) - chips[v]);
  }
  bool negative = false;
  for (VertexId v = 0; v < n; ++v) negative = negative || (v != q && chips[v] < 0);
  if (!negative) return;
  std::vector<int> var(n, -1);
  int nv = 0;
  for (VertexId v = 0; v < n; ++v)
    if (v != q) var[v] = nv++;
  RationalMatrix lap(nv, std::vector<Rational>(nv, 0));
  for (const Edge& e : g.edges()) {
    for (int side = 0; side < 2; ++side) {
      VertexId x = side ? e.head : e.tail;
      VertexId y = side ? e.tail : e.head;
      if (var[x] < 0) continue;
      lap[var[x]][var[x]] += 1;
      if (var[y] >= 0) lap[var[x]][var[y]] -= 1;
    }
  }
  auto phi = solve(std::move(lap), std::vector<Rational>(nv, Rational(1)));
  std::vector<std::int64_t> f(n, 0);
  Rational m(static_cast<long>(mult));
  for (VertexId v = 0; v < n; ++v)
    if (var[v] >= 0) f[v] = to_int64(ceil_of(m * phi[var[v]]));
  auto delta = principal_divisor(g, f);
  for (VertexId v = 0; v < n; ++v) chips[v] += delta[v];
  if (witness)
    for (VertexId v = 0; v < n; ++v) (*witness)[v] += f[v];
}

}  // namespace

Divisor chip_fire(const FiniteGraph& g, const Divisor& d, std::span<const VertexId> set) {
  Chips chips = d.to_vector(g.num_vertices());
  std::vector<char> in_set(g.num_vertices(), 0);
  for (VertexId v : set) in_set.at(v) = 1;
  fire_set(g, chips, nullptr, in_set, 1);
  return Divisor::from_vector(chips);
}

std::vector<VertexId> dhar_unburnt(const FiniteGraph& g, const Chips& chips, VertexId q) {
  check_rd1(g, chips, q);
  auto mask = unburnt_mask(g, chips, q);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (mask[v]) out.push_back(v);
  return out;
}

std::vector<VertexId> dhar_unburnt(const FiniteGraph& g, const Divisor& d, VertexId q) {
  return dhar_unburnt(g, d.to_vector(g.num_vertices()), q);
}

FiniteReduction reduce(const FiniteGraph& g, const Divisor& d, VertexId q) {
  FiniteReduction out;
  Chips chips = d.to_vector(g.num_vertices());
  out.witness.assign(g.num_vertices(), 0);
  fix_negatives(g, chips, &out.witness, q);
  while (true) {
    auto mask = unburnt_mask(g, chips, q);
    std::vector<VertexId> set;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (mask[v]) set.push_back(v);
    if (set.empty()) break;
    out.trace.push_back(set);
    fire_set(g, chips, &out.witness, mask, 1);
  }
  out.reduced = Divisor::from_vector(chips);
  return out;
}

void reduce_in_place(const FiniteGraph& g, Chips& chips, VertexId q) {
  fix_negatives(g, chips, nullptr, q);
  while (true) {
    auto mask = unburnt_mask(g, chips, q);
    if (std::none_of(mask.begin(), mask.end(), [](char c) { return c != 0; })) return;
    // Fire the unburnt set as often as every boundary vertex can afford.
    std::int64_t k = -1;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (!mask[v]) continue;
      std::int64_t out_edges = 0;
      for (EdgeId e : g.incident(v)) out_edges += mask[g.other_end(e, v)] ? 0 : 1;
      if (out_edges > 0) {
        std::int64_t afford = chips[v] / out_edges;
        k = k < 0 ? afford : std::min(k, afford);
      }
    }
    fire_set(g, chips, nullptr, mask, std::max<std::int64_t>(k, 1));
  }
}

bool is_reduced(const FiniteGraph& g, const Divisor& d, VertexId q) {
  Chips chips = d.to_vector(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (v != q && chips[v] < 0) return false;
  auto mask = unburnt_mask(g, chips, q);
  return std::none_of(mask.begin(), mask.end(), [](char c) { return c != 0; });
}

bool is_equivalent(const FiniteGraph& g, const Divisor& a, const Divisor& b) {
  if (a.degree() != b.degree()) return false;
  Chips chips = (a - b).to_vector(g.num_vertices());
  reduce_in_place(g, chips, 0);
  return std::all_of(chips.begin(), chips.end(), [](std::int64_t c) { return c == 0; });
}

bool equivalent_to_effective(const FiniteGraph& g, const Divisor& d) {
  Chips chips = d.to_vector(g.num_vertices());
  reduce_in_place(g, chips, 0);
  return chips[0] >= 0;
}

}  // namespace tropdiv
