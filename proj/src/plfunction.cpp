#include "tropdiv/plfunction.hpp"

#include <algorithm>

#include "tropdiv/errors.hpp"

namespace tropdiv {

namespace {

Rational slope_of(const Knot& a, const Knot& b) { return (b.value - a.value) / (b.offset - a.offset); }

std::int64_t integer_slope(const Knot& a, const Knot& b) {
  Rational s = slope_of(a, b);
  if (!is_integer(s)) throw ValidationError("PL function has non-integer slope " + to_string(s));
  return to_int64(s.get_num());
}

// Index of the piece [k, k+1] containing offset, preferring the piece to the
// right when offset is a knot.
std::size_t piece_index(const std::vector<Knot>& ks, const Rational& offset) {
  auto it = std::upper_bound(ks.begin(), ks.end(), offset,
                             [](const Rational& o, const Knot& k) { return o < k.offset; });
  std::size_t k = static_cast<std::size_t>(it - ks.begin());
  if (k == 0) return 0;
  return std::min(k - 1, ks.size() - 2);
}

Rational interpolate(const std::vector<Knot>& ks, const Rational& offset) {
  std::size_t k = piece_index(ks, offset);
  const Knot& a = ks[k];
  const Knot& b = ks[k + 1];
  return a.value + (b.value - a.value) * (offset - a.offset) / (b.offset - a.offset);
}

}  // namespace

PLFunction::PLFunction(const MetricGraph& g, std::vector<Rational> vertex_values,
                       std::vector<std::vector<Knot>> interior)
    : vertex_values_(std::move(vertex_values)) {
  if (static_cast<int>(vertex_values_.size()) != g.num_vertices()) throw ValidationError("PL function needs one value per vertex");
  if (!interior.empty() && static_cast<int>(interior.size()) != g.num_edges()) throw ValidationError("PL function needs one knot list per edge");
  knots_.resize(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto& ks = knots_[e];
    ks.push_back({Rational(0), vertex_values_[g.model().edge(e).tail]});
    if (!interior.empty()) {
      for (auto& k : interior[e]) {
        if (k.offset <= ks.back().offset || k.offset >= g.length(e)) {
          throw ValidationError("PL function knots on edge '" + g.model().edge_id(e) + "' are not strictly inside and increasing");
        }
        ks.push_back(k);
      }
    }
    ks.push_back({g.length(e), vertex_values_[g.model().edge(e).head]});
    for (std::size_t k = 0; k + 1 < ks.size(); ++k) integer_slope(ks[k], ks[k + 1]);
  }
}

PLFunction PLFunction::constant(const MetricGraph& g, const Rational& c) {
  return PLFunction(g, std::vector<Rational>(g.num_vertices(), c));
}

Rational PLFunction::value_on_edge(EdgeId e, const Rational& offset) const { return interpolate(knots_[e], offset); }

Rational PLFunction::value_at(const GraphPoint& p) const {
  if (p.is_vertex()) return vertex_values_[p.vertex_id()];
  return value_on_edge(p.edge_id(), p.offset());
}

std::int64_t PLFunction::slope_from_vertex(const MetricGraph& g, VertexId v, EdgeId e) const {
  const auto& ks = knots_[e];
  if (g.model().edge(e).tail == v) return integer_slope(ks[0], ks[1]);
  return -integer_slope(ks[ks.size() - 2], ks[ks.size() - 1]);
}

std::int64_t PLFunction::slope_inside(EdgeId e, const Rational& offset, bool toward_head) const {
  const auto& ks = knots_[e];
  if (toward_head) {
    std::size_t k = piece_index(ks, offset);
    return integer_slope(ks[k], ks[k + 1]);
  }
  auto it = std::lower_bound(ks.begin(), ks.end(), offset,
                             [](const Knot& k, const Rational& o) { return k.offset < o; });
  std::size_t k = static_cast<std::size_t>(it - ks.begin());
  return -integer_slope(ks[k - 1], ks[k]);
}

std::int64_t PLFunction::ord_at(const MetricGraph& g, const GraphPoint& p) const {
  if (p.is_vertex()) {
    std::int64_t s = 0;
    for (EdgeId e : g.model().incident(p.vertex_id())) s -= slope_from_vertex(g, p.vertex_id(), e);
    return s;
  }
  return -slope_inside(p.edge_id(), p.offset(), true) - slope_inside(p.edge_id(), p.offset(), false);
}

Divisor PLFunction::div(const MetricGraph& g) const {
  Divisor d;
  for (VertexId v = 0; v < g.num_vertices(); ++v) d.add(GraphPoint::vertex(v), ord_at(g, GraphPoint::vertex(v)));
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto& ks = knots_[e];
    for (std::size_t k = 1; k + 1 < ks.size(); ++k) {
      std::int64_t n = integer_slope(ks[k - 1], ks[k]) - integer_slope(ks[k], ks[k + 1]);
      d.add(GraphPoint::on_edge(g, e, ks[k].offset), n);
    }
  }
  return d;
}

void PLFunction::combine(const PLFunction& o, int sign) {
  if (o.knots_.size() != knots_.size() || o.vertex_values_.size() != vertex_values_.size()) {
    throw ValidationError("PL functions live on different graphs");
  }
  for (std::size_t v = 0; v < vertex_values_.size(); ++v) {
    vertex_values_[v] += sign > 0 ? o.vertex_values_[v] : -o.vertex_values_[v];
  }
  for (std::size_t e = 0; e < knots_.size(); ++e) {
    const auto& a = knots_[e];
    const auto& b = o.knots_[e];
    std::vector<Rational> offs;
    offs.reserve(a.size() + b.size());
    for (const auto& k : a) offs.push_back(k.offset);
    for (const auto& k : b) offs.push_back(k.offset);
    std::sort(offs.begin(), offs.end());
    offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
    std::vector<Knot> merged;
    merged.reserve(offs.size());
    for (const auto& x : offs) {
      Rational vb = interpolate(b, x);
      merged.push_back({x, interpolate(a, x) + (sign > 0 ? vb : Rational(-vb))});
    }
    knots_[e] = std::move(merged);
  }
  simplify();
}

PLFunction& PLFunction::operator+=(const PLFunction& o) {
  if (knots_.empty() && vertex_values_.empty()) return *this = o;
  combine(o, +1);
  return *this;
}

PLFunction& PLFunction::operator-=(const PLFunction& o) {
  combine(o, -1);
  return *this;
}

PLFunction PLFunction::scaled(std::int64_t k) const {
  PLFunction r = *this;
  Rational kk(static_cast<long>(k));
  for (auto& v : r.vertex_values_) v *= kk;
  for (auto& ks : r.knots_)
    for (auto& kn : ks) kn.value *= kk;
  if (k == 0) r.simplify();
  return r;
}

PLFunction PLFunction::shifted(const Rational& c) const {
  PLFunction r = *this;
  for (auto& v : r.vertex_values_) v += c;
  for (auto& ks : r.knots_)
    for (auto& kn : ks) kn.value += c;
  return r;
}

void PLFunction::simplify() {
  for (auto& ks : knots_) {
    std::vector<Knot> out;
    out.reserve(ks.size());
    out.push_back(ks.front());
    for (std::size_t k = 1; k + 1 < ks.size(); ++k) {
      if (slope_of(out.back(), ks[k]) != slope_of(ks[k], ks[k + 1])) out.push_back(ks[k]);
    }
    out.push_back(ks.back());
    ks = std::move(out);
  }
}

bool PLFunction::same_function(const PLFunction& o) const {
  PLFunction d = *this;
  d -= o;
  for (const auto& v : d.vertex_values_)
    if (v != 0) return false;
  for (const auto& ks : d.knots_)
    for (const auto& k : ks)
      if (k.value != 0) return false;
  return true;
}

std::vector<Rational> common_breakpoints(std::span<const PLFunction> fs, std::span<const Rational> shifts, EdgeId e) {
  std::vector<Rational> offs;
  for (const auto& f : fs)
    for (const auto& k : f.knots(e)) offs.push_back(k.offset);
  std::sort(offs.begin(), offs.end());
  offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
  std::vector<Rational> crossings;
  const std::size_t n = fs.size();
  std::vector<Rational> va(n), vb(n);
  for (std::size_t k = 0; k + 1 < offs.size(); ++k) {
    const Rational& a = offs[k];
    const Rational& b = offs[k + 1];
    for (std::size_t i = 0; i < n; ++i) {
      va[i] = fs[i].value_on_edge(e, a) + shifts[i];
      vb[i] = fs[i].value_on_edge(e, b) + shifts[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational da = va[i] - va[j];
        Rational db = vb[i] - vb[j];
        if ((da < 0 && db > 0) || (da > 0 && db < 0)) crossings.push_back(a + (b - a) * da / (da - db));
      }
    }
  }
  offs.insert(offs.end(), crossings.begin(), crossings.end());
  std::sort(offs.begin(), offs.end());
  offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
  return offs;
}

PLFunction tropical_min(const MetricGraph& g, std::span<const PLFunction> fs, std::span<const Rational> shifts) {
  if (fs.empty() || fs.size() != shifts.size()) throw ValidationError("tropical_min needs matching non-empty function and shift lists");
  std::vector<Rational> vv(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    vv[v] = fs[0].vertex_value(v) + shifts[0];
    for (std::size_t i = 1; i < fs.size(); ++i) vv[v] = std::min<Rational>(vv[v], fs[i].vertex_value(v) + shifts[i]);
  }
  std::vector<std::vector<Knot>> interior(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto offs = common_breakpoints(fs, shifts, e);
    for (std::size_t k = 1; k + 1 < offs.size(); ++k) {
      Rational m = fs[0].value_on_edge(e, offs[k]) + shifts[0];
      for (std::size_t i = 1; i < fs.size(); ++i) m = std::min<Rational>(m, fs[i].value_on_edge(e, offs[k]) + shifts[i]);
      interior[e].push_back({offs[k], m});
    }
  }
  PLFunction r(g, std::move(vv), std::move(interior));
  r.simplify();
  return r;
}

PLFunction from_potential(const MetricGraph& unit_graph, std::span<const std::int64_t> f) {
  std::vector<Rational> vv;
  for (auto x : f) vv.emplace_back(static_cast<long>(x));
  return PLFunction(unit_graph, std::move(vv));
}

std::vector<std::int64_t> principal_divisor(const FiniteGraph& g, std::span<const std::int64_t> f) {
  std::vector<std::int64_t> d(g.num_vertices(), 0);
  for (const Edge& e : g.edges()) {
    d[e.tail] += f[e.tail] - f[e.head];
    d[e.head] += f[e.head] - f[e.tail];
  }
  return d;
}

}  // namespace tropdiv
