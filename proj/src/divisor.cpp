#include "tropdiv/divisor.hpp"

#include "tropdiv/errors.hpp"

namespace tropdiv {

Divisor Divisor::from_vector(std::span<const std::int64_t> chips) {
  Divisor d;
  for (std::size_t v = 0; v < chips.size(); ++v) d.add(GraphPoint::vertex(static_cast<VertexId>(v)), chips[v]);
  return d;
}

Divisor Divisor::point(const GraphPoint& p, std::int64_t n) {
  Divisor d;
  d.add(p, n);
  return d;
}

std::vector<std::int64_t> Divisor::to_vector(int num_vertices) const {
  std::vector<std::int64_t> out(num_vertices, 0);
  for (const auto& [p, n] : chips_) {
    if (!p.is_vertex() || p.vertex_id() >= num_vertices) throw DomainError("divisor is not supported on vertices");
    out[p.vertex_id()] = n;
  }
  return out;
}

std::int64_t Divisor::operator[](const GraphPoint& p) const {
  auto it = chips_.find(p);
  return it == chips_.end() ? 0 : it->second;
}

void Divisor::add(const GraphPoint& p, std::int64_t n) {
  if (n == 0) return;
  auto [it, inserted] = chips_.emplace(p, n);
  if (!inserted) {
    it->second += n;
    if (it->second == 0) chips_.erase(it);
  }
}

std::int64_t Divisor::degree() const {
  std::int64_t s = 0;
  for (const auto& [p, n] : chips_) s += n;
  return s;
}

bool Divisor::is_effective() const {
  for (const auto& [p, n] : chips_)
    if (n < 0) return false;
  return true;
}

bool Divisor::is_vertex_supported() const {
  for (const auto& [p, n] : chips_)
    if (!p.is_vertex()) return false;
  return true;
}

std::vector<GraphPoint> Divisor::support() const {
  std::vector<GraphPoint> out;
  for (const auto& [p, n] : chips_) out.push_back(p);
  return out;
}

Divisor& Divisor::operator+=(const Divisor& o) {
  for (const auto& [p, n] : o.chips_) add(p, n);
  return *this;
}

Divisor& Divisor::operator-=(const Divisor& o) {
  for (const auto& [p, n] : o.chips_) add(p, -n);
  return *this;
}

Divisor& Divisor::operator*=(std::int64_t k) {
  if (k == 0) {
    chips_.clear();
    return *this;
  }
  for (auto& [p, n] : chips_) n *= k;
  return *this;
}

Divisor canonical_divisor(const FiniteGraph& g) {
  Divisor k;
  for (VertexId v = 0; v < g.num_vertices(); ++v) k.add(GraphPoint::vertex(v), g.valence(v) - 2);
  return k;
}

Divisor canonical_divisor(const MetricGraph& g) { return canonical_divisor(g.model()); }

Divisor weighted_canonical(const MetricGraph& g) {
  Divisor k = canonical_divisor(g);
  for (VertexId v = 0; v < g.num_vertices(); ++v) k.add(GraphPoint::vertex(v), 2 * g.weight(v));
  return k;
}

std::string format_divisor(const FiniteGraph& g, const Divisor& d) {
  if (d.is_zero()) return "0";
  std::string out;
  for (const auto& [p, n] : d.chips()) {
    if (!out.empty()) out += ',';
    out += point_name(g, p) + ":" + std::to_string(n);
  }
  return out;
}

Divisor parse_divisor(const MetricGraph& g, std::string_view text) {
  Divisor d;
  if (text == "0" || text.empty()) return d;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    auto colon = item.rfind(':');
    if (colon == std::string_view::npos) throw ValidationError("divisor term '" + std::string(item) + "' lacks ':count'");
    GraphPoint p = parse_point(g, item.substr(0, colon));
    std::string count(item.substr(colon + 1));
    std::size_t used = 0;
    long long n = 0;
    try {
      n = std::stoll(count, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != count.size()) throw ValidationError("bad chip count '" + count + "'");
    d.add(p, n);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return d;
}

Divisor parse_divisor(const FiniteGraph& g, std::string_view text) {
  Divisor d = parse_divisor(MetricGraph::unit(g), text);
  if (!d.is_vertex_supported()) throw ValidationError("finite-graph divisor must be supported on vertices");
  return d;
}

void check_divisor(const MetricGraph& g, const Divisor& d) {
  for (const auto& [p, n] : d.chips()) {
    if (p.is_vertex()) {
      if (p.vertex_id() < 0 || p.vertex_id() >= g.num_vertices()) throw ValidationError("chip on unknown vertex");
    } else if (p.edge_id() >= g.num_edges() || p.offset() <= 0 || p.offset() >= g.length(p.edge_id())) {
      throw ValidationError("chip on invalid edge point");
    }
  }
}

}  // namespace tropdiv
