#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tropdiv/graph.hpp"

namespace tropdiv {

// Finitely supported integer chip configuration. The host graph is passed to
// the operations that need it rather than stored.
class Divisor {
 public:
  using Map = std::map<GraphPoint, std::int64_t>;

  Divisor() = default;
  static Divisor from_vector(std::span<const std::int64_t> chips);
  static Divisor point(const GraphPoint& p, std::int64_t n = 1);

  // Throws DomainError if some chip lies inside an edge.
  std::vector<std::int64_t> to_vector(int num_vertices) const;

  std::int64_t operator[](const GraphPoint& p) const;
  std::int64_t at_vertex(VertexId v) const { return (*this)[GraphPoint::vertex(v)]; }
  void add(const GraphPoint& p, std::int64_t n);

  std::int64_t degree() const;
  bool is_effective() const;
  bool is_vertex_supported() const;
  bool is_zero() const { return chips_.empty(); }
  std::vector<GraphPoint> support() const;
  const Map& chips() const { return chips_; }

  Divisor& operator+=(const Divisor& o);
  Divisor& operator-=(const Divisor& o);
  Divisor& operator*=(std::int64_t k);
  friend Divisor operator+(Divisor a, const Divisor& b) { return a += b; }
  friend Divisor operator-(Divisor a, const Divisor& b) { return a -= b; }
  friend Divisor operator*(std::int64_t k, Divisor a) { return a *= k; }
  Divisor operator-() const { return Divisor{} - *this; }

  friend bool operator==(const Divisor& a, const Divisor& b) { return a.chips_ == b.chips_; }
  friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }
  friend bool operator<(const Divisor& a, const Divisor& b) { return a.chips_ < b.chips_; }

 private:
  Map chips_;
};

Divisor canonical_divisor(const FiniteGraph& g);
Divisor canonical_divisor(const MetricGraph& g);
Divisor weighted_canonical(const MetricGraph& g);

// "v1:2,e1@1/3:-1"; the zero divisor prints as "0".
std::string format_divisor(const FiniteGraph& g, const Divisor& d);
Divisor parse_divisor(const MetricGraph& g, std::string_view text);
Divisor parse_divisor(const FiniteGraph& g, std::string_view text);

// Rejects chips on points that are not on g.
void check_divisor(const MetricGraph& g, const Divisor& d);

}  // namespace tropdiv
