#pragma once

#include <random>
#include <vector>

#include "tropdiv/divisor.hpp"
#include "tropdiv/families.hpp"
#include "tropdiv/graph.hpp"
#include "tropdiv/plfunction.hpp"

namespace support {

using namespace tropdiv;

inline Rational ratio(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Divisor random_vertex_divisor(std::mt19937_64& rng, int n, int degree) {
  std::vector<std::int64_t> chips(n, 0);
  // Spread |degree| + extra signed chips so negative entries occur.
  int extra = uniform(rng, 0, 3);
  for (int i = 0; i < extra; ++i) {
    int v = uniform(rng, 0, n - 1), w = uniform(rng, 0, n - 1);
    chips[v] += 1;
    chips[w] -= 1;
  }
  for (int i = 0; i < std::abs(degree); ++i) chips[uniform(rng, 0, n - 1)] += degree > 0 ? 1 : -1;
  return Divisor::from_vector(chips);
}

// A point on a random edge at offset k/den * length, or a random vertex.
inline GraphPoint random_point(std::mt19937_64& rng, const MetricGraph& g, int den = 4) {
  if (g.num_edges() == 0 || uniform(rng, 0, 2) == 0) return GraphPoint::vertex(uniform(rng, 0, g.num_vertices() - 1));
  EdgeId e = uniform(rng, 0, g.num_edges() - 1);
  return GraphPoint::on_edge(g, e, g.length(e) * ratio(uniform(rng, 1, den - 1), den));
}

inline Divisor random_metric_divisor(std::mt19937_64& rng, const MetricGraph& g, int degree, int den = 4) {
  Divisor d;
  int extra = uniform(rng, 0, 2);
  for (int i = 0; i < extra; ++i) {
    d.add(random_point(rng, g, den), 1);
    d.add(random_point(rng, g, den), -1);
  }
  for (int i = 0; i < std::abs(degree); ++i) d.add(random_point(rng, g, den), degree > 0 ? 1 : -1);
  return d;
}

// Linear interpolation of random vertex values (with an integer-slope kink
// where needed) plus a few random tents.
inline PLFunction random_pl(std::mt19937_64& rng, const MetricGraph& g, int den = 3) {
  std::vector<Rational> vv;
  for (int v = 0; v < g.num_vertices(); ++v) vv.push_back(ratio(uniform(rng, -6, 6), den));
  std::vector<std::vector<Knot>> interior(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Rational& fa = vv[g.model().edge(e).tail];
    const Rational& fb = vv[g.model().edge(e).head];
    Rational len = g.length(e);
    Rational avg = (fb - fa) / len;
    if (!is_integer(avg)) {
      Integer fl = floor_of(avg);
      bool up_first = uniform(rng, 0, 1) == 0;
      Rational first = up_first ? Rational(fl) + 1 : Rational(fl);
      Rational second = up_first ? Rational(fl) : Rational(fl) + 1;
      // first*p + second*(len - p) = fb - fa
      Rational p = (fb - fa - second * len) / (first - second);
      interior[e].push_back({p, fa + first * p});
    }
  }
  PLFunction f(g, vv, interior);
  int tents = uniform(rng, 0, 3);
  for (int t = 0; t < tents; ++t) {
    EdgeId e = uniform(rng, 0, g.num_edges() - 1);
    Rational len = g.length(e);
    Rational c = len * ratio(uniform(rng, 1, 7), 8);
    Rational w = len * ratio(1, 16);
    long s = uniform(rng, -2, 2);
    std::vector<std::vector<Knot>> tent(g.num_edges());
    tent[e] = {{c - w, 0}, {c, Rational(s) * w}, {c + w, 0}};
    f += PLFunction(g, std::vector<Rational>(g.num_vertices(), Rational(0)), tent);
  }
  return f;
}

}  // namespace support
