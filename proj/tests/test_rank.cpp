#include "doctest.h"

#include <functional>
#include <random>

#include "support.hpp"
#include "tropdiv/chip_firing.hpp"
#include "tropdiv/families.hpp"
#include "tropdiv/metric_reduce.hpp"
#include "tropdiv/rank.hpp"

using namespace tropdiv;
using support::ratio;

namespace {

// Rank straight from the definition: the first degree k at which some
// effective vertex divisor E of degree k leaves D - E non-effective.
int rank_by_definition(const FiniteGraph& g, const Divisor& d) {
  if (!equivalent_to_effective(g, d)) return -1;
  for (int k = 1;; ++k) {
    bool all = true;
    std::vector<std::int64_t> e(g.num_vertices(), 0);
    std::function<void(int, int)> rec = [&](int v, int left) {
      if (!all) return;
      if (v == g.num_vertices() - 1) {
        e[v] = left;
        if (!equivalent_to_effective(g, d - Divisor::from_vector(e))) all = false;
        return;
      }
      for (int c = 0; c <= left; ++c) {
        e[v] = c;
        rec(v + 1, left - c);
      }
      e[v] = 0;
    };
    rec(0, k);
    if (!all) return k - 1;
  }
}

// Unit subdivision of g at lattice 1/n, with d carried over.
std::pair<FiniteGraph, Divisor> lattice_model(const MetricGraph& g, const Divisor& d, long n) {
  std::vector<GraphPoint> cuts;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    Rational len = g.length(e);
    for (long k = 1; Rational(k, n) < len; ++k) cuts.push_back(GraphPoint::on_edge(g, e, Rational(k, n)));
  }
  Refinement r = refine(g, cuts);
  for (EdgeId e = 0; e < r.graph.num_edges(); ++e) REQUIRE(r.graph.length(e) == Rational(1, n));
  Divisor mapped;
  for (const auto& [p, c] : d.chips()) mapped.add(r.map_point(g, p), c);
  return {r.graph.model(), mapped};
}

}  // namespace

TEST_CASE("basic finite ranks") {
  FiniteGraph k4 = families::complete(4);
  CHECK(rank(k4, Divisor::from_vector(std::vector<std::int64_t>{1, 1, 0, 0})).rank == 0);
  CHECK(rank(k4, Divisor::from_vector(std::vector<std::int64_t>{-1, 0, 0, 0})).rank == -1);
  CHECK(rank(k4, Divisor{}).rank == 0);
  FiniteGraph dh = families::dhar_example();
  auto r = rank(dh, Divisor::from_vector(std::vector<std::int64_t>{0, 1, 1, 0, 0}), 100);
  CHECK(r.rank >= 0);
  CHECK(verify_rank_certificate(dh, Divisor::from_vector(std::vector<std::int64_t>{0, 1, 1, 0, 0}), r));
  // Trees: every effective divisor has rank equal to its degree.
  FiniteGraph t = FiniteGraph::from_edges(4, {{0, 1}, {1, 2}, {1, 3}});
  CHECK(rank(t, Divisor::from_vector(std::vector<std::int64_t>{0, 0, 3, 0})).rank == 3);
}

TEST_CASE("finite rank agrees with the definition") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 80; ++trial) {
    FiniteGraph g = families::random_connected(rng, support::uniform(rng, 1, 5), support::uniform(rng, 0, 3));
    int deg = support::uniform(rng, -1, 2 * g.genus() + 1);
    Divisor d = support::random_vertex_divisor(rng, g.num_vertices(), deg);
    auto r = rank(g, d, 50);
    CHECK(r.rank == rank_by_definition(g, d));
    CHECK(verify_rank_certificate(g, d, r));
  }
}

TEST_CASE("metric ranks of named examples") {
  MetricGraph c = families::circle();
  for (int k = 1; k <= 4; ++k) {
    Divisor d;
    for (int i = 0; i < k; ++i) d.add(GraphPoint::on_edge(c, i % 2, ratio(1 + i, 11)), 1);
    CHECK(rank(c, d).rank == k - 1);
  }
  MetricGraph hyp = MetricGraph::unit(families::hyperelliptic_genus3());
  Divisor left = Divisor::from_vector(std::vector<std::int64_t>{1, 1, 0, 0});
  auto r = rank(hyp, left, RankOptions{.max_witnesses = 20});
  CHECK(r.rank == 1);
  CHECK(verify_rank_certificate(hyp, left, r));
  for (int g = 2; g <= 5; ++g) {
    MetricGraph b = MetricGraph::unit(families::banana(g));
    Divisor d;
    d.add(GraphPoint::vertex(*b.model().find_vertex("Q")), g - 1);
    d.add(GraphPoint::vertex(*b.model().find_vertex("P")), -1);
    CHECK(rank(b, d).rank == -1);
  }
}

TEST_CASE("metric rank matches finite rank on the lattice subdivision") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    FiniteGraph model = families::random_connected(rng, support::uniform(rng, 2, 4), support::uniform(rng, 0, 2));
    MetricGraph g = families::random_lengths(rng, model, 3, 2);
    int deg = support::uniform(rng, 0, 2 * g.genus());
    Divisor d = support::random_metric_divisor(rng, g, deg, 2);
    auto [fine, fd] = lattice_model(g, d, 4);
    CAPTURE(format_divisor(g.model(), d));
    CHECK(rank(g, d).rank == rank(fine, fd).rank);
  }
}

TEST_CASE("finite and metric engines agree on unit graphs") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    FiniteGraph g = families::random_connected(rng, support::uniform(rng, 2, 5), support::uniform(rng, 0, 3));
    Divisor d = support::random_vertex_divisor(rng, g.num_vertices(), support::uniform(rng, -1, 2 * g.genus()));
    CHECK(rank(g, d).rank == rank(MetricGraph::unit(g), d).rank);
  }
}

TEST_CASE("rational arithmetic gives the same ranks") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    FiniteGraph model = families::random_connected(rng, support::uniform(rng, 2, 4), support::uniform(rng, 0, 2));
    MetricGraph g = families::random_lengths(rng, model, 4, 3);
    Divisor d = support::random_metric_divisor(rng, g, support::uniform(rng, 0, 2 * g.genus()), 3);
    RankOptions ro;
    ro.arithmetic = Arithmetic::rational;
    CHECK(rank(g, d).rank == rank(g, d, ro).rank);
  }
}

TEST_CASE("Riemann-Roch, Clifford, monotonicity, superadditivity, class invariance") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    FiniteGraph model = families::random_connected(rng, support::uniform(rng, 2, 5), support::uniform(rng, 0, 3));
    MetricGraph g = families::random_lengths(rng, model, 3, 2);
    int deg = support::uniform(rng, -3, 2 * g.genus() + 2);
    Divisor d = support::random_metric_divisor(rng, g, deg, 2);
    CAPTURE(format_divisor(g.model(), d));
    auto rr = riemann_roch_check(g, d);
    CHECK(rr.holds);
    CHECK(clifford_check(g, d).holds);
    int r = rr.rank_d;
    GraphPoint p = support::random_point(rng, g, 2);
    Divisor dp = d;
    dp.add(p, 1);
    int rp = rank(g, dp).rank;
    CHECK(r <= rp);
    CHECK(rp <= r + 1);
    Divisor e = support::random_metric_divisor(rng, g, support::uniform(rng, 0, 2), 2);
    int re = rank(g, e).rank;
    if (r >= 0 && re >= 0) CHECK(rank(g, d + e).rank >= r + re);
    PLFunction f = support::random_pl(rng, g, 2);
    CHECK(rank(g, d + f.div(g)).rank == r);
  }
  std::mt19937_64 frng(13);
  for (int trial = 0; trial < 40; ++trial) {
    FiniteGraph g = families::random_connected(frng, support::uniform(frng, 1, 6), support::uniform(frng, 0, 4));
    Divisor d = support::random_vertex_divisor(frng, g.num_vertices(), support::uniform(frng, -3, 2 * g.genus() + 2));
    CHECK(riemann_roch_check(g, d).holds);
  }
}

TEST_CASE("rank at least") {
  FiniteGraph k4 = families::complete(4);
  Divisor three = Divisor::from_vector(std::vector<std::int64_t>{0, 1, 1, 1});
  CHECK(rank_at_least(k4, three, 1));
  CHECK(!rank_at_least(k4, three, 2));
  CHECK(rank_at_least(k4, Divisor::from_vector(std::vector<std::int64_t>{-1, 0, 0, 0}), -1));
  MetricGraph c = families::circle();
  CHECK(rank_at_least(c, Divisor::from_vector(std::vector<std::int64_t>{2, 0}), 1));
  CHECK(!rank_at_least(c, Divisor::from_vector(std::vector<std::int64_t>{2, 0}), 2));
}
