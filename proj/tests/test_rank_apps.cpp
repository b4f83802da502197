#include "doctest.h"

#include <functional>
#include <random>

#include "support.hpp"
#include "tropdiv/chip_firing.hpp"
#include "tropdiv/errors.hpp"
#include "tropdiv/families.hpp"
#include "tropdiv/orientation.hpp"
#include "tropdiv/rank.hpp"
#include "tropdiv/rank_apps.hpp"

using namespace tropdiv;
using support::ratio;

namespace {

void each_effective(int n, int deg, const std::function<void(const Divisor&)>& f) {
  std::vector<std::int64_t> c(n, 0);
  std::function<void(int, int)> rec = [&](int v, int left) {
    if (v == n - 1) {
      c[v] = left;
      f(Divisor::from_vector(c));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      c[v] = k;
      rec(v + 1, left - k);
    }
  };
  if (n > 0) rec(0, deg);
}

// Nested brute force over divisors (not classes), effectivity by reduction.
int bn_rank_by_definition(const FiniteGraph& g, int r, int d) {
  std::vector<Divisor> w;
  each_effective(g.num_vertices(), d, [&](const Divisor& x) {
    if (rank(g, x).rank >= r) w.push_back(x);
  });
  if (w.empty()) return -1;
  for (int k = 0; r + k <= d; ++k) {
    bool ok = true;
    each_effective(g.num_vertices(), r + k, [&](const Divisor& e) {
      if (!ok) return;
      bool found = false;
      for (const auto& x : w) found = found || equivalent_to_effective(g, x - e);
      ok = found;
    });
    if (!ok) return k - 1;
  }
  return d - r;
}

}  // namespace

TEST_CASE("gonality of named graphs") {
  MetricGraph tree = MetricGraph::unit(FiniteGraph::from_edges(3, {{0, 1}, {1, 2}}));
  CHECK(gonality(tree, 3).gonality == 1);
  CHECK(gonality(families::circle(), 3).gonality == 2);
  auto k4 = gonality(MetricGraph::unit(families::complete(4)), 4);
  CHECK(k4.gonality == 3);
  CHECK(rank(MetricGraph::unit(families::complete(4)), k4.witness).rank >= 1);
  CHECK(gonality(MetricGraph::unit(families::hyperelliptic_genus3()), 4).gonality == 2);
}

TEST_CASE("gonality respects the Brill-Noether bound") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 12; ++trial) {
    FiniteGraph model = families::random_connected(rng, support::uniform(rng, 2, 5), support::uniform(rng, 0, 3));
    MetricGraph g = MetricGraph::unit(model);
    int bound = (g.genus() + 3) / 2;
    auto res = gonality(g, bound, 2);
    REQUIRE(res.gonality.has_value());
    CHECK(*res.gonality <= bound);
  }
}

TEST_CASE("Clifford index follows the displayed formula") {
  auto hyp = clifford_index(MetricGraph::unit(families::hyperelliptic_genus3()));
  REQUIRE(hyp.index.has_value());
  CHECK(*hyp.index == 0);
  CHECK(hyp.witness.degree() == 2);
  CHECK(hyp.witness_rank == 1);
  // No divisor has r(D) >= 1 and r(K - D) >= 1 on K4 or in genus 2.
  CHECK(!clifford_index(MetricGraph::unit(families::complete(4))).index.has_value());
  CHECK(!clifford_index(MetricGraph::unit(families::banana(2)), 2).index.has_value());
}

TEST_CASE("Brill-Noether rank") {
  FiniteGraph tree = FiniteGraph::from_edges(3, {{0, 1}, {1, 2}});
  CHECK(brill_noether_rank(tree, 0, 0) == 0);
  CHECK(brill_noether_rank(families::cycle(2), 1, 2) >= 0);
  CHECK(brill_noether_rank(families::banana(2), 1, 2) >= 0);
  CHECK(brill_noether_rank(families::complete(4), 1, 2) == -1);
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 15; ++trial) {
    FiniteGraph g = families::random_connected(rng, support::uniform(rng, 2, 4), support::uniform(rng, 0, 3));
    int r = support::uniform(rng, 0, 2);
    int d = support::uniform(rng, r, r + 3);
    CAPTURE(r);
    CAPTURE(d);
    int expect = bn_rank_by_definition(g, r, d);
    CHECK(brill_noether_rank(g, r, d, Execution::serial) == expect);
    CHECK(brill_noether_rank(g, r, d, Execution::parallel) == expect);
  }
}

TEST_CASE("weighted rank") {
  FiniteGraph pt = families::single_vertex();
  MetricGraph w(pt, {}, {1});
  Divisor two = Divisor::from_vector(std::vector<std::int64_t>{2});
  CHECK(weighted_rank(w, two) == 1);
  CHECK(weighted_rank_by_loops(w, two, 1) == 1);
  CHECK(weighted_rank_by_loops(w, two, ratio(3, 2)) == 1);
  MetricGraph c = families::circle();
  Divisor d = Divisor::from_vector(std::vector<std::int64_t>{2, 1});
  CHECK(weighted_rank(c, d) == rank(c, d).rank);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    FiniteGraph model = families::random_connected(rng, support::uniform(rng, 1, 4), support::uniform(rng, 0, 2));
    std::vector<int> weights;
    for (int v = 0; v < model.num_vertices(); ++v) weights.push_back(support::uniform(rng, 0, 1));
    MetricGraph base = families::random_lengths(rng, model, 2, 2);
    MetricGraph g(base.model(), base.lengths(), weights);
    Divisor dd = support::random_metric_divisor(rng, g, support::uniform(rng, -1, 2 * g.weighted_genus()), 2);
    int r = weighted_rank(g, dd);
    CHECK(r == weighted_rank_by_loops(g, dd, 1));
    CHECK(r == weighted_rank_by_loops(g, dd, ratio(5, 2)));
    CHECK(weighted_riemann_roch_check(g, dd).holds);
  }
}

TEST_CASE("Weierstrass points on banana graphs") {
  for (int g = 2; g <= 5; ++g) {
    MetricGraph b = MetricGraph::unit(families::banana(g));
    CHECK(!is_weierstrass_point(b, GraphPoint::vertex(0)));
    CHECK(!is_weierstrass_point(b, GraphPoint::vertex(1)));
    if (g >= 3) CHECK(is_weierstrass_point(b, GraphPoint::on_edge(b, 0, ratio(1, 2))));
  }
  CHECK_THROWS_AS(is_weierstrass_point(families::circle(), GraphPoint::vertex(0)), DomainError);
  CHECK(!weierstrass_points(MetricGraph::unit(families::complete(4)), 2).empty());
  CHECK(!weierstrass_points(MetricGraph::unit(families::banana(2)), 2).empty());
}

TEST_CASE("orientation rank law") {
  FiniteGraph tree = FiniteGraph::from_edges(4, {{0, 1}, {1, 2}, {1, 3}});
  auto t = orientation_rank_law(tree);
  CHECK(t.holds);
  CHECK(t.acyclic == t.orientations);
  auto c = orientation_rank_law(families::cycle(2));
  CHECK(c.holds);
  CHECK(c.orientations == 4);
  CHECK(c.acyclic == 2);
  auto k4 = orientation_rank_law(families::complete(4), Execution::serial);
  CHECK(k4.holds);
  CHECK(k4.orientations == 64);
  // Acyclic orientations of K4 are its 4! vertex orders.
  CHECK(k4.acyclic == 24);
  auto k4p = orientation_rank_law(families::complete(4), Execution::parallel);
  CHECK(k4p.acyclic == k4.acyclic);
  CHECK(k4p.holds);
}
