#include "doctest.h"

#include <random>

#include "support.hpp"
#include "tropdiv/chip_firing.hpp"
#include "tropdiv/errors.hpp"
#include "tropdiv/families.hpp"

using namespace tropdiv;

namespace {

Divisor vd(std::vector<std::int64_t> c) { return Divisor::from_vector(c); }

// Reducedness straight from the definition: effective off q and every nonempty
// set avoiding q has a vertex that goes negative when the set fires.
bool reduced_by_subsets(const FiniteGraph& g, const Divisor& d, VertexId q) {
  auto chips = d.to_vector(g.num_vertices());
  const int n = g.num_vertices();
  for (VertexId v = 0; v < n; ++v)
    if (v != q && chips[v] < 0) return false;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (mask & (1u << q)) continue;
    bool someone_short = false;
    for (VertexId v = 0; v < n && !someone_short; ++v) {
      if (!(mask & (1u << v))) continue;
      int out = 0;
      for (EdgeId e : g.incident(v)) out += (mask & (1u << g.other_end(e, v))) ? 0 : 1;
      if (chips[v] < out) someone_short = true;
    }
    if (!someone_short) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("firing every vertex changes nothing") {
  FiniteGraph g = families::complete(4);
  Divisor d = vd({1, -2, 0, 3});
  std::vector<VertexId> all{0, 1, 2, 3};
  CHECK(chip_fire(g, d, all) == d);
}

TEST_CASE("worked burning example") {
  FiniteGraph g = families::dhar_example();
  Divisor d = vd({1, 1, 0, 0, 0});
  std::vector<VertexId> first{0, 1};
  Divisor step1 = chip_fire(g, d, first);
  CHECK(step1 == vd({0, 0, 2, 0, 0}));
  std::vector<VertexId> second{0, 1, 2};
  CHECK(chip_fire(g, step1, second) == vd({0, 0, 0, 1, 1}));

  CHECK(dhar_unburnt(g, d, 4) == std::vector<VertexId>{0, 1});
  CHECK(dhar_unburnt(g, step1, 4) == std::vector<VertexId>{0, 1, 2});

  FiniteReduction r = reduce(g, d, 4);
  CHECK(r.reduced == vd({0, 0, 0, 1, 1}));
  REQUIRE(r.trace.size() == 2);
  CHECK(r.trace[0] == std::vector<VertexId>{0, 1});
  CHECK(r.trace[1] == std::vector<VertexId>{0, 1, 2});
  CHECK(is_equivalent(g, d, vd({0, 0, 0, 1, 1})));
}

TEST_CASE("burning requires nonnegative chips away from the base") {
  FiniteGraph g = families::dhar_example();
  CHECK_THROWS_WITH_AS(dhar_unburnt(g, vd({0, -1, 0, 0, 0}), 4), doctest::Contains("v2"), PreconditionError);
  CHECK(dhar_unburnt(g, vd({0, 0, 0, 0, -3}), 4).empty());
}

TEST_CASE("reduced divisors burn completely") {
  FiniteGraph g = families::complete(4);
  CHECK(dhar_unburnt(g, vd({3, 0, 0, 0}), 0).empty());
  CHECK(reduce(g, Divisor{}, 2).reduced.is_zero());
}

TEST_CASE("reduction properties on random graphs") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = support::uniform(rng, 1, 7);
    FiniteGraph g = families::random_connected(rng, n, support::uniform(rng, 0, 6));
    Divisor d = support::random_vertex_divisor(rng, n, support::uniform(rng, -3, 6));
    VertexId q = support::uniform(rng, 0, n - 1);
    FiniteReduction r = reduce(g, d, q);
    CHECK(reduced_by_subsets(g, r.reduced, q));
    CHECK(is_reduced(g, r.reduced, q));
    CHECK(Divisor::from_vector(principal_divisor(g, r.witness)) == r.reduced - d);
    CHECK(reduce(g, r.reduced, q).reduced == r.reduced);

    std::vector<std::int64_t> f(n);
    for (auto& x : f) x = support::uniform(rng, -3, 3);
    Divisor moved = d + Divisor::from_vector(principal_divisor(g, f));
    CHECK(reduce(g, moved, q).reduced == r.reduced);

    auto chips = d.to_vector(n);
    reduce_in_place(g, chips, q);
    CHECK(Divisor::from_vector(chips) == r.reduced);

    CHECK(is_equivalent(g, d, moved));
    if (n > 1) {
      Divisor shifted = d;
      shifted.add(GraphPoint::vertex(0), 1);
      shifted.add(GraphPoint::vertex(n - 1), -1);
      CHECK(is_equivalent(g, d, shifted) == is_equivalent(g, Divisor::point(GraphPoint::vertex(0)), Divisor::point(GraphPoint::vertex(n - 1))));
    }
  }
}

TEST_CASE("equivalence decisions") {
  FiniteGraph c = families::cycle(2);
  CHECK(is_equivalent(c, vd({1, 0}), vd({1, 0})));
  CHECK(!is_equivalent(c, vd({1, 0}), vd({0, 1})));
  CHECK(!is_equivalent(c, vd({1, 0}), vd({2, 0})));
  FiniteGraph tree = families::path(4);
  CHECK(is_equivalent(tree, vd({1, 0, 0, 0}), vd({0, 0, 0, 1})));
}
