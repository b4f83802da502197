#include "doctest.h"

#include <random>

#include "support.hpp"
#include "tropdiv/divisor.hpp"
#include "tropdiv/errors.hpp"
#include "tropdiv/families.hpp"
#include "tropdiv/plfunction.hpp"

using namespace tropdiv;
using support::ratio;

TEST_CASE("divisor arithmetic") {
  Divisor a = Divisor::from_vector(std::vector<std::int64_t>{1, 0, -2});
  Divisor b = Divisor::from_vector(std::vector<std::int64_t>{0, 3, 2});
  CHECK((a + b).degree() == a.degree() + b.degree());
  CHECK((a + b).at_vertex(2) == 0);
  CHECK((a - a).is_zero());
  CHECK(!a.is_effective());
  CHECK(b.is_effective());
  CHECK((3 * a).degree() == -3);
}

TEST_CASE("compact divisor text round-trips") {
  MetricGraph g = families::circle();
  Divisor d = parse_divisor(g, "O:2,e1@1/3:-1");
  CHECK(d.degree() == 1);
  CHECK(format_divisor(g.model(), d) == "O:2,e1@1/3:-1");
  CHECK(parse_divisor(g, "0").is_zero());
  CHECK_THROWS_AS(parse_divisor(g, "Z:1"), ValidationError);
  CHECK_THROWS_AS(parse_divisor(g, "O:x"), ValidationError);
}

TEST_CASE("ord of a linear function at an interior point is zero") {
  MetricGraph seg = MetricGraph::unit(families::path(2));
  PLFunction f(seg, {Rational(0), Rational(3)});
  CHECK(f.ord_at(seg, GraphPoint::on_edge(seg, 0, ratio(1, 2))) == 0);
  CHECK(f.div(seg).degree() == 0);
}

TEST_CASE("tree path function has divisor Q - P") {
  // Star with centre c and leaves; f has slope 1 from P to Q and 0 elsewhere.
  FiniteGraph tree = FiniteGraph::from_edges(4, {{0, 1}, {1, 2}, {1, 3}});
  MetricGraph g = MetricGraph::unit(tree);
  PLFunction f(g, {Rational(0), Rational(1), Rational(2), Rational(1)});
  Divisor d = f.div(g);
  CHECK(d.at_vertex(0) == -1);
  CHECK(d.at_vertex(2) == 1);
  CHECK(d.degree() == 0);
  CHECK(d.support().size() == 2);
}

TEST_CASE("circle function has divisor O + Q - (P + R)") {
  MetricGraph c = families::circle();
  Rational h = ratio(1, 8);
  // O, P, R, Q in order along e1 with |OP| = |RQ| = 1/8; f falls from O to P,
  // is flat from P to R, rises from R to Q and stays flat back to O.
  PLFunction f(c, {h, h}, {{{ratio(1, 8), 0}, {ratio(1, 4), 0}, {ratio(3, 8), h}}, {}});
  Divisor expected;
  expected.add(GraphPoint::vertex(0), 1);
  expected.add(GraphPoint::on_edge(c, 0, ratio(3, 8)), 1);
  expected.add(GraphPoint::on_edge(c, 0, ratio(1, 8)), -1);
  expected.add(GraphPoint::on_edge(c, 0, ratio(1, 4)), -1);
  CHECK(f.div(c) == expected);
  CHECK_THROWS_AS(PLFunction(c, {Rational(0), Rational(0)}, {{{ratio(1, 8), ratio(1, 16)}}, {}}), ValidationError);
}

TEST_CASE("constant function has zero divisor") {
  MetricGraph g = MetricGraph::unit(families::complete(4));
  CHECK(PLFunction::constant(g, 5).div(g).is_zero());
}

TEST_CASE("random PL functions have degree-zero divisors and additive div") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    MetricGraph g = families::random_lengths(rng, families::random_connected(rng, support::uniform(rng, 2, 6), support::uniform(rng, 0, 4)), 4, 2);
    PLFunction f = support::random_pl(rng, g);
    PLFunction h = support::random_pl(rng, g);
    CHECK(f.div(g).degree() == 0);
    CHECK((f + h).div(g) == f.div(g) + h.div(g));
    CHECK((f - f).div(g).is_zero());
    CHECK(f.scaled(3).div(g) == 3 * f.div(g));
    CHECK(f.shifted(ratio(5, 7)).div(g) == f.div(g));
    for (int k = 0; k < 5; ++k) {
      GraphPoint p = support::random_point(rng, g, 8);
      CHECK(f.ord_at(g, p) == f.div(g)[p]);
    }
  }
}

TEST_CASE("finite principal divisor matches the unit-length PL function") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    FiniteGraph fg = families::random_connected(rng, support::uniform(rng, 2, 7), support::uniform(rng, 0, 5));
    MetricGraph g = MetricGraph::unit(fg);
    std::vector<std::int64_t> f;
    for (int v = 0; v < fg.num_vertices(); ++v) f.push_back(support::uniform(rng, -4, 4));
    auto d = principal_divisor(fg, f);
    CHECK(Divisor::from_vector(d) == from_potential(g, f).div(g));
  }
}

TEST_CASE("tropical min of crossing lines has a kink") {
  MetricGraph seg = MetricGraph::unit(families::path(2));
  PLFunction up(seg, {Rational(0), Rational(1)});
  PLFunction down(seg, {Rational(1), Rational(0)});
  std::vector<PLFunction> fs{up, down};
  std::vector<Rational> bs{0, 0};
  PLFunction m = tropical_min(seg, fs, bs);
  CHECK(m.value_at(GraphPoint::on_edge(seg, 0, ratio(1, 2))) == ratio(1, 2));
  Divisor d = m.div(seg);
  CHECK(d[GraphPoint::on_edge(seg, 0, ratio(1, 2))] == 2);
  CHECK(d.at_vertex(0) == -1);
  CHECK(d.at_vertex(1) == -1);
}

TEST_CASE("tropical min agrees with pointwise minimum") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    MetricGraph g = families::random_lengths(rng, families::random_connected(rng, support::uniform(rng, 2, 5), support::uniform(rng, 0, 3)), 3, 2);
    std::vector<PLFunction> fs;
    std::vector<Rational> bs;
    int k = support::uniform(rng, 1, 4);
    for (int i = 0; i < k; ++i) {
      fs.push_back(support::random_pl(rng, g));
      bs.push_back(ratio(support::uniform(rng, -3, 3), 2));
    }
    PLFunction m = tropical_min(g, fs, bs);
    for (int s = 0; s < 20; ++s) {
      GraphPoint p = support::random_point(rng, g, 13);
      Rational best = fs[0].value_at(p) + bs[0];
      for (int i = 1; i < k; ++i) best = std::min<Rational>(best, fs[i].value_at(p) + bs[i]);
      CHECK(m.value_at(p) == best);
    }
  }
}
