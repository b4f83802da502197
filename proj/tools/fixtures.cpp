#include "fixtures.hpp"

#include "tropdiv/chain_of_loops.hpp"
#include "tropdiv/chip_firing.hpp"
#include "tropdiv/divisor.hpp"
#include "tropdiv/families.hpp"
#include "tropdiv/metric_reduce.hpp"
#include "tropdiv/rank.hpp"
#include "tropdiv/rank_apps.hpp"

namespace tropdiv::cli {

namespace {

Rational q(long a, long b) {
  Rational x(a, b);
  x.canonicalize();
  return x;
}

std::string expect(bool ok, const std::string& what) { return ok ? "" : what; }

Divisor vd(std::vector<std::int64_t> c) { return Divisor::from_vector(c); }

std::vector<Fixture> build() {
  std::vector<Fixture> out;
  out.push_back({"canonical-circle", "canonical divisor of a circle is zero", [] {
                   return expect(canonical_divisor(families::circle()).is_zero(), "nonzero canonical divisor");
                 }});
  out.push_back({"canonical-banana", "banana graph canonical divisor is (g-1)P + (g-1)Q", [] {
                   for (int g = 2; g <= 6; ++g) {
                     FiniteGraph b = families::banana(g);
                     Divisor k = canonical_divisor(b);
                     if (k.at_vertex(0) != g - 1 || k.at_vertex(1) != g - 1 || k.degree() != 2 * g - 2)
                       return "banana " + std::to_string(g) + ": " + format_divisor(b, k);
                   }
                   return std::string();
                 }});
  out.push_back({"div-metric-tree", "tree path function has divisor Q - P", [] {
                   MetricGraph g = MetricGraph::unit(FiniteGraph::from_edges(4, {{0, 1}, {1, 2}, {1, 3}}));
                   PLFunction f(g, {Rational(0), Rational(1), Rational(2), Rational(1)});
                   Divisor d = f.div(g);
                   return expect(d == vd({-1, 0, 1, 0}), format_divisor(g.model(), d));
                 }});
  out.push_back({"div-circle", "circle function has divisor O + Q - (P + R)", [] {
                   MetricGraph c = families::circle();
                   Rational h = q(1, 8);
                   PLFunction f(c, {h, h}, {{{q(1, 8), 0}, {q(1, 4), 0}, {q(3, 8), h}}, {}});
                   Divisor want = Divisor::point(GraphPoint::vertex(0)) +
                                  Divisor::point(GraphPoint::on_edge(c, 0, q(3, 8))) -
                                  Divisor::point(GraphPoint::on_edge(c, 0, q(1, 8))) -
                                  Divisor::point(GraphPoint::on_edge(c, 0, q(1, 4)));
                   return expect(f.div(c) == want, format_divisor(c.model(), f.div(c)));
                 }});
  out.push_back({"dhar-fire", "firing {v1,v2} then {v1,v2,v3} on v1+v2", [] {
                   FiniteGraph g = families::dhar_example();
                   std::vector<VertexId> a{0, 1}, b{0, 1, 2};
                   Divisor s1 = chip_fire(g, vd({1, 1, 0, 0, 0}), a);
                   if (s1 != vd({0, 0, 2, 0, 0})) return "first firing gave " + format_divisor(g, s1);
                   Divisor s2 = chip_fire(g, s1, b);
                   return expect(s2 == vd({0, 0, 0, 1, 1}), "second firing gave " + format_divisor(g, s2));
                 }});
  out.push_back({"dhar-burn", "unburnt sets {v1,v2} and {v1,v2,v3} from v5", [] {
                   FiniteGraph g = families::dhar_example();
                   bool ok = dhar_unburnt(g, vd({1, 1, 0, 0, 0}), 4) == std::vector<VertexId>{0, 1} &&
                             dhar_unburnt(g, vd({0, 0, 2, 0, 0}), 4) == std::vector<VertexId>{0, 1, 2};
                   return expect(ok, "unexpected unburnt set");
                 }});
  out.push_back({"dhar-reduce", "v1+v2 reduces to v4+v5 at v5, finite and metric", [] {
                   FiniteGraph g = families::dhar_example();
                   MetricGraph m = MetricGraph::unit(g);
                   Divisor d = vd({1, 1, 0, 0, 0}), want = vd({0, 0, 0, 1, 1});
                   auto r = reduce(g, d, 4);
                   if (r.reduced != want) return "finite: " + format_divisor(g, r.reduced);
                   if (r.trace != std::vector<std::vector<VertexId>>{{0, 1}, {0, 1, 2}}) return std::string("finite trace");
                   Divisor mr = reduced_divisor(m, d, GraphPoint::vertex(4));
                   return expect(mr == want, "metric: " + format_divisor(g, mr));
                 }});
  out.push_back({"dhar-equiv", "v1+v2 is equivalent to v4+v5", [] {
                   FiniteGraph g = families::dhar_example();
                   return expect(is_equivalent(g, vd({1, 1, 0, 0, 0}), vd({0, 0, 0, 1, 1})), "not equivalent");
                 }});
  out.push_back({"circle-singletons", "a point of a circle is alone in its class", [] {
                   MetricGraph c = families::circle();
                   GraphPoint p = GraphPoint::on_edge(c, 0, q(1, 3));
                   for (const auto& base : {GraphPoint::vertex(0), GraphPoint::vertex(1), GraphPoint::on_edge(c, 1, q(1, 5))})
                     if (reduced_divisor(c, Divisor::point(p), base) != Divisor::point(p)) return std::string("moved");
                   GraphPoint other = GraphPoint::on_edge(c, 1, q(1, 3));
                   return expect(!is_equivalent(c, Divisor::point(p), Divisor::point(other)), "P ~ Q");
                 }});
  out.push_back({"k4-pair-rank", "on K4 a pair of vertices has rank 0", [] {
                   FiniteGraph k4 = families::complete(4);
                   MetricGraph m = MetricGraph::unit(k4);
                   int rf = rank(k4, vd({1, 1, 0, 0})).rank, rm = rank(m, vd({1, 1, 0, 0})).rank;
                   return expect(rf == 0 && rm == 0, "ranks " + std::to_string(rf) + ", " + std::to_string(rm));
                 }});
  out.push_back({"circle-rank", "degree k on a circle has rank k-1", [] {
                   MetricGraph c = families::circle();
                   for (int k = 1; k <= 4; ++k) {
                     Divisor d;
                     for (int i = 0; i < k; ++i) d.add(GraphPoint::on_edge(c, i % 2, q(1 + i, 11)), 1);
                     if (rank(c, d).rank != k - 1) return "degree " + std::to_string(k);
                   }
                   return std::string();
                 }});
  out.push_back({"hyperelliptic-pair", "left pair on the genus-3 hyperelliptic graph: rank 1 = deg/2", [] {
                   MetricGraph h = MetricGraph::unit(families::hyperelliptic_genus3());
                   auto rep = clifford_check(h, vd({1, 1, 0, 0}));
                   return expect(rep.rank_d == 1 && rep.special && rep.holds && 2 * rep.rank_d == rep.degree,
                                 "rank " + std::to_string(rep.rank_d));
                 }});
  out.push_back({"banana-ogg", "(g-1)Q - P has rank -1 on banana graphs", [] {
                   for (int g = 2; g <= 6; ++g) {
                     MetricGraph b = MetricGraph::unit(families::banana(g));
                     Divisor d = Divisor::point(GraphPoint::vertex(1), g - 1) - Divisor::point(GraphPoint::vertex(0));
                     if (!is_reduced(b, d, GraphPoint::vertex(0)) || d.is_effective() || rank(b, d).rank != -1)
                       return "banana " + std::to_string(g);
                   }
                   return std::string();
                 }});
  out.push_back({"banana-weierstrass", "banana vertices are not Weierstrass points", [] {
                   for (int g = 2; g <= 6; ++g) {
                     MetricGraph b = MetricGraph::unit(families::banana(g));
                     if (is_weierstrass_point(b, GraphPoint::vertex(0))) return "banana " + std::to_string(g);
                   }
                   return std::string();
                 }});
  out.push_back({"weighted-rr", "vertex-weighted Riemann-Roch on small weighted graphs", [] {
                   FiniteGraph p = families::path(3);
                   MetricGraph g(p, {q(1, 1), q(3, 2)}, {1, 0, 2});
                   for (int a = -1; a <= 3; ++a)
                     for (int b = 0; b <= 3; ++b) {
                       auto rep = weighted_riemann_roch_check(g, vd({a, 0, b}));
                       if (!rep.holds) return "D = " + format_divisor(p, vd({a, 0, b}));
                     }
                   return std::string();
                 }});
  out.push_back({"chain-count-formula", "cell count formula at g=4, r=1, d=3", [] {
                   auto c = count_cells(4, 1, 3);
                   return expect(c.formula == 2 && c.enumerated == 2, "count " + c.formula.get_str());
                 }});
  out.push_back({"chain-adjoint", "K - D has the transpose tableau (g=4, r=1, d=3)", [] {
                   auto c = ChainOfLoops::standard(4);
                   auto host = c.graph();
                   for (const auto& cell : enumerate_cells(4, 1, 3))
                     if (!adjoint_check(c, host, cell, sample_divisor(c, host, cell)).transpose_holds)
                       return std::string("transpose fails");
                   return std::string();
                 }});
  return out;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = build();
  return all;
}

}  // namespace tropdiv::cli
