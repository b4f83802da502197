// Acceptance run: one PASS/FAIL line per criterion. All tolerances are
// exact; every comparison is between exact rationals or integers.
#include <chrono>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "support.hpp"
#include "tropdiv/break_divisors.hpp"
#include "tropdiv/chain_of_loops.hpp"
#include "tropdiv/chip_firing.hpp"
#include "tropdiv/errors.hpp"
#include "tropdiv/families.hpp"
#include "tropdiv/jacobian.hpp"
#include "tropdiv/metric_reduce.hpp"
#include "tropdiv/orientation.hpp"
#include "tropdiv/parallel.hpp"
#include "tropdiv/rank.hpp"
#include "tropdiv/rank_apps.hpp"
#include "tropdiv/spanning_trees.hpp"

using namespace tropdiv;
using support::ratio;
using support::uniform;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

// Special divisors met in the Riemann-Roch suites, for the Clifford check.
struct SpecialTally {
  long seen = 0;
  long violations = 0;
  void add(int rank_d, int rank_kd, long degree) {
    if (rank_d < 0 || rank_kd < 0) return;
    ++seen;
    if (2L * rank_d > degree) ++violations;
  }
};

SpecialTally g_special;

void riemann_roch(Outcome& o, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int finite = 0;
  while (finite < 1000) {
    int n = uniform(rng, 1, 8);
    FiniteGraph g = families::random_connected(rng, n, uniform(rng, 0, std::min(7, 15 - n)));
    if (g.num_edges() > 14) continue;
    Divisor d = support::random_vertex_divisor(rng, n, uniform(rng, -3, 2 * g.genus() + 2));
    auto rr = riemann_roch_check(g, d);
    o.expect(rr.holds, "finite " + format_divisor(g, d));
    g_special.add(rr.rank_d, rr.rank_k_minus_d, rr.degree);
    ++finite;
  }
  int metric = 0;
  for (; metric < 200; ++metric) {
    FiniteGraph model = families::random_connected(rng, uniform(rng, 2, 5), uniform(rng, 0, 3));
    MetricGraph g = families::random_lengths(rng, model, 3, 2);
    Divisor d = support::random_metric_divisor(rng, g, uniform(rng, -3, 2 * g.genus() + 2), 2);
    auto rr = riemann_roch_check(g, d);
    o.expect(rr.holds, "metric " + format_divisor(g.model(), d));
    g_special.add(rr.rank_d, rr.rank_k_minus_d, rr.degree);
  }
  o.detail << "finite=" << finite << " metric=" << metric;
}

void dhar_example(Outcome& o, std::uint64_t) {
  FiniteGraph g = families::dhar_example();
  Divisor d = parse_divisor(g, "v1:1,v2:1");
  VertexId v5 = *g.find_vertex("v5");
  auto red = reduce(g, d, v5);
  o.expect(format_divisor(g, red.reduced) == "v4:1,v5:1", "reduced " + format_divisor(g, red.reduced));
  std::vector<std::vector<VertexId>> expect{{*g.find_vertex("v1"), *g.find_vertex("v2")},
                                            {*g.find_vertex("v1"), *g.find_vertex("v2"), *g.find_vertex("v3")}};
  o.expect(red.trace == expect, "trace");
  MetricGraph m = MetricGraph::unit(g);
  o.expect(reduced_divisor(m, d, GraphPoint::vertex(v5)) == red.reduced, "metric reduction");
  o.detail << "reduced=" << format_divisor(g, red.reduced) << " steps=" << red.trace.size();
}

void kirchhoff(Outcome& o, std::uint64_t seed) {
  auto check = [&](const FiniteGraph& g, const std::string& name, long expect) {
    Integer det = spanning_tree_count_determinant(g);
    Integer listed(static_cast<unsigned long>(spanning_trees(g).size()));
    Integer jac = jacobian_structure(g).order;
    o.expect(det == listed && det == jac, name);
    if (expect > 0) o.expect(jac == expect, name + " order");
  };
  check(families::complete(4), "K4", 16);
  check(families::complete_bipartite(3, 3), "K33", 81);
  check(families::petersen(), "Petersen", 2000);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 100; ++i)
    check(families::random_connected(rng, uniform(rng, 1, 8), uniform(rng, 0, 6)), "random " + std::to_string(i), 0);
  o.detail << "named=3 random=100";
}

// Degree-g classes through superstable configurations topped up at v0.
std::vector<Divisor> degree_g_classes(const FiniteGraph& g) {
  const int n = g.num_vertices();
  std::vector<Divisor> out;
  std::vector<std::int64_t> c(n, 0);
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      std::int64_t s = 0;
      for (int u = 1; u < n; ++u) s += c[u];
      c[0] = g.genus() - s;
      Divisor d = Divisor::from_vector(c);
      if (is_reduced(g, d, 0)) out.push_back(d);
      return;
    }
    for (int k = 0; k < g.valence(v); ++k) {
      c[v] = k;
      rec(v + 1);
    }
    c[v] = 0;
  };
  rec(1);
  return out;
}

std::vector<std::pair<std::string, FiniteGraph>> small_fixtures() {
  std::vector<std::pair<std::string, FiniteGraph>> out{
      {"point", families::single_vertex()},     {"path4", families::path(4)},
      {"theta", families::theta()},             {"dhar", families::dhar_example()},
      {"hyperelliptic3", families::hyperelliptic_genus3()},
      {"K4", families::complete(4)},            {"K24", families::complete_bipartite(2, 4)}};
  for (int n = 2; n <= 8; ++n) out.emplace_back("cycle" + std::to_string(n), families::cycle(n));
  for (int g = 2; g <= 7; ++g) out.emplace_back("banana" + std::to_string(g), families::banana(g));
  return out;
}

void break_bijection(Outcome& o, std::uint64_t seed) {
  auto graphs = small_fixtures();
  std::mt19937_64 rng(seed);
  while (graphs.size() < 80) {
    FiniteGraph g = families::random_connected(rng, uniform(rng, 1, 6), uniform(rng, 0, 3));
    graphs.emplace_back("random", g);
  }
  int tested = 0;
  long classes_checked = 0;
  for (const auto& [name, g] : graphs) {
    Integer trees = spanning_tree_count_determinant(g);
    if (trees > 30) continue;
    ++tested;
    auto en = enumerate_integral_break_divisors(g);
    o.expect(Integer(static_cast<unsigned long>(en.divisors.size())) == trees, name + " |B|");
    auto classes = degree_g_classes(g);
    o.expect(Integer(static_cast<unsigned long>(classes.size())) == trees, name + " class count");
    for (const auto& cls : classes) {
      int matches = 0;
      for (const auto& b : en.divisors) matches += is_equivalent(g, cls, b.divisor) ? 1 : 0;
      o.expect(matches == 1, name + " class " + format_divisor(g, cls));
      ++classes_checked;
    }
  }
  o.detail << "graphs=" << tested << " classes=" << classes_checked;
}

void chain_counts(Outcome& o, std::uint64_t) {
  int shapes = 0;
  std::vector<std::tuple<ChainOfLoops, ChainCell>> jobs;
  for (int g = 1; g <= 7; ++g) {
    for (int r = 0; r <= g; ++r) {
      for (int d = r; d <= g + r; ++d) {
        auto count = count_cells(g, r, d);
        o.expect(count.formula == count.enumerated, "count g=" + std::to_string(g));
        ++shapes;
        if (brill_noether_number(g, r, d) < 0) continue;
        ChainOfLoops c = ChainOfLoops::standard(g);
        for (auto& cell : enumerate_cells(g, r, d)) jobs.emplace_back(c, std::move(cell));
      }
    }
  }
  o.expect(cell_count_formula(4, 1, 3) == 2 && count_cells(4, 1, 3).enumerated == 2, "spot value 2");
  o.expect(cell_count_formula(6, 1, 4) == 5 && count_cells(6, 1, 4).enumerated == 5, "spot value 5");
  std::vector<int> ok(jobs.size(), 0);
  parallel_for(jobs.size(), worker_count(), [&](int, std::size_t i) {
    const auto& [c, cell] = jobs[i];
    MetricGraph host = c.graph();
    ok[i] = rank_consistency(c, host, cell, sample_divisor(c, host, cell)).holds ? 1 : 0;
  });
  long good = 0;
  for (int v : ok) good += v;
  o.expect(good == static_cast<long>(jobs.size()), "a sampled cell has the wrong rank");
  o.detail << "shapes=" << shapes << " cells=" << jobs.size() << " rank_exact=" << good;
}

void clifford(Outcome& o, std::uint64_t) {
  o.expect(g_special.seen > 0, "no special divisors in the random suites");
  o.expect(g_special.violations == 0, std::to_string(g_special.violations) + " violations");
  FiniteGraph h = families::hyperelliptic_genus3();
  Divisor d = parse_divisor(h, "a:1,b:1");
  auto c = clifford_check(MetricGraph::unit(h), d);
  o.expect(c.special && c.holds && c.rank_d == 1 && c.degree == 2, "hyperelliptic equality");
  o.detail << "special=" << g_special.seen << " hyperelliptic r=" << c.rank_d << " deg=" << c.degree;
}

// Acyclic orientations by deletion-contraction: a(G) = a(G - e) + a(G / e),
// zero with a loop, one without edges.
long acyclic_count(int n, std::vector<std::pair<int, int>> edges) {
  if (edges.empty()) return 1;
  for (auto [a, b] : edges)
    if (a == b) return 0;
  auto [u, v] = edges.back();
  edges.pop_back();
  long without = acyclic_count(n, edges);
  for (auto& [a, b] : edges) {
    if (a == v) a = u;
    if (b == v) b = u;
  }
  return without + acyclic_count(n, edges);
}

void orientation_law(Outcome& o, std::uint64_t seed) {
  auto graphs = small_fixtures();
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 40; ++i) {
    int n = uniform(rng, 1, 7);
    graphs.emplace_back("random", families::random_connected(rng, n, uniform(rng, 0, 9 - n)));
  }
  int tested = 0;
  std::uint64_t orientations = 0;
  for (const auto& [name, g] : graphs) {
    if (g.num_edges() > 8) continue;
    ++tested;
    auto rep = orientation_rank_law(g);
    orientations += rep.orientations;
    o.expect(rep.holds, name);
    o.expect(rep.orientations == (std::uint64_t{1} << g.num_edges()), name + " coverage");
    std::vector<std::pair<int, int>> ends;
    for (const auto& e : g.edges()) ends.emplace_back(e.tail, e.head);
    o.expect(static_cast<long>(rep.acyclic) == acyclic_count(g.num_vertices(), ends), name + " acyclic count");
  }
  o.detail << "graphs=" << tested << " orientations=" << orientations;
}

void brill_noether_existence(Outcome& o, std::uint64_t seed) {
  int chain_shapes = 0;
  for (int g = 1; g <= 6; ++g) {
    ChainOfLoops c = ChainOfLoops::standard(g);
    MetricGraph host = c.graph();
    for (int r = 0; r <= g; ++r) {
      for (int d = r; d <= g + r; ++d) {
        if (brill_noether_number(g, r, d) < 0) continue;
        auto cells = enumerate_cells(g, r, d);
        o.expect(!cells.empty(), "chain g=" + std::to_string(g) + " has no cell");
        if (cells.empty()) continue;
        o.expect(rank(host, sample_divisor(c, host, cells.front())).rank >= r, "chain witness rank");
        ++chain_shapes;
      }
    }
  }
  std::mt19937_64 rng(seed);
  int graphs = 0, witnesses = 0;
  for (; graphs < 50; ++graphs) {
    FiniteGraph model = families::random_connected(rng, uniform(rng, 2, 5), uniform(rng, 0, 4));
    MetricGraph g = MetricGraph::unit(model);
    int genus = g.genus();
    for (int r = 1; r <= genus; ++r) {
      for (int d = r; d <= genus + r; ++d) {
        if (brill_noether_number(genus, r, d) < 0) continue;
        auto w = find_rank_divisor(g, r, d, 1);
        if (!w) w = find_rank_divisor(g, r, d, 2);
        o.expect(w.has_value(), "no W^r_d witness on a random graph");
        if (w) {
          o.expect(rank(g, *w).rank >= r, "random witness rank");
          ++witnesses;
        }
      }
    }
    int bound = (genus + 3) / 2;
    auto gon = gonality(g, bound, 2);
    o.expect(gon.gonality.has_value() && *gon.gonality <= bound, "gonality bound");
  }
  o.detail << "chain_shapes=" << chain_shapes << " random_graphs=" << graphs << " witnesses=" << witnesses;
}

void ogg_banana(Outcome& o, std::uint64_t) {
  for (int g = 2; g <= 6; ++g) {
    std::string name = "banana" + std::to_string(g);
    MetricGraph b = MetricGraph::unit(families::banana(g));
    GraphPoint p = GraphPoint::vertex(0), q = GraphPoint::vertex(1);
    Divisor d = Divisor::point(q, g - 1) - Divisor::point(p);
    o.expect(is_reduced(b, d, p), name + " P-reduced");
    o.expect(!d.is_effective() && rank(b, d).rank == -1, name + " rank");
    o.expect(!is_weierstrass_point(b, p) && !is_weierstrass_point(b, q), name + " vertex Weierstrass");
    if (g >= 3) o.expect(is_weierstrass_point(b, GraphPoint::on_edge(b, 0, ratio(1, 2))), name + " midpoint");
  }
  o.detail << "g=2..6";
}

void abel_jacobi_kernel(Outcome& o, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  int principal = 0, other = 0, tries = 0;
  while (principal < 100 || other < 100) {
    ++tries;
    FiniteGraph model = families::random_connected(rng, uniform(rng, 2, 5), uniform(rng, 1, 3));
    MetricGraph g = families::random_lengths(rng, model, 3, 2);
    GraphPoint base = support::random_point(rng, g);
    if (principal < 100) {
      o.expect(abel_jacobi(g, base, support::random_pl(rng, g).div(g)).in_lattice, "div(f) outside the lattice");
      ++principal;
    }
    Divisor x = support::random_metric_divisor(rng, g, 0, 4);
    if (other < 100 && !reduced_divisor(g, x, GraphPoint::vertex(0)).is_zero()) {
      o.expect(!abel_jacobi(g, base, x).in_lattice, "non-principal divisor inside the lattice");
      ++other;
    }
  }
  o.detail << "principal=" << principal << " non_principal=" << other;
}

void zhang_and_weights(Outcome& o, std::uint64_t seed) {
  int fixtures = 0;
  for (const auto& [name, g] : small_fixtures()) {
    if (g.genus() < 1) continue;
    o.expect(zhang_measure(MetricGraph::unit(g)).total == 1, name + " mass");
    ++fixtures;
  }
  for (const Rational& len : {Rational(1), ratio(7, 3)}) {
    auto z = zhang_measure(families::circle(len));
    o.expect(z.total == 1 && z.edge_mass == std::vector<Rational>{ratio(1, 2), ratio(1, 2)}, "circle uniform");
  }
  std::mt19937_64 rng(seed);
  int weighted = 0;
  while (weighted < 50) {
    FiniteGraph model = families::random_connected(rng, uniform(rng, 1, 4), uniform(rng, 0, 2));
    std::vector<int> w;
    for (int v = 0; v < model.num_vertices(); ++v) w.push_back(uniform(rng, 0, 1));
    MetricGraph base = families::random_lengths(rng, model, 2, 2);
    MetricGraph g(base.model(), base.lengths(), w);
    if (g.weighted_genus() < 1) continue;
    ++weighted;
    auto z = zhang_measure(g);
    o.expect(z.total == 1, "weighted mass");
    Divisor d = support::random_metric_divisor(rng, g, uniform(rng, -1, 2 * g.weighted_genus()), 2);
    int r = weighted_rank(g, d);
    o.expect(r == weighted_rank_by_loops(g, d, 1), "loop length 1");
    o.expect(r == weighted_rank_by_loops(g, d, ratio(5, 2)), "loop length 5/2");
    o.expect(weighted_riemann_roch_check(g, d).holds, "weighted Riemann-Roch");
  }
  o.detail << "fixtures=" << fixtures << " weighted=" << weighted;
}

struct Criterion {
  int id;
  const char* name;
  void (*run)(Outcome&, std::uint64_t);
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropdiv acceptance"};
  std::uint64_t seed = 20240611;
  std::vector<int> only;
  app.add_option("--seed", seed);
  app.add_option("--only", only, "criterion numbers to run");
  CLI11_PARSE(app, argc, argv);

  // Clifford reads the special divisors from criterion 1, so it runs after it.
  const Criterion criteria[] = {
      {1, "riemann-roch", riemann_roch},      {2, "dhar-example", dhar_example},
      {3, "kirchhoff", kirchhoff},            {4, "break-bijection", break_bijection},
      {5, "chain-counts", chain_counts},      {6, "clifford", clifford},
      {7, "orientation-law", orientation_law}, {8, "wrd-nonempty", brill_noether_existence},
      {9, "ogg-banana", ogg_banana},          {10, "abel-jacobi-kernel", abel_jacobi_kernel},
      {11, "zhang-weighted", zhang_and_weights}};
  auto selected = [&](int id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };
  if (selected(6) && !selected(1)) {
    Outcome scratch;
    riemann_roch(scratch, seed + 1);
  }
  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected(c.id)) continue;
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o, seed + c.id);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::printf("%s %2d %-20s tol=exact %7.1fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
