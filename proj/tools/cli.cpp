#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "fixtures.hpp"
#include "tropdiv/break_divisors.hpp"
#include "tropdiv/chain_of_loops.hpp"
#include "tropdiv/chip_firing.hpp"
#include "tropdiv/errors.hpp"
#include "tropdiv/families.hpp"
#include "tropdiv/io.hpp"
#include "tropdiv/jacobian.hpp"
#include "tropdiv/metric_reduce.hpp"
#include "tropdiv/parallel.hpp"
#include "tropdiv/rank.hpp"
#include "tropdiv/rank_apps.hpp"
#include "tropdiv/spanning_trees.hpp"
#include "tropdiv/tropical_dependence.hpp"

namespace tropdiv::cli {

constexpr const char* kVersion = "0.1.0";

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

struct Session {
  std::uint64_t seed = 20240611;
  Json inputs = Json::array();
  std::ostream* err = &std::cerr;
  int exit_code = 0;

  std::string note_file(const std::string& path) {
    std::string bytes = read_file(path);
    inputs.push_back({{"path", path}, {"fnv1a64", fnv1a(bytes)}});
    return bytes;
  }
};

int int_arg(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(what + ": expected an integer, got '" + s + "'");
}

// "family:name[:arg]" or a JSON file.
MetricGraph load_graph(Session& s, const std::string& spec) {
  if (spec.rfind("family:", 0) == 0) {
    std::string rest = spec.substr(7), name = rest, arg;
    if (auto colon = rest.find(':'); colon != std::string::npos) {
      name = rest.substr(0, colon);
      arg = rest.substr(colon + 1);
    }
    auto need = [&](const char* what) {
      if (arg.empty()) throw ValidationError("family " + name + " needs :" + what);
      return int_arg(arg, name);
    };
    if (name == "k4") return MetricGraph::unit(families::complete(4));
    if (name == "complete") return MetricGraph::unit(families::complete(need("n")));
    if (name == "k33") return MetricGraph::unit(families::complete_bipartite(3, 3));
    if (name == "petersen") return MetricGraph::unit(families::petersen());
    if (name == "cycle") return MetricGraph::unit(families::cycle(need("n")));
    if (name == "path") return MetricGraph::unit(families::path(need("n")));
    if (name == "banana") return MetricGraph::unit(families::banana(need("g")));
    if (name == "theta") return MetricGraph::unit(families::theta());
    if (name == "dhar") return MetricGraph::unit(families::dhar_example());
    if (name == "hyperelliptic3") return MetricGraph::unit(families::hyperelliptic_genus3());
    if (name == "circle") return families::circle(arg.empty() ? Rational(1) : parse_rational(arg));
    if (name == "two-loops") return families::two_loops();
    if (name == "chain") return ChainOfLoops::standard(need("g")).graph();
    throw ValidationError("unknown graph family '" + name + "'");
  }
  std::string bytes = s.note_file(spec);
  return graph_from_json(parse_json_text(bytes, spec));
}

// Compact text "v1:1,e2@1/3:-1", or "@file.json" holding the JSON form.
Divisor load_divisor(Session& s, const MetricGraph& g, const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') {
    std::string path = spec.substr(1);
    return divisor_from_json(g, parse_json_text(s.note_file(path), path));
  }
  return parse_divisor(g, spec);
}

GraphPoint load_point(const MetricGraph& g, const std::string& spec) { return parse_point(g, spec); }

Json points_json(const MetricGraph& g, const std::vector<GraphPoint>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(point_name(g.model(), p));
  return a;
}

Json div_json(const MetricGraph& g, const Divisor& d) {
  Json j = divisor_to_json(g, d);
  j["text"] = format_divisor(g.model(), d);
  return j;
}

Json rationals_json(const std::vector<Rational>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

Json integers_json(const std::vector<Integer>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x.get_str());
  return a;
}

Json tableau_json(const RectTableau& t) { return t.entries; }

Json rank_json(const MetricGraph& g, const RankResult& r) {
  Json w = Json::array();
  for (const auto& x : r.witnesses)
    w.push_back({{"e", format_divisor(g.model(), x.e)}, {"effective", format_divisor(g.model(), x.effective)}});
  return {{"rank", r.rank},
          {"failing", r.rank >= -1 && !r.failing.is_zero() ? Json(format_divisor(g.model(), r.failing)) : Json()},
          {"witnesses", w},
          {"witnesses_complete", r.witnesses_complete}};
}

Json cell_json(const ChainCell& c, std::size_t index) {
  Json loops = Json::array();
  for (int k = 0; k < c.g; ++k) {
    switch (c.kind[k]) {
      case LoopChip::none:
        loops.push_back("none");
        break;
      case LoopChip::free:
        loops.push_back("free");
        break;
      case LoopChip::fixed:
        loops.push_back(std::to_string(c.multiple[k]) + "m");
        break;
    }
  }
  return {{"index", index}, {"tableau", tableau_json(c.tableau)}, {"steps", c.path.steps}, {"loops", loops},
          {"dimension", c.dimension()}};
}

struct Handler {
  std::function<Json(Session&)> run;
  // When set, printed instead of the JSON document under --text.
  std::function<std::string(const Json&)> text;
  // Print `text` even without --text.
  bool always_text = false;
};

}  // namespace



namespace {

int replay(const std::string& path, std::ostream& out, std::ostream& err) {
  Json m = load_json_file(path);
  if (!m.contains("argv") || !m.contains("output")) throw ValidationError(path + ": not a run manifest");
  std::vector<std::string> argv = m["argv"].get<std::vector<std::string>>();
  std::ostringstream again, again_err;
  int code = run(argv, again, again_err);
  bool same = again.str() == m["output"].get<std::string>() && code == m.value("exit_code", 0);
  if (m.contains("inputs")) {
    for (const auto& in : m["inputs"]) {
      if (fnv1a(read_file(in["path"].get<std::string>())) != in["fnv1a64"].get<std::string>()) {
        err << "input " << in["path"].get<std::string>() << " changed since the manifest was written\n";
        same = false;
      }
    }
  }
  out << Json{{"identical", same}, {"exit_code", code}}.dump(2) << "\n";
  err << (same ? "replay reproduced the manifest output\n" : "replay output differs from the manifest\n");
  return same ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& argv_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divisors, ranks, Jacobians and break divisors on finite and metric graphs", "tropdiv"};
  app.require_subcommand(1);
  // Global flags may follow the subcommand.
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  Session session;
  session.err = &err;
  std::string manifest_path;
  bool compact = false;
  app.add_option("--seed", session.seed, "seed for randomized suites");
  app.add_option("--manifest", manifest_path, "write a run manifest to this path");
  app.add_flag("--text", compact, "print divisors in compact text form only");

  Handler handler;
  std::string graph_spec, divisor_spec, other_spec, at_spec;
  bool finite = false;

  auto with_graph = [&](CLI::App* sub) { sub->add_option("--graph", graph_spec, "JSON file or family:name[:arg]")->required(); };
  auto with_divisor = [&](CLI::App* sub) {
    sub->add_option("--divisor", divisor_spec, "\"v1:2,e1@1/3:-1\" or @file.json")->required();
  };
  auto text_of = [](const char* key) {
    return [key](const Json& j) { return j.at(key).at("text").get<std::string>(); };
  };

  // genus, canonical ---------------------------------------------------------
  auto* genus_cmd = app.add_subcommand("genus", "first Betti number");
  with_graph(genus_cmd);
  genus_cmd->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      return Json{{"genus", g.genus()}, {"weighted_genus", g.weighted_genus()}};
    };
  });

  bool weighted = false;
  auto* canon = app.add_subcommand("canonical", "canonical divisor");
  with_graph(canon);
  canon->add_flag("--weighted", weighted, "vertex-weighted canonical divisor");
  canon->callback([&] {
    handler.text = text_of("divisor");
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      return Json{{"divisor", div_json(g, weighted ? weighted_canonical(g) : canonical_divisor(g))}};
    };
  });

  // reduce, equiv, fire ------------------------------------------------------
  bool trace = false;
  auto* red = app.add_subcommand("reduce", "reduced divisor at a base point");
  with_graph(red);
  with_divisor(red);
  red->add_option("--at", at_spec, "base point")->required();
  red->add_flag("--trace", trace, "record the unburnt sets fired");
  red->add_flag("--finite", finite, "finite-graph chip-firing on the model");
  red->callback([&] {
    handler.text = text_of("reduced");
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      Divisor d = load_divisor(s, g, divisor_spec);
      GraphPoint q = load_point(g, at_spec);
      Json j;
      if (finite) {
        if (!q.is_vertex()) throw ValidationError("--finite needs a vertex base point");
        auto r = reduce(g.model(), d, q.vertex_id());
        j["reduced"] = div_json(g, r.reduced);
        j["witness"] = r.witness;
        Json t = Json::array();
        for (const auto& set : r.trace) {
          std::vector<GraphPoint> pts;
          for (VertexId v : set) pts.push_back(GraphPoint::vertex(v));
          t.push_back(points_json(g, pts));
        }
        if (trace) j["trace"] = t;
      } else {
        ReduceOptions opts;
        opts.trace = trace;
        auto r = reduce(g, d, q, opts);
        j["reduced"] = div_json(g, r.reduced);
        j["witness"] = plfunction_to_json(g, r.witness);
        if (trace) {
          Json t = Json::array();
          for (const auto& set : r.trace) t.push_back(points_json(g, set));
          j["trace"] = t;
        }
      }
      *s.err << "reduced at " << at_spec << ": " << j["reduced"]["text"].get<std::string>() << "\n";
      return j;
    };
  });

  auto* eq = app.add_subcommand("equiv", "linear equivalence of two divisors");
  with_graph(eq);
  with_divisor(eq);
  eq->add_option("--other", other_spec, "second divisor")->required();
  eq->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      Divisor a = load_divisor(s, g, divisor_spec), b = load_divisor(s, g, other_spec);
      Json j{{"equivalent", false}};
      if (a.degree() == b.degree()) {
        // (a - b) + div f = 0 means a + div f = b.
        auto r = reduce(g, a - b, GraphPoint::vertex(0));
        if (r.reduced.is_zero()) {
          j["equivalent"] = true;
          j["witness"] = plfunction_to_json(g, r.witness);
        }
      }
      *s.err << (j["equivalent"].get<bool>() ? "equivalent\n" : "not equivalent\n");
      return j;
    };
  });

  std::vector<std::string> fire_set;
  auto* fire = app.add_subcommand("fire", "fire a set of vertices once");
  with_graph(fire);
  with_divisor(fire);
  fire->add_option("--set", fire_set, "vertex ids")->required()->delimiter(',');
  fire->callback([&] {
    handler.text = text_of("divisor");
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      Divisor d = load_divisor(s, g, divisor_spec);
      std::vector<VertexId> set;
      for (const auto& id : fire_set) {
        auto v = g.model().find_vertex(id);
        if (!v) throw ValidationError("unknown vertex '" + id + "'");
        set.push_back(*v);
      }
      return Json{{"divisor", div_json(g, chip_fire(g.model(), d, set))}};
    };
  });

  // rank family --------------------------------------------------------------
  std::size_t max_witnesses = 0;
  auto* rank_cmd = app.add_subcommand("rank", "divisor rank with a certificate");
  with_graph(rank_cmd);
  with_divisor(rank_cmd);
  rank_cmd->add_option("--witnesses", max_witnesses, "list up to this many witnesses");
  rank_cmd->add_flag("--finite", finite, "rank on the finite model");
  rank_cmd->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      Divisor d = load_divisor(s, g, divisor_spec);
      RankResult r = finite ? rank(g.model(), d, max_witnesses) : rank(g, d, RankOptions{max_witnesses, {}, Arithmetic::automatic});
      Json j = rank_json(g, r);
      j["certificate_ok"] = finite ? verify_rank_certificate(g.model(), d, r) : verify_rank_certificate(g, d, r);
      return j;
    };
  });

  int random_count = 0;
  auto* rr = app.add_subcommand("rr-check", "Riemann-Roch identity");
  with_graph(rr);
  rr->add_option("--divisor", divisor_spec, "divisor to check");
  rr->add_option("--random", random_count, "check this many random divisors instead (uses --seed)");
  rr->add_flag("--finite", finite, "finite model, vertex divisors");
  rr->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      auto report = [&](const Divisor& d) {
        auto rep = finite ? riemann_roch_check(g.model(), d) : riemann_roch_check(g, d);
        return Json{{"divisor", format_divisor(g.model(), d)}, {"rank", rep.rank_d}, {"rank_adjoint", rep.rank_k_minus_d},
                    {"degree", rep.degree}, {"genus", rep.genus}, {"holds", rep.holds}};
      };
      if (random_count <= 0) {
        if (divisor_spec.empty()) throw ValidationError("rr-check needs --divisor or --random");
        return report(load_divisor(s, g, divisor_spec));
      }
      std::mt19937_64 rng(s.seed);
      Json all = Json::array();
      bool holds = true;
      for (int i = 0; i < random_count; ++i) {
        std::vector<std::int64_t> chips(g.num_vertices(), 0);
        int deg = std::uniform_int_distribution<int>(-1, 2 * g.genus())(rng);
        for (int k = 0; k < std::abs(deg) + 2; ++k) chips[rng() % chips.size()] += 1;
        for (int k = 0; k < 2; ++k) chips[rng() % chips.size()] -= 1;
        Json rep = report(Divisor::from_vector(chips));
        holds = holds && rep["holds"].get<bool>();
        all.push_back(rep);
      }
      *s.err << random_count << " instances, identity " << (holds ? "holds" : "FAILS") << "\n";
      return Json{{"seed", s.seed}, {"holds", holds}, {"instances", all}};
    };
  });

  bool cliff_index = false;
  int grid = 1;
  auto* cliff = app.add_subcommand("cliff", "Clifford inequality or Clifford index");
  with_graph(cliff);
  cliff->add_option("--divisor", divisor_spec, "special divisor to test");
  cliff->add_flag("--index", cliff_index, "search the Clifford index on a grid");
  cliff->add_option("--grid", grid, "points per edge minus one for grid searches");
  cliff->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      if (cliff_index) {
        auto r = clifford_index(g, grid);
        Json j{{"index", r.index ? Json(*r.index) : Json()}, {"grid", r.parts}};
        if (r.index) {
          j["witness"] = format_divisor(g.model(), r.witness);
          j["witness_rank"] = r.witness_rank;
        }
        return j;
      }
      if (divisor_spec.empty()) throw ValidationError("cliff needs --divisor or --index");
      auto rep = clifford_check(g, load_divisor(s, g, divisor_spec));
      return Json{{"rank", rep.rank_d}, {"rank_adjoint", rep.rank_k_minus_d}, {"degree", rep.degree},
                  {"special", rep.special}, {"holds", rep.holds}};
    };
  });

  int max_degree = 0;
  auto* gon = app.add_subcommand("gonality", "least degree of a rank-1 divisor on a grid");
  with_graph(gon);
  gon->add_option("--max-degree", max_degree, "largest degree searched")->required();
  gon->add_option("--grid", grid, "points per edge minus one");
  gon->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      auto r = gonality(g, max_degree, grid);
      Json j{{"gonality", r.gonality ? Json(*r.gonality) : Json()}, {"grid", r.parts}};
      if (r.gonality) j["witness"] = format_divisor(g.model(), r.witness);
      j["bound"] = (g.genus() + 3) / 2;
      return j;
    };
  });

  int bn_r = 0, bn_d = 0;
  auto* bn = app.add_subcommand("bn-rank", "Brill-Noether rank on the finite model");
  with_graph(bn);
  bn->add_option("--r", bn_r)->required();
  bn->add_option("--d", bn_d)->required();
  bn->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      int w = brill_noether_rank(g.model(), bn_r, bn_d);
      return Json{{"r", bn_r}, {"d", bn_d}, {"rho", g.genus() - (bn_r + 1) * (g.genus() - bn_d + bn_r)}, {"w", w}};
    };
  });

  auto* wei = app.add_subcommand("weierstrass", "graph Weierstrass points r(K - gP) >= 0");
  with_graph(wei);
  wei->add_option("--point", at_spec, "test one point");
  wei->add_option("--grid", grid, "points per edge minus one");
  wei->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      if (!at_spec.empty()) return Json{{"point", at_spec}, {"weierstrass", is_weierstrass_point(g, load_point(g, at_spec))}};
      return Json{{"grid", grid}, {"points", points_json(g, weierstrass_points(g, grid))}};
    };
  });

  // Jacobian family ----------------------------------------------------------
  auto* jac = app.add_subcommand("jacobian", "invariant factors of the Jacobian");
  with_graph(jac);
  jac->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      auto j = jacobian_structure(g.model());
      *s.err << "order " << j.order.get_str() << "\n";
      return Json{{"invariant_factors", integers_json(j.invariant_factors)}, {"order", j.order.get_str()}};
    };
  });

  bool list_trees = false;
  std::size_t tree_limit = 100000;
  auto* trees = app.add_subcommand("trees", "spanning trees, counted two ways");
  with_graph(trees);
  trees->add_flag("--list", list_trees, "list the trees as edge ids");
  trees->add_option("--limit", tree_limit, "enumeration limit");
  trees->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      const FiniteGraph& m = g.model();
      Integer det = spanning_tree_count_determinant(m);
      auto ts = spanning_trees(m, tree_limit);
      Json j{{"determinant", det.get_str()}, {"enumerated", ts.size()}};
      if (list_trees) {
        Json a = Json::array();
        for (const auto& t : ts) {
          Json ids = Json::array();
          for (EdgeId e : t) ids.push_back(m.edge_id(e));
          a.push_back(ids);
        }
        j["trees"] = a;
      }
      return j;
    };
  });

  auto* gram = app.add_subcommand("period-gram", "Gram matrix of the period lattice");
  with_graph(gram);
  gram->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      auto p = period_gram(g);
      Json tree = Json::array(), rows = Json::array();
      for (EdgeId e : p.tree) tree.push_back(g.model().edge_id(e));
      for (const auto& row : p.gram) rows.push_back(rationals_json(row));
      return Json{{"tree", tree}, {"gram", rows}};
    };
  });

  std::string base_spec;
  auto* aj = app.add_subcommand("abel-jacobi", "Abel-Jacobi image of a degree-0 divisor");
  with_graph(aj);
  with_divisor(aj);
  aj->add_option("--base", base_spec, "base point")->required();
  aj->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      auto img = abel_jacobi(g, load_point(g, base_spec), load_divisor(s, g, divisor_spec));
      return Json{{"coords", rationals_json(img.coords)}, {"lattice_coords", rationals_json(img.lattice_coords)},
                  {"in_lattice", img.in_lattice}};
    };
  });

  std::string zhang_format = "json";
  auto* zh = app.add_subcommand("zhang", "Zhang measure");
  with_graph(zh);
  zh->add_option("--format", zhang_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  zh->callback([&] {
    if (zhang_format == "csv") {
      handler.always_text = true;
      handler.text = [](const Json& j) {
        std::string out = "kind,id,mass\n";
        for (const auto& row : j["edges"]) out += "edge," + row["id"].get<std::string>() + "," + row["mass"].get<std::string>() + "\n";
        for (const auto& row : j["vertices"]) out += "vertex," + row["id"].get<std::string>() + "," + row["mass"].get<std::string>() + "\n";
        return out.substr(0, out.size() - 1);
      };
    }
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      auto mu = zhang_measure(g);
      auto check = zhang_measure_by_resistance(g);
      if (check.edge_mass != mu.edge_mass) throw ConsistencyError("Zhang measure: tree and resistance formulas disagree");
      Json edges = Json::array(), atoms = Json::array();
      for (EdgeId e = 0; e < g.num_edges(); ++e) edges.push_back({{"id", g.model().edge_id(e)}, {"mass", to_string(mu.edge_mass[e])}});
      for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (mu.vertex_atom[v] != 0) atoms.push_back({{"id", g.model().vertex_id(v)}, {"mass", to_string(mu.vertex_atom[v])}});
      return Json{{"edges", edges}, {"vertices", atoms}, {"total", to_string(mu.total)}};
    };
  });

  // break --------------------------------------------------------------------
  auto* brk = app.add_subcommand("break", "break divisors");
  brk->require_subcommand(1);
  auto* brk_enum = brk->add_subcommand("enumerate", "integral break divisors");
  with_graph(brk_enum);
  brk_enum->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      auto e = enumerate_integral_break_divisors(g.model());
      Json ds = Json::array();
      for (const auto& b : e.divisors) ds.push_back({{"divisor", format_divisor(g.model(), b.divisor)}, {"trees", b.trees}});
      *s.err << e.divisors.size() << " break divisors, " << e.trees.size() << " spanning trees\n";
      return Json{{"trees", e.trees.size()}, {"count", e.divisors.size()}, {"divisors", ds}};
    };
  });
  auto* brk_rep = brk->add_subcommand("rep", "the break divisor equivalent to a degree-g divisor");
  with_graph(brk_rep);
  with_divisor(brk_rep);
  brk_rep->callback([&] {
    handler.text = text_of("representative");
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      BreakIndex index(g.model());
      const auto& b = index.representative(load_divisor(s, g, divisor_spec));
      return Json{{"representative", div_json(g, b.divisor)}, {"trees", b.trees}};
    };
  });
  auto* brk_check = brk->add_subcommand("check", "universal reducedness of an effective degree-g divisor");
  with_graph(brk_check);
  with_divisor(brk_check);
  brk_check->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      auto rep = universal_reducedness(g, load_divisor(s, g, divisor_spec));
      if (rep.topological != rep.by_dhar) throw ConsistencyError("universal reducedness tests disagree");
      return Json{{"universally_reduced", rep.by_dhar}, {"complement_contractible", rep.complement_contractible}};
    };
  });

  // chain --------------------------------------------------------------------
  int cg = 0, cr = 0, cd = 0;
  std::size_t cell_index = 0;
  std::vector<std::string> free_coords;
  auto* chain = app.add_subcommand("chain", "generic chain of loops");
  chain->require_subcommand(1);
  auto chain_shape = [&](CLI::App* sub) {
    sub->add_option("--g", cg)->required();
    sub->add_option("--r", cr)->required();
    sub->add_option("--d", cd)->required();
  };
  auto* ch_cells = chain->add_subcommand("cells", "cells of W^r_d indexed by tableaux");
  chain_shape(ch_cells);
  ch_cells->callback([&] {
    handler.run = [&](Session&) {
      auto cells = enumerate_cells(cg, cr, cd);
      Json a = Json::array();
      for (std::size_t i = 0; i < cells.size(); ++i) a.push_back(cell_json(cells[i], i));
      return Json{{"g", cg}, {"r", cr}, {"d", cd}, {"rho", brill_noether_number(cg, cr, cd)}, {"cells", a}};
    };
  });
  auto* ch_count = chain->add_subcommand("count", "number of cells, by formula and enumeration");
  chain_shape(ch_count);
  ch_count->callback([&] {
    handler.text = [](const Json& j) { return j["count"].get<std::string>(); };
    handler.run = [&](Session& s) {
      auto c = count_cells(cg, cr, cd);
      *s.err << "formula " << c.formula.get_str() << ", enumeration " << c.enumerated.get_str() << "\n";
      return Json{{"count", c.formula.get_str()}, {"formula", c.formula.get_str()}, {"enumerated", c.enumerated.get_str()}};
    };
  });
  auto sample_of = [&](const ChainOfLoops& c, const MetricGraph& host, const ChainCell& cell) {
    std::vector<Rational> xs;
    for (const auto& x : free_coords) xs.push_back(parse_rational(x));
    return sample_divisor(c, host, cell, xs);
  };
  auto pick_cell = [&]() {
    auto cells = enumerate_cells(cg, cr, cd);
    if (cell_index >= cells.size())
      throw ValidationError("cell index " + std::to_string(cell_index) + " out of range (" + std::to_string(cells.size()) + " cells)");
    return cells[cell_index];
  };
  auto* ch_sample = chain->add_subcommand("sample", "a divisor from one cell, with its rank");
  chain_shape(ch_sample);
  ch_sample->add_option("--cell", cell_index, "cell index from `chain cells`");
  ch_sample->add_option("--free", free_coords, "ccw coordinates of free chips")->delimiter(',');
  ch_sample->callback([&] {
    handler.run = [&](Session&) {
      auto c = ChainOfLoops::standard(cg);
      auto host = c.graph();
      auto cell = pick_cell();
      Divisor d = sample_of(c, host, cell);
      auto rc = rank_consistency(c, host, cell, d);
      Json j{{"cell", cell_json(cell, cell_index)}, {"divisor", div_json(host, d)}, {"rank", rc.rank}, {"rank_matches", rc.holds}};
      try {
        auto va = vertex_avoiding_reps(c, host, d, cr);
        Json reps = Json::array();
        for (const auto& rep : va.reps) reps.push_back(format_divisor(host.model(), rep));
        j["vertex_avoiding"] = reps;
      } catch (const DomainError& e) {
        j["vertex_avoiding"] = nullptr;
        j["vertex_avoiding_error"] = e.what();
      }
      return j;
    };
  });
  auto* ch_adj = chain->add_subcommand("adjoint", "tableau of K - D against the transpose");
  chain_shape(ch_adj);
  ch_adj->add_option("--cell", cell_index, "cell index from `chain cells`");
  ch_adj->add_option("--free", free_coords, "ccw coordinates of free chips")->delimiter(',');
  ch_adj->callback([&] {
    handler.run = [&](Session&) {
      auto c = ChainOfLoops::standard(cg);
      auto host = c.graph();
      auto cell = pick_cell();
      auto rep = adjoint_check(c, host, cell, sample_of(c, host, cell));
      return Json{{"tableau", tableau_json(rep.tableau)},
                  {"adjoint", rep.adjoint ? tableau_json(*rep.adjoint) : Json()},
                  {"transpose_holds", rep.transpose_holds}};
    };
  });

  // tropdep ------------------------------------------------------------------
  std::string functions_path;
  auto* td = app.add_subcommand("tropdep", "verify a tropical dependence certificate");
  with_graph(td);
  td->add_option("--functions", functions_path, "JSON {\"functions\":[...], \"shifts\":[...]}")->required();
  td->add_option("--divisor", divisor_spec, "also report the min-combination support against D");
  td->callback([&] {
    handler.run = [&](Session& s) {
      auto g = load_graph(s, graph_spec);
      Json in = parse_json_text(s.note_file(functions_path), functions_path);
      if (!in.contains("functions") || !in["functions"].is_array()) throw ValidationError(functions_path + ": missing functions array");
      std::vector<PLFunction> fs;
      std::vector<Rational> bs;
      for (const auto& f : in["functions"]) fs.push_back(plfunction_from_json(g, f));
      if (in.contains("shifts")) {
        for (std::size_t i = 0; i < in["shifts"].size(); ++i) bs.push_back(rational_from_json(in["shifts"][i], "shifts"));
      } else {
        bs.assign(fs.size(), Rational(0));
      }
      if (bs.size() != fs.size()) throw ValidationError("need one shift per function");
      Json j{{"dependent", verify_tropical_dependence(g, fs, bs)}};
      if (!divisor_spec.empty()) {
        auto mc = min_combination(g, fs, bs, load_divisor(s, g, divisor_spec));
        j["theta"] = plfunction_to_json(g, mc.theta);
        j["support"] = points_json(g, mc.support);
      }
      return j;
    };
  });

  // examples, replay ---------------------------------------------------------
  std::vector<std::string> fixture_ids;
  bool list_only = false;
  auto* ex = app.add_subcommand("examples", "run the worked-example fixtures");
  ex->add_option("--id", fixture_ids, "run only these fixtures")->delimiter(',');
  ex->add_flag("--list", list_only, "list fixture ids");
  ex->callback([&] {
    handler.run = [&](Session& s) {
      const auto& all = fixtures();
      std::vector<const Fixture*> chosen;
      for (const auto& id : fixture_ids) {
        auto it = std::find_if(all.begin(), all.end(), [&](const Fixture& f) { return f.id == id; });
        if (it == all.end()) throw ValidationError("unknown fixture '" + id + "'");
        chosen.push_back(&*it);
      }
      if (fixture_ids.empty())
        for (const auto& f : all) chosen.push_back(&f);
      Json results = Json::array();
      bool ok = true;
      for (const Fixture* f : chosen) {
        if (list_only) {
          results.push_back({{"id", f->id}, {"description", f->description}});
          continue;
        }
        std::string msg = f->run();
        ok = ok && msg.empty();
        Json r{{"id", f->id}, {"pass", msg.empty()}};
        if (!msg.empty()) r["detail"] = msg;
        *s.err << (msg.empty() ? "pass " : "FAIL ") << f->id << (msg.empty() ? "" : ": " + msg) << "\n";
        results.push_back(r);
      }
      if (list_only) return Json{{"fixtures", results}};
      Json j{{"pass", ok}, {"fixtures", results}};
      if (!ok) s.exit_code = 1;
      return j;
    };
  });

  std::string replay_path;
  auto* rp = app.add_subcommand("replay", "re-run a manifest and compare its output");
  rp->add_option("manifest", replay_path)->required();

  std::vector<std::string> args(argv_in.rbegin(), argv_in.rend());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string output;
  int code = 0;
  try {
    if (rp->parsed()) return replay(replay_path, out, err);
    Json j = handler.run(session);
    code = session.exit_code;
    output = ((compact || handler.always_text) && handler.text ? handler.text(j) : j.dump(2)) + "\n";
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    code = 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    code = 1;
  } catch (const ConsistencyError& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    code = 1;
  }
  out << output;
  if (!manifest_path.empty()) {
    std::vector<std::string> replay_argv;
    for (std::size_t i = 0; i < argv_in.size(); ++i) {
      if (argv_in[i] == "--manifest") {
        ++i;
        continue;
      }
      if (argv_in[i].rfind("--manifest=", 0) == 0) continue;
      replay_argv.push_back(argv_in[i]);
    }
    Json m{{"tool", "tropdiv"},
           {"version", kVersion},
           {"subcommand", app.get_subcommands().front()->get_name()},
           {"argv", replay_argv},
           {"seed", session.seed},
           {"inputs", session.inputs},
           {"output", output},
           {"exit_code", code}};
    std::ofstream mf(manifest_path);
    if (!mf) {
      err << "cannot write manifest " << manifest_path << "\n";
      return 2;
    }
    mf << m.dump(2) << "\n";
  }
  return code;
}

}  // namespace tropdiv::cli
