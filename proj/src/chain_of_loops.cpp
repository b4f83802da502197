#include "tropdiv/chain_of_loops.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "tropdiv/errors.hpp"
#include "tropdiv/metric_reduce.hpp"
#include "tropdiv/rank.hpp"

namespace tropdiv {

namespace {

std::vector<int> first_primes(int n) {
  std::vector<int> out;
  for (int k = 2; static_cast<int>(out.size()) < n; ++k) {
    bool prime = true;
    for (int p : out) {
      if (p * p > k) break;
      if (k % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(k);
  }
  return out;
}

Rational mod_positive(const Rational& x, const Rational& len) {
  Rational q = x / len;
  Rational out = x - Rational(floor_of(q)) * len;
  return out;
}

Integer factorial(int n) {
  Integer out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace

ChainOfLoops::ChainOfLoops(int genus, std::vector<Rational> ell_, std::vector<Rational> m_,
                           std::vector<Rational> bridges_)
    : g(genus), ell(std::move(ell_)), m(std::move(m_)), bridges(std::move(bridges_)) {
  if (g < 1) throw ValidationError("chain of loops needs genus at least 1");
  if (static_cast<int>(ell.size()) != g || static_cast<int>(m.size()) != g ||
      static_cast<int>(bridges.size()) != g - 1) {
    throw ValidationError("chain of loops: expected g loop lengths and g-1 bridges");
  }
  auto positive = [](const std::vector<Rational>& xs) {
    return std::all_of(xs.begin(), xs.end(), [](const Rational& x) { return x > 0; });
  };
  if (!positive(ell) || !positive(m) || !positive(bridges))
    throw ValidationError("chain of loops lengths must be positive");
}

ChainOfLoops ChainOfLoops::standard(int genus) {
  if (genus < 1) throw ValidationError("chain of loops needs genus at least 1");
  auto primes = first_primes(genus + 1);
  std::vector<Rational> ell(genus, Rational(1)), m, bridges(genus - 1, Rational(1));
  for (int i = 0; i < genus; ++i) {
    Rational x(primes[i], 2 * genus * primes[i + 1]);
    x.canonicalize();
    m.push_back(x);
  }
  return ChainOfLoops(genus, ell, m, bridges);
}

MetricGraph ChainOfLoops::graph() const {
  std::vector<std::string> vids, eids;
  std::vector<std::pair<VertexId, VertexId>> ends;
  std::vector<Rational> lengths;
  for (int i = 1; i <= g; ++i) {
    vids.push_back("v" + std::to_string(i));
    vids.push_back("w" + std::to_string(i));
  }
  for (int i = 1; i <= g; ++i) {
    eids.push_back("b" + std::to_string(i));
    ends.emplace_back(v(i), w(i));
    lengths.push_back(m[i - 1]);
    eids.push_back("t" + std::to_string(i));
    ends.emplace_back(v(i), w(i));
    lengths.push_back(ell[i - 1]);
    if (i < g) {
      eids.push_back("br" + std::to_string(i));
      ends.emplace_back(w(i), v(i + 1));
      lengths.push_back(bridges[i - 1]);
    }
  }
  return MetricGraph(FiniteGraph(vids, eids, ends), lengths);
}

GraphPoint ChainOfLoops::loop_point(const MetricGraph& host, int i, const Rational& ccw) const {
  if (i < 1 || i > g) throw ValidationError("loop index out of range");
  Rational len = circumference(i);
  Rational x = mod_positive(ccw, len);
  if (x == 0) return GraphPoint::vertex(v(i));
  if (x <= m[i - 1]) return GraphPoint::on_edge(host, bottom_edge(i), x);
  return GraphPoint::on_edge(host, top_edge(i), len - x);
}

std::optional<std::pair<int, Rational>> ChainOfLoops::loop_coordinate(const GraphPoint& p) const {
  if (p.is_vertex()) {
    VertexId u = p.vertex_id();
    int i = u / 2 + 1;
    if (u % 2 == 0) return std::pair{i, Rational(0)};
    return std::pair{i, m[i - 1]};
  }
  EdgeId e = p.edge_id();
  int i = e / 3 + 1;
  if (e % 3 == 0) return std::pair{i, p.offset()};
  if (e % 3 == 1) return std::pair{i, circumference(i) - p.offset()};
  return std::nullopt;
}

std::vector<GraphPoint> ChainOfLoops::rank_determining_set() const {
  std::vector<GraphPoint> out;
  for (int i = 1; i <= g; ++i) out.push_back(GraphPoint::vertex(v(i)));
  out.push_back(GraphPoint::vertex(w(g)));
  return out;
}

bool is_generic(const ChainOfLoops& c) {
  // In lowest terms a/b has the least numerator + denominator among its
  // representations.
  for (int i = 0; i < c.g; ++i) {
    Rational ratio = c.ell[i] / c.m[i];
    Integer sum = ratio.get_num() + ratio.get_den();
    if (sum <= 2 * c.g - 2) return false;
  }
  return true;
}

// Paths and tableaux ----------------------------------------------------------

std::vector<std::vector<int>> LingeringLatticePath::points() const {
  std::vector<int> p(r);
  for (int j = 0; j < r; ++j) p[j] = start - j;
  std::vector<std::vector<int>> out{p};
  for (int s : steps) {
    if (s == r) {
      for (int& y : p) --y;
    } else if (s >= 0 && s < r) {
      ++p[s];
    } else if (s != kLinger) {
      throw ValidationError("unknown lattice path step " + std::to_string(s));
    }
    out.push_back(p);
  }
  return out;
}

bool in_chamber(std::span<const int> p) {
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] <= 0) return false;
    if (j > 0 && p[j - 1] <= p[j]) return false;
  }
  return true;
}

RectTableau RectTableau::transpose() const {
  RectTableau t;
  t.g = g;
  t.columns = rows;
  t.rows = columns;
  t.entries.assign(columns, std::vector<int>(rows));
  for (int a = 0; a < rows; ++a)
    for (int b = 0; b < columns; ++b) t.entries[b][a] = entries[a][b];
  return t;
}

std::vector<int> RectTableau::row_word() const {
  std::vector<int> out;
  for (const auto& row : entries) out.insert(out.end(), row.begin(), row.end());
  return out;
}

bool is_standard(const RectTableau& t) {
  if (t.rows < 0 || t.columns < 0 || static_cast<int>(t.entries.size()) != t.rows) return false;
  std::vector<char> seen(t.g + 1, 0);
  for (int a = 0; a < t.rows; ++a) {
    if (static_cast<int>(t.entries[a].size()) != t.columns) return false;
    for (int b = 0; b < t.columns; ++b) {
      int x = t.entries[a][b];
      if (x < 1 || x > t.g || seen[x]) return false;
      seen[x] = 1;
      if (a > 0 && t.entries[a - 1][b] >= x) return false;
      if (b > 0 && t.entries[a][b - 1] >= x) return false;
    }
  }
  return true;
}

RectTableau tableau_from_path(const LingeringLatticePath& p) {
  if (p.r < 0) throw ValidationError("lattice path with negative r");
  if (p.start != p.r) throw ValidationError("lattice path must start at (r, ..., 1)");
  auto pts = p.points();
  for (const auto& q : pts)
    if (!in_chamber(q)) throw ValidationError("lattice path leaves the Weyl chamber");
  std::vector<std::vector<int>> cols(p.r + 1);
  for (int k = 0; k < p.g(); ++k)
    if (p.steps[k] != kLinger) cols[p.steps[k]].push_back(k + 1);
  for (const auto& c : cols)
    if (c.size() != cols[0].size()) throw ValidationError("lattice path does not return to its start");
  RectTableau t;
  t.g = p.g();
  t.columns = p.r + 1;
  t.rows = static_cast<int>(cols[0].size());
  t.entries.assign(t.rows, std::vector<int>(t.columns));
  for (int b = 0; b < t.columns; ++b)
    for (int a = 0; a < t.rows; ++a) t.entries[a][b] = cols[b][a];
  if (!is_standard(t)) throw ConsistencyError("chamber path produced a nonstandard tableau");
  return t;
}

LingeringLatticePath path_from_tableau(const RectTableau& t) {
  if (t.columns < 1 || !is_standard(t)) throw ValidationError("tableau is not a standard rectangular tableau");
  LingeringLatticePath p;
  p.r = t.columns - 1;
  p.start = p.r;
  p.steps.assign(t.g, kLinger);
  for (int a = 0; a < t.rows; ++a)
    for (int b = 0; b < t.columns; ++b) p.steps[t.entries[a][b] - 1] = b;
  for (const auto& q : p.points())
    if (!in_chamber(q)) throw ConsistencyError("standard tableau produced a path outside the chamber");
  return p;
}

// Cells ----------------------------------------------------------------------

int ChainCell::dimension() const {
  return static_cast<int>(std::count(kind.begin(), kind.end(), LoopChip::free));
}

int brill_noether_number(int g, int r, int d) { return g - (r + 1) * (g - d + r); }

namespace {

ChainCell cell_from_path(int g, int r, int d, const LingeringLatticePath& path) {
  ChainCell c;
  c.g = g;
  c.r = r;
  c.d = d;
  c.path = path;
  c.tableau = tableau_from_path(path);
  auto pts = path.points();
  c.kind.assign(g, LoopChip::free);
  c.multiple.assign(g, 0);
  for (int k = 0; k < g; ++k) {
    int s = path.steps[k];
    if (s == r) {
      c.kind[k] = LoopChip::none;
    } else if (s != kLinger) {
      c.kind[k] = LoopChip::fixed;
      c.multiple[k] = pts[k][s] + 1;
    }
  }
  return c;
}

void check_shape(int g, int r, int d) {
  if (g < 1) throw DomainError("chain of loops needs genus at least 1");
  if (r < 0 || d < 0) throw DomainError("r and d must be nonnegative");
  if (g - d + r < 0) throw DomainError("g - d + r is negative; the rectangle has no rows");
}

}  // namespace

std::vector<ChainCell> enumerate_cells(int g, int r, int d) {
  check_shape(g, r, d);
  const int rows = g - d + r;
  const int rho = brill_noether_number(g, r, d);
  std::vector<ChainCell> out;
  if (rho < 0) return out;
  LingeringLatticePath path;
  path.r = r;
  path.start = r;
  path.steps.assign(g, kLinger);
  std::vector<int> count(r + 1, 0);
  std::function<void(int, int)> walk = [&](int k, int lingers) {
    if (k == g) {
      out.push_back(cell_from_path(g, r, d, path));
      return;
    }
    // Column j takes the next entry when it is short and, for j > 0, the
    // column to its left is strictly longer.
    for (int j = 0; j <= r; ++j) {
      if (count[j] >= rows || (j > 0 && count[j - 1] <= count[j])) continue;
      path.steps[k] = j;
      ++count[j];
      walk(k + 1, lingers);
      --count[j];
    }
    if (lingers < rho) {
      path.steps[k] = kLinger;
      walk(k + 1, lingers + 1);
    }
    path.steps[k] = kLinger;
  };
  walk(0, 0);
  std::sort(out.begin(), out.end(),
            [](const ChainCell& a, const ChainCell& b) { return a.tableau.row_word() < b.tableau.row_word(); });
  return out;
}

Integer cell_count_formula(int g, int r, int d) {
  check_shape(g, r, d);
  const int rho = brill_noether_number(g, r, d);
  if (rho < 0) return 0;
  const int rows = g - d + r;
  Rational x(factorial(g) / (factorial(rho) * factorial(g - rho)));
  x *= Rational(factorial(g - rho));
  for (int i = 0; i <= r; ++i) x *= Rational(factorial(i), factorial(rows + i));
  x.canonicalize();
  if (!is_integer(x)) throw ConsistencyError("cell count formula is not an integer");
  return x.get_num();
}

CellCount count_cells(int g, int r, int d) {
  CellCount c;
  c.formula = cell_count_formula(g, r, d);
  c.enumerated = static_cast<unsigned long>(enumerate_cells(g, r, d).size());
  if (c.formula != c.enumerated) {
    throw ConsistencyError("cell count formula " + c.formula.get_str() + " disagrees with enumeration " +
                           c.enumerated.get_str());
  }
  return c;
}

// Divisors on the chain ------------------------------------------------------

namespace {

// Multiples of m_k that matter for chip moves on a genus-g chain.
int multiple_bound(const ChainOfLoops& c) { return 3 * c.g + 2; }

bool is_multiple(const ChainOfLoops& c, int loop, const Rational& ccw, int mult) {
  Rational q = (ccw - Rational(mult) * c.m[loop - 1]) / c.circumference(loop);
  return is_integer(q);
}

}  // namespace

bool is_degenerate_position(const ChainOfLoops& c, int loop, const Rational& ccw) {
  const int bound = multiple_bound(c);
  for (int k = -bound; k <= bound; ++k)
    if (is_multiple(c, loop, ccw, k)) return true;
  return false;
}

Divisor sample_divisor(const ChainOfLoops& c, const MetricGraph& host, const ChainCell& cell,
                       std::span<const Rational> free_ccw) {
  if (cell.g != c.g) throw ValidationError("cell genus does not match the chain");
  Divisor d;
  if (cell.r > 0) d.add(GraphPoint::vertex(c.v(1)), cell.r);
  std::size_t next_free = 0;
  for (int k = 0; k < c.g; ++k) {
    const int loop = k + 1;
    switch (cell.kind[k]) {
      case LoopChip::none:
        break;
      case LoopChip::fixed:
        d.add(c.loop_point(host, loop, Rational(cell.multiple[k]) * c.m[k]), 1);
        break;
      case LoopChip::free: {
        Rational x;
        if (next_free < free_ccw.size()) {
          x = free_ccw[next_free];
          if (is_degenerate_position(c, loop, x))
            throw ValidationError("free chip on loop " + std::to_string(loop) + " sits at a degenerate position");
        } else {
          // m_k / 2, m_k / 3, ... until one avoids the special multiples.
          for (int den = 2;; ++den) {
            x = c.m[k] / den;
            if (!is_degenerate_position(c, loop, x)) break;
          }
        }
        ++next_free;
        d.add(c.loop_point(host, loop, x), 1);
        break;
      }
    }
  }
  return d;
}

ChainClassification classify(const ChainOfLoops& c, const MetricGraph& host, const Divisor& d, int r) {
  if (r < 0) throw DomainError("r must be nonnegative");
  ChainClassification out;
  out.reduced = reduced_divisor(host, d, GraphPoint::vertex(c.v(1)));
  out.position.assign(c.g, std::nullopt);
  for (const auto& [p, n] : out.reduced.chips()) {
    if (p == GraphPoint::vertex(c.v(1))) {
      out.d1 = static_cast<int>(n);
      continue;
    }
    auto coord = c.loop_coordinate(p);
    // A v_1-reduced divisor has at most one chip on each loop minus v_i and
    // none on the bridges.
    if (!coord || coord->second == 0 || n != 1 || out.position[coord->first - 1])
      throw ConsistencyError("unexpected v_1-reduced chip configuration on the chain");
    out.position[coord->first - 1] = coord->second;
  }
  out.path.r = r;
  out.path.start = out.d1;
  out.path.steps.assign(c.g, kLinger);
  std::vector<int> p(r);
  for (int j = 0; j < r; ++j) p[j] = out.d1 - j;
  out.in_chamber = in_chamber(p);
  for (int k = 0; k < c.g; ++k) {
    int step = kLinger;
    if (!out.position[k]) {
      step = r;
    } else if (in_chamber(p)) {
      for (int j = 0; j < r; ++j) {
        if (!is_multiple(c, k + 1, *out.position[k], p[j] + 1)) continue;
        std::vector<int> q = p;
        ++q[j];
        if (in_chamber(q)) step = j;
      }
    }
    out.path.steps[k] = step;
    if (step == r) {
      for (int& y : p) --y;
    } else if (step != kLinger) {
      ++p[step];
    }
    out.in_chamber = out.in_chamber && in_chamber(p);
  }
  if (out.in_chamber && out.d1 == r) {
    try {
      out.tableau = tableau_from_path(out.path);
    } catch (const ValidationError&) {
    }
  }
  return out;
}

namespace {

Integer denominator_of(const Divisor& d) {
  Integer n = 1;
  for (const auto& [p, k] : d.chips())
    if (!p.is_vertex()) n = lcm(n, p.offset().get_den());
  return n;
}

}  // namespace

RankConsistency rank_consistency(const ChainOfLoops& c, const MetricGraph& host, const ChainCell& cell,
                                 const Divisor& sample, bool cross_check) {
  MetricRankEngine engine(host, denominator_of(sample));
  RankOptions opts;
  opts.rank_set = c.rank_determining_set();
  RankConsistency out;
  out.rank = engine.rank(sample, opts).rank;
  if (cross_check) {
    out.rank_default_set = engine.rank(sample).rank;
    if (*out.rank_default_set != out.rank)
      throw ConsistencyError("chain rank-determining set disagrees with the default set");
  }
  out.holds = out.rank == cell.r && sample.degree() == cell.d;
  return out;
}

VertexAvoiding vertex_avoiding_reps(const ChainOfLoops& c, const MetricGraph& host, const Divisor& d, int r) {
  if (r < 0) throw DomainError("r must be nonnegative");
  const GraphPoint v1 = GraphPoint::vertex(c.v(1));
  const GraphPoint wg = GraphPoint::vertex(c.w(c.g));
  VertexAvoiding out;
  std::vector<PLFunction> h;
  for (int i = 0; i <= r; ++i) {
    Divisor base = Divisor::point(wg, i) + Divisor::point(v1, r - i);
    auto red = reduce(host, d - base, v1);
    if (!red.reduced.is_effective())
      throw DomainError("no representative D_" + std::to_string(i) + "; the divisor has rank below r");
    if (!is_reduced_everywhere(host, red.reduced))
      throw DomainError("representative D_" + std::to_string(i) + " is not unique; the divisor is not vertex-avoiding");
    out.reps.push_back(red.reduced + base);
    h.push_back(red.witness);
  }
  for (int i = 0; i <= r; ++i) {
    PLFunction f = h[i] - h[0];
    f.simplify();
    if (f.div(host) != out.reps[i] - out.reps[0]) throw ConsistencyError("vertex-avoiding witness has the wrong divisor");
    out.f.push_back(std::move(f));
  }
  return out;
}

AdjointReport adjoint_check(const ChainOfLoops& c, const MetricGraph& host, const ChainCell& cell,
                            const Divisor& sample) {
  AdjointReport out;
  out.tableau = cell.tableau;
  const int r_adj = c.g - cell.d + cell.r - 1;
  if (r_adj < 0) return out;
  auto cls = classify(c, host, canonical_divisor(host) - sample, r_adj);
  out.adjoint = cls.tableau;
  out.transpose_holds = cls.tableau && *cls.tableau == cell.tableau.transpose();
  return out;
}

}  // namespace tropdiv
