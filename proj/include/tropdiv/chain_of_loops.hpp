#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tropdiv/divisor.hpp"
#include "tropdiv/graph.hpp"
#include "tropdiv/plfunction.hpp"
#include "tropdiv/rational.hpp"

namespace tropdiv {

// Loops 1..g joined by bridges. Loop i has endpoints v_i (left) and w_i
// (right); the bottom edge has length m_i and the top edge length ell_i.
// Points on loop i are addressed by their counterclockwise distance from v_i,
// which runs along the bottom edge first, taken modulo m_i + ell_i.
struct ChainOfLoops {
  int g = 0;
  std::vector<Rational> ell;
  std::vector<Rational> m;
  std::vector<Rational> bridges;

  // Throws ValidationError on a size mismatch or a nonpositive length.
  ChainOfLoops(int genus, std::vector<Rational> ell, std::vector<Rational> m, std::vector<Rational> bridges);
  // ell_i = 1, m_i = prime_i / (2g prime_{i+1}), bridges 1.
  static ChainOfLoops standard(int genus);

  // Vertices v1, w1, v2, ...; edges b_i, t_i, br_i per loop.
  MetricGraph graph() const;

  // Loops are numbered from 1.
  VertexId v(int i) const { return 2 * (i - 1); }
  VertexId w(int i) const { return 2 * (i - 1) + 1; }
  EdgeId bottom_edge(int i) const { return 3 * (i - 1); }
  EdgeId top_edge(int i) const { return 3 * (i - 1) + 1; }
  Rational circumference(int i) const { return ell[i - 1] + m[i - 1]; }

  GraphPoint loop_point(const MetricGraph& host, int i, const Rational& ccw) const;
  // Loop index and counterclockwise distance; nullopt for bridge interiors.
  std::optional<std::pair<int, Rational>> loop_coordinate(const GraphPoint& p) const;

  // {v_1, ..., v_g, w_g}.
  std::vector<GraphPoint> rank_determining_set() const;
};

// No ratio ell_i / m_i equals p/q with p + q <= 2g - 2.
bool is_generic(const ChainOfLoops& c);

// Step codes: j in [0, r) is e_j, r is (-1, ..., -1), -1 is a lingering step.
inline constexpr int kLinger = -1;

struct LingeringLatticePath {
  int r = 0;
  // First coordinate of p_1; the tableau correspondence needs start == r.
  int start = 0;
  std::vector<int> steps;

  int g() const { return static_cast<int>(steps.size()); }
  // p_1, ..., p_{g+1}.
  std::vector<std::vector<int>> points() const;
};

// Open Weyl chamber y_0 > ... > y_{r-1} > 0.
bool in_chamber(std::span<const int> p);

// Standard Young tableau on r+1 columns and g-d+r rows with entries from
// 1..g; entries[row][column].
struct RectTableau {
  int g = 0;
  int columns = 0;
  int rows = 0;
  std::vector<std::vector<int>> entries;

  RectTableau transpose() const;
  // Rows concatenated top to bottom.
  std::vector<int> row_word() const;
  friend bool operator==(const RectTableau& a, const RectTableau& b) {
    return a.g == b.g && a.columns == b.columns && a.rows == b.rows && a.entries == b.entries;
  }
};

bool is_standard(const RectTableau& t);
// Both throw ValidationError on illegal input.
RectTableau tableau_from_path(const LingeringLatticePath& p);
LingeringLatticePath path_from_tableau(const RectTableau& t);

enum class LoopChip { none, fixed, free };

struct ChainCell {
  int g = 0, r = 0, d = 0;
  RectTableau tableau;
  LingeringLatticePath path;
  // Per loop (index k for loop k+1). A fixed chip sits at ccw distance
  // multiple[k] * m_{k+1}.
  std::vector<LoopChip> kind;
  std::vector<int> multiple;

  int dimension() const;
};

int brill_noether_number(int g, int r, int d);

// Empty when rho < 0. Throws DomainError when g - d + r < 0 or r < 0. Sorted
// by row word.
std::vector<ChainCell> enumerate_cells(int g, int r, int d);

// C(g, rho) (g - rho)! prod_{i=0}^r i! / (g-d+r+i)!, 0 when rho < 0.
Integer cell_count_formula(int g, int r, int d);

struct CellCount {
  Integer formula;
  Integer enumerated;
};
// Throws ConsistencyError if the two counts differ.
CellCount count_cells(int g, int r, int d);

// Chip positions that would change the step at a free loop: integer
// multiples of m_k modulo the circumference.
bool is_degenerate_position(const ChainOfLoops& c, int loop, const Rational& ccw);

// r chips at v_1 plus one chip per fixed or free loop. free_ccw gives the
// free coordinates in loop order; missing entries take a default. Throws
// ValidationError on a degenerate free coordinate.
Divisor sample_divisor(const ChainOfLoops& c, const MetricGraph& host, const ChainCell& cell,
                       std::span<const Rational> free_ccw = {});

struct ChainClassification {
  Divisor reduced;  // v_1-reduced representative
  int d1 = 0;
  // Counterclockwise chip position per loop, nullopt when the loop is empty.
  std::vector<std::optional<Rational>> position;
  LingeringLatticePath path;
  bool in_chamber = false;
  std::optional<RectTableau> tableau;
};

// Reads the lattice path of D for the given r from its v_1-reduced form.
ChainClassification classify(const ChainOfLoops& c, const MetricGraph& host, const Divisor& d, int r);

struct RankConsistency {
  int rank = -1;  // with the chain's rank-determining set
  std::optional<int> rank_default_set;
  bool holds = false;
};

// rank(sample) == cell.r. cross_check also ranks with the default
// rank-determining set and throws ConsistencyError on disagreement.
RankConsistency rank_consistency(const ChainOfLoops& c, const MetricGraph& host, const ChainCell& cell,
                                 const Divisor& sample, bool cross_check = false);

struct VertexAvoiding {
  // D_i ~ D with D_i - i w_g - (r-i) v_1 effective.
  std::vector<Divisor> reps;
  // div(f[i]) = D_i - D_0.
  std::vector<PLFunction> f;
};

// Throws DomainError when some D_i is missing or not unique.
VertexAvoiding vertex_avoiding_reps(const ChainOfLoops& c, const MetricGraph& host, const Divisor& d, int r);

struct AdjointReport {
  RectTableau tableau;
  std::optional<RectTableau> adjoint;  // tableau of K - D
  bool transpose_holds = false;
};

AdjointReport adjoint_check(const ChainOfLoops& c, const MetricGraph& host, const ChainCell& cell,
                            const Divisor& sample);

}  // namespace tropdiv
