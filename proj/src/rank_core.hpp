#pragma once

// Memoized rank search shared by the finite and metric engines. States are
// effective divisors reduced at a fixed base point, so equal classes share a
// memo entry. For a rank-determining set A and effective D,
//   r(D) >= k  iff  for every a in A, D - a is equivalent to an effective
//   divisor of rank >= k - 1,
// and D - a is equivalent to an effective divisor iff the a-reduced form of D
// has a chip at a.

#include <climits>
#include <map>
#include <optional>
#include <vector>

#include "tropdiv/errors.hpp"

namespace tropdiv::detail {

// Ops provides State, Point, reduce(State&, Point), chips_at(State, Point),
// remove_one(State&, Point), degree(State) and base().
template <class Ops>
class RankCore {
 public:
  using State = typename Ops::State;
  using Point = typename Ops::Point;

  explicit RankCore(Ops ops) : ops_(std::move(ops)) {}

  Ops& ops() { return ops_; }

  // `st` must be effective and reduced at ops().base().
  bool at_least(const State& st, int k, const std::vector<Point>& rank_set) {
    if (k <= 0) return true;
    if (k > ops_.degree(st)) return false;
    Bounds& b = memo_[st];
    if (k <= b.lo) return true;
    if (k > b.hi) return false;
    for (const Point& a : rank_set) {
      auto child = step(st, a);
      if (!child || !at_least(*child, k - 1, rank_set)) {
        // The map is node-based, so `b` survives recursive insertions.
        b.hi = std::min(b.hi, child ? k - 1 : 0);
        return false;
      }
    }
    b.lo = std::max(b.lo, k);
    return true;
  }

  int rank(const State& st, const std::vector<Point>& rank_set) {
    int k = 0;
    while (at_least(st, k + 1, rank_set)) ++k;
    return k;
  }

  // Points a_1..a_k of the rank set with D - sum a_i not equivalent to an
  // effective divisor; requires !at_least(st, k).
  std::vector<Point> failing(const State& st, int k, const std::vector<Point>& rank_set) {
    for (const Point& a : rank_set) {
      auto child = step(st, a);
      if (!child) return {a};
      if (k - 1 > 0 && !at_least(*child, k - 1, rank_set)) {
        auto rest = failing(*child, k - 1, rank_set);
        rest.insert(rest.begin(), a);
        return rest;
      }
    }
    throw ConsistencyError("rank search found no failing divisor");
  }

  // Effective state equivalent to D - a, or nothing.
  std::optional<State> step(const State& st, const Point& a) {
    State f = st;
    ops_.reduce(f, a);
    if (ops_.chips_at(f, a) == 0) return std::nullopt;
    ops_.remove_one(f, a);
    ops_.reduce(f, ops_.base());
    return f;
  }

  std::size_t memo_size() const { return memo_.size(); }

 private:
  struct Bounds {
    int lo = 0;
    int hi = INT_MAX;
  };
  Ops ops_;
  std::map<State, Bounds> memo_;
};

}  // namespace tropdiv::detail
