#pragma once

// Iterated metric Dhar burning on an effective (away from the base) chip
// configuration. Coordinates are either exact rationals or integers on the
// lattice (1/N)Z, where N clears every denominator in play; chip moves during
// burning only take differences of existing coordinates, so the lattice is
// preserved.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <vector>

#include "tropdiv/divisor.hpp"
#include "tropdiv/errors.hpp"
#include "tropdiv/graph.hpp"
#include "tropdiv/rational.hpp"

namespace tropdiv::detail {

template <class S>
struct Entry {
  S off;
  std::int64_t n;
  friend bool operator==(const Entry& a, const Entry& b) { return a.n == b.n && a.off == b.off; }
  friend bool operator<(const Entry& a, const Entry& b) {
    if (a.off != b.off) return a.off < b.off;
    return a.n < b.n;
  }
};

template <class S>
struct ChipState {
  std::vector<std::int64_t> vchips;
  std::vector<std::vector<Entry<S>>> echips;
  friend bool operator==(const ChipState& a, const ChipState& b) {
    return a.vchips == b.vchips && a.echips == b.echips;
  }
  friend bool operator<(const ChipState& a, const ChipState& b) {
    if (a.vchips != b.vchips) return a.vchips < b.vchips;
    return a.echips < b.echips;
  }
};

template <class S>
struct Base {
  VertexId v = -1;
  EdgeId e = -1;
  S off{};
  friend bool operator==(const Base& a, const Base& b) { return a.v == b.v && a.e == b.e && (a.e < 0 || a.off == b.off); }
};

struct LatticeScale {
  Integer n;
  std::int64_t from(const Rational& x) const {
    Rational y = x * Rational(n);
    if (!is_integer(y)) throw ConsistencyError("coordinate off the lattice");
    return to_int64(y.get_num());
  }
  Rational to(std::int64_t v) const {
    Rational r(static_cast<long>(v));
    return r / Rational(n);
  }
};

struct IdentityScale {
  const Rational& from(const Rational& x) const { return x; }
  const Rational& to(const Rational& x) const { return x; }
};

template <class S>
struct Host {
  const MetricGraph* graph = nullptr;
  std::vector<S> length;
};

// Callbacks receive coordinates in S; the caller converts.
template <class S>
struct FireRecord {
  const std::vector<char>* unburnt_vertices;
  // (edge, offset) of unburnt interior nodes.
  std::vector<std::pair<EdgeId, S>> unburnt_interior;
  std::int64_t times;
  S eps;
  // Knot list per edge for the firing step times*min(dist(., X), eps): every
  // interior node and every arrival point, with value 0 or times*eps.
  std::vector<std::vector<std::pair<S, S>>> knots;
  std::vector<S> vertex_values;
};

template <class S>
class Burner {
 public:
  explicit Burner(const Host<S>& host) : host_(host) {}

  // Ensures an interior base point is present as a node.
  static void add_base(ChipState<S>& st, const Base<S>& q) {
    if (q.e < 0) return;
    auto& list = st.echips[q.e];
    auto it = std::lower_bound(list.begin(), list.end(), q.off,
                               [](const Entry<S>& en, const S& o) { return en.off < o; });
    if (it == list.end() || it->off != q.off) list.insert(it, Entry<S>{q.off, 0});
  }

  // True if some node other than the base stays unburnt; fills the mask.
  bool burn(const ChipState<S>& st, const Base<S>& q) {
    index(st);
    const std::size_t nodes = chips_.size();
    burnt_.assign(nodes, 0);
    count_.assign(nodes, 0);
    seg_burnt_.assign(seg_from_.size(), 0);
    queue_.clear();
    int qnode = q.e < 0 ? q.v : node_of(q.e, q.off);
    burnt_[qnode] = 1;
    queue_.push_back(qnode);
    std::size_t burnt_count = 1;
    while (!queue_.empty()) {
      int u = queue_.front();
      queue_.pop_front();
      for_each_segment(u, [&](int s) {
        if (seg_burnt_[s]) return;
        seg_burnt_[s] = 1;
        int w = seg_from_[s] == u ? seg_to_[s] : seg_from_[s];
        if (burnt_[w]) return;
        if (++count_[w] > chips_[w]) {
          burnt_[w] = 1;
          ++burnt_count;
          queue_.push_back(w);
        }
      });
    }
    return burnt_count < nodes;
  }

  // Fires the unburnt set found by the last burn() as far as possible in one
  // step. Requires that burn() returned true.
  void fire(ChipState<S>& st, const Base<S>& q, FireRecord<S>* rec) {
    const int n = host_.graph->num_vertices();
    const std::size_t nodes = chips_.size();
    outdeg_.assign(nodes, 0);
    bool have_eps = false;
    S eps{};
    for (std::size_t s = 0; s < seg_from_.size(); ++s) {
      int a = seg_from_[s], b = seg_to_[s];
      if (burnt_[a] == burnt_[b]) continue;
      int u = burnt_[a] ? b : a;
      ++outdeg_[u];
      S len = seg_len_[s];
      if (!have_eps || len < eps) {
        eps = len;
        have_eps = true;
      }
    }
    std::int64_t k = -1;
    for (std::size_t u = 0; u < nodes; ++u) {
      if (outdeg_[u] == 0) continue;
      std::int64_t afford = chips_[u] / outdeg_[u];
      k = k < 0 ? afford : std::min(k, afford);
    }
    if (k <= 0) throw ConsistencyError("metric burning stalled");

    std::vector<std::vector<Entry<S>>> arrivals(host_.graph->num_edges());
    for (std::size_t s = 0; s < seg_from_.size(); ++s) {
      int a = seg_from_[s], b = seg_to_[s];
      if (burnt_[a] == burnt_[b]) continue;
      bool from_left = !burnt_[a];
      int u = from_left ? a : b;
      int w = from_left ? b : a;
      chips_[u] -= k;
      if (seg_len_[s] == eps) {
        chips_[w] += k;
      } else {
        const EdgeId e = seg_edge_[s];
        S off = from_left ? S(seg_start_[s] + eps) : S(seg_start_[s] + seg_len_[s] - eps);
        arrivals[e].push_back(Entry<S>{off, k});
      }
    }

    if (rec) {
      rec->times = k;
      rec->eps = eps;
      S high = S(eps) * S(k);
      rec->vertex_values.assign(n, S{});
      vertex_mask_.assign(n, 0);
      for (int v = 0; v < n; ++v) {
        if (burnt_[v]) rec->vertex_values[v] = high;
        vertex_mask_[v] = burnt_[v] ? 0 : 1;
      }
      rec->unburnt_vertices = &vertex_mask_;
      rec->unburnt_interior.clear();
      rec->knots.assign(host_.graph->num_edges(), {});
      for (EdgeId e = 0; e < host_.graph->num_edges(); ++e) {
        auto& ks = rec->knots[e];
        for (std::size_t j = 0; j < st.echips[e].size(); ++j) {
          int node = first_interior_[e] + static_cast<int>(j);
          ks.push_back({st.echips[e][j].off, burnt_[node] ? high : S{}});
          if (!burnt_[node]) rec->unburnt_interior.push_back({e, st.echips[e][j].off});
        }
        for (const auto& en : arrivals[e]) ks.push_back({en.off, high});
        std::sort(ks.begin(), ks.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      }
    }

    for (int v = 0; v < n; ++v) st.vchips[v] = chips_[v];
    for (EdgeId e = 0; e < host_.graph->num_edges(); ++e) {
      auto& list = st.echips[e];
      for (std::size_t j = 0; j < list.size(); ++j) list[j].n = chips_[first_interior_[e] + static_cast<int>(j)];
      if (!arrivals[e].empty()) {
        list.insert(list.end(), arrivals[e].begin(), arrivals[e].end());
        std::sort(list.begin(), list.end(), [](const Entry<S>& x, const Entry<S>& y) { return x.off < y.off; });
      }
      list.erase(std::remove_if(list.begin(), list.end(),
                                [&](const Entry<S>& en) { return en.n == 0 && !(q.e == e && en.off == q.off); }),
                 list.end());
    }
  }

  const std::vector<char>& burnt() const { return burnt_; }
  int first_interior(EdgeId e) const { return first_interior_[e]; }

 private:
  template <class F>
  void for_each_segment(int u, F&& f) {
    const int n = host_.graph->num_vertices();
    if (u < n) {
      for (EdgeId e : host_.graph->model().incident(u)) {
        f(host_.graph->model().edge(e).tail == u ? first_seg_[e] : first_seg_[e + 1] - 1);
      }
    } else {
      int s = node_seg_[u - n];
      f(s);
      f(s + 1);
    }
  }

  int node_of(EdgeId e, const S& off) const {
    for (int j = first_interior_[e]; j < first_interior_[e + 1]; ++j)
      if (node_off_[j] == off) return j;
    throw ConsistencyError("base point missing from chip state");
  }

  void index(const ChipState<S>& st) {
    const MetricGraph& g = *host_.graph;
    const int n = g.num_vertices();
    const int m = g.num_edges();
    chips_.assign(st.vchips.begin(), st.vchips.end());
    node_off_.assign(n, S{});
    node_seg_.clear();
    first_interior_.assign(m + 1, 0);
    first_seg_.assign(m + 1, 0);
    seg_from_.clear();
    seg_to_.clear();
    seg_len_.clear();
    seg_start_.clear();
    seg_edge_.clear();
    for (EdgeId e = 0; e < m; ++e) {
      first_interior_[e] = static_cast<int>(chips_.size());
      first_seg_[e] = static_cast<int>(seg_from_.size());
      int prev = g.model().edge(e).tail;
      S prev_off{};
      for (const auto& en : st.echips[e]) {
        int node = static_cast<int>(chips_.size());
        chips_.push_back(en.n);
        node_off_.push_back(en.off);
        node_seg_.push_back(static_cast<int>(seg_from_.size()));
        seg_from_.push_back(prev);
        seg_to_.push_back(node);
        seg_len_.push_back(S(en.off - prev_off));
        seg_start_.push_back(prev_off);
        seg_edge_.push_back(e);
        prev = node;
        prev_off = en.off;
      }
      seg_from_.push_back(prev);
      seg_to_.push_back(g.model().edge(e).head);
      seg_len_.push_back(S(host_.length[e] - prev_off));
      seg_start_.push_back(prev_off);
      seg_edge_.push_back(e);
    }
    first_interior_[m] = static_cast<int>(chips_.size());
    first_seg_[m] = static_cast<int>(seg_from_.size());
  }

  const Host<S>& host_;
  std::vector<std::int64_t> chips_;
  std::vector<S> node_off_;
  std::vector<int> node_seg_;
  std::vector<int> first_interior_, first_seg_;
  std::vector<int> seg_from_, seg_to_;
  std::vector<S> seg_len_;
  std::vector<S> seg_start_;
  std::vector<EdgeId> seg_edge_;
  std::vector<char> burnt_;
  std::vector<std::int64_t> count_;
  std::vector<char> seg_burnt_;
  std::vector<int> outdeg_;
  std::vector<char> vertex_mask_;
  std::deque<int> queue_;
};

inline constexpr long kMaxBurnSteps = 10'000'000;

// Iterates burning until the state is q-reduced. Chips away from q must be
// nonnegative.
template <class S>
void reduce_effective(Burner<S>& burner, ChipState<S>& st, const Base<S>& q,
                      const std::function<void(const FireRecord<S>&)>& on_fire = {}) {
  Burner<S>::add_base(st, q);
  FireRecord<S> rec;
  for (long step = 0; burner.burn(st, q); ++step) {
    if (step > kMaxBurnSteps) throw ConsistencyError("metric reduction did not terminate");
    burner.fire(st, q, on_fire ? &rec : nullptr);
    if (on_fire) on_fire(rec);
  }
  if (q.e >= 0) {
    auto& list = st.echips[q.e];
    list.erase(std::remove_if(list.begin(), list.end(), [](const Entry<S>& en) { return en.n == 0; }), list.end());
  }
}

template <class S, class Scale>
ChipState<S> to_state(const MetricGraph& g, const Divisor& d, const Scale& scale) {
  ChipState<S> st;
  st.vchips.assign(g.num_vertices(), 0);
  st.echips.assign(g.num_edges(), {});
  for (const auto& [p, n] : d.chips()) {
    if (p.is_vertex()) {
      st.vchips[p.vertex_id()] = n;
    } else {
      st.echips[p.edge_id()].push_back(Entry<S>{S(scale.from(p.offset())), n});
    }
  }
  return st;
}

template <class S, class Scale>
Divisor from_state(const MetricGraph& g, const ChipState<S>& st, const Scale& scale) {
  Divisor d;
  for (VertexId v = 0; v < g.num_vertices(); ++v) d.add(GraphPoint::vertex(v), st.vchips[v]);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    for (const auto& en : st.echips[e]) d.add(GraphPoint::on_edge(g, e, Rational(scale.to(en.off))), en.n);
  return d;
}

template <class S, class Scale>
Base<S> to_base(const GraphPoint& q, const Scale& scale) {
  Base<S> b;
  if (q.is_vertex()) {
    b.v = q.vertex_id();
  } else {
    b.e = q.edge_id();
    b.off = S(scale.from(q.offset()));
  }
  return b;
}

// Smallest N with every length and listed offset in (1/N)Z.
Integer lattice_denominator(const MetricGraph& g, const Divisor& d, const GraphPoint* q);
// Whether coordinates up to the total length times N fit comfortably in int64.
bool lattice_fits(const MetricGraph& g, const Integer& n);

Host<std::int64_t> lattice_host(const MetricGraph& g, const LatticeScale& scale);
Host<Rational> rational_host(const MetricGraph& g);

}  // namespace tropdiv::detail
