#include "tropdiv/rank.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "combinatorics.hpp"
#include "metric_engine.hpp"
#include "rank_core.hpp"
#include "tropdiv/chip_firing.hpp"
#include "tropdiv/errors.hpp"

namespace tropdiv {

namespace {

using detail::Base;
using detail::ChipState;
using detail::RankCore;

struct FiniteOps {
  using State = Chips;
  using Point = VertexId;
  const FiniteGraph* g;

  void reduce(State& s, Point a) { reduce_in_place(*g, s, a); }
  std::int64_t chips_at(const State& s, Point a) const { return s[a]; }
  void remove_one(State& s, Point a) const { --s[a]; }
  int degree(const State& s) const {
    std::int64_t t = 0;
    for (auto c : s) t += c;
    return static_cast<int>(t);
  }
  Point base() const { return 0; }
};

template <class S>
struct MetricOps {
  using State = ChipState<S>;
  using Point = Base<S>;
  detail::Burner<S> burner;

  void reduce(State& s, const Point& a) { detail::reduce_effective(burner, s, a); }
  static const detail::Entry<S>* find(const State& s, const Point& a) {
    for (const auto& en : s.echips[a.e])
      if (en.off == a.off) return &en;
    return nullptr;
  }
  std::int64_t chips_at(const State& s, const Point& a) const {
    if (a.e < 0) return s.vchips[a.v];
    auto* en = find(s, a);
    return en ? en->n : 0;
  }
  void remove_one(State& s, const Point& a) const {
    if (a.e < 0) {
      --s.vchips[a.v];
      return;
    }
    auto& list = s.echips[a.e];
    auto it = std::find_if(list.begin(), list.end(), [&](const detail::Entry<S>& en) { return en.off == a.off; });
    if (it == list.end()) throw ConsistencyError("no chip to remove");
    if (--it->n == 0) list.erase(it);
  }
  int degree(const State& s) const {
    std::int64_t t = 0;
    for (auto c : s.vchips) t += c;
    for (const auto& list : s.echips)
      for (const auto& en : list) t += en.n;
    return static_cast<int>(t);
  }
  Point base() const {
    Point b;
    b.v = 0;
    return b;
  }
};

template <class Ops>
RankResult run_rank(RankCore<Ops>& core, const std::optional<typename Ops::State>& start,
                    const std::vector<typename Ops::Point>& set, const std::vector<GraphPoint>& set_points,
                    std::size_t max_witnesses, const std::function<Divisor(const typename Ops::State&)>& to_divisor) {
  RankResult out;
  out.rank_set = set_points;
  if (!start) return out;
  out.rank = core.rank(*start, set);
  auto index_of = [&](const typename Ops::Point& p) {
    for (std::size_t i = 0; i < set.size(); ++i)
      if (set[i] == p) return i;
    throw ConsistencyError("point outside the rank set");
  };
  for (const auto& p : core.failing(*start, out.rank + 1, set)) out.failing.add(set_points[index_of(p)], 1);
  if (max_witnesses == 0) {
    out.witnesses_complete = false;
    return out;
  }
  detail::for_each_multiset(static_cast<int>(set.size()), out.rank, [&](const std::vector<int>& idx) {
    if (out.witnesses.size() >= max_witnesses) {
      out.witnesses_complete = false;
      return false;
    }
    typename Ops::State s = *start;
    RankWitness w;
    for (int i : idx) {
      auto next = core.step(s, set[i]);
      if (!next) throw ConsistencyError("rank witness missing");
      s = std::move(*next);
      w.e.add(set_points[i], 1);
    }
    w.effective = to_divisor(s);
    out.witnesses.push_back(std::move(w));
    return true;
  });
  return out;
}

}  // namespace

// Finite engine ------------------------------------------------------------

struct FiniteRankEngine::Impl {
  FiniteGraph g;
  RankCore<FiniteOps> core;
  explicit Impl(const FiniteGraph& graph) : g(graph), core(FiniteOps{&g}) {}

  std::optional<Chips> start(const Divisor& d) {
    Chips chips = d.to_vector(g.num_vertices());
    if (d.degree() < 0) return std::nullopt;
    reduce_in_place(g, chips, 0);
    if (chips[0] < 0) return std::nullopt;
    return chips;
  }
  std::vector<VertexId> all_vertices() const {
    std::vector<VertexId> a(g.num_vertices());
    for (VertexId v = 0; v < g.num_vertices(); ++v) a[v] = v;
    return a;
  }
};

FiniteRankEngine::FiniteRankEngine(const FiniteGraph& g) : impl_(std::make_unique<Impl>(g)) {}
FiniteRankEngine::~FiniteRankEngine() = default;
FiniteRankEngine::FiniteRankEngine(FiniteRankEngine&&) noexcept = default;
const FiniteGraph& FiniteRankEngine::graph() const { return impl_->g; }

RankResult FiniteRankEngine::rank(const Divisor& d, std::size_t max_witnesses) {
  auto set = impl_->all_vertices();
  std::vector<GraphPoint> pts;
  for (VertexId v : set) pts.push_back(GraphPoint::vertex(v));
  return run_rank<FiniteOps>(impl_->core, impl_->start(d), set, pts, max_witnesses,
                             [](const Chips& c) { return Divisor::from_vector(c); });
}

bool FiniteRankEngine::rank_at_least(const Divisor& d, int k) {
  if (k < 0) return true;
  auto s = impl_->start(d);
  return s && impl_->core.at_least(*s, k, impl_->all_vertices());
}

// Metric engine ------------------------------------------------------------

namespace {

struct MetricBackend {
  virtual ~MetricBackend() = default;
  virtual RankResult rank(const Divisor& d, const std::vector<GraphPoint>& set, std::size_t max_witnesses) = 0;
  virtual bool at_least(const Divisor& d, int k, const std::vector<GraphPoint>& set) = 0;
};

template <class S, class Scale>
struct MetricBackendImpl final : MetricBackend {
  const MetricGraph& g;
  Scale scale;
  detail::Host<S> host;
  RankCore<MetricOps<S>> core;

  MetricBackendImpl(const MetricGraph& graph, Scale sc, detail::Host<S> h)
      : g(graph), scale(std::move(sc)), host(std::move(h)), core(MetricOps<S>{detail::Burner<S>(host)}) {}

  std::optional<ChipState<S>> start(const Divisor& d) {
    if (d.degree() < 0) return std::nullopt;
    Divisor red = reduced_divisor(g, d, GraphPoint::vertex(0));
    if (!red.is_effective()) return std::nullopt;
    return detail::to_state<S>(g, red, scale);
  }
  std::vector<Base<S>> bases(const std::vector<GraphPoint>& set) const {
    std::vector<Base<S>> out;
    for (const auto& p : set) out.push_back(detail::to_base<S>(p, scale));
    return out;
  }
  RankResult rank(const Divisor& d, const std::vector<GraphPoint>& set, std::size_t max_witnesses) override {
    return run_rank<MetricOps<S>>(core, start(d), bases(set), set, max_witnesses,
                                  [this](const ChipState<S>& s) { return detail::from_state(g, s, scale); });
  }
  bool at_least(const Divisor& d, int k, const std::vector<GraphPoint>& set) override {
    if (k < 0) return true;
    auto s = start(d);
    return s && core.at_least(*s, k, bases(set));
  }
};

std::vector<GraphPoint> default_rank_set(const MetricGraph& g, const Divisor& d) {
  std::vector<GraphPoint> set;
  for (VertexId v = 0; v < g.num_vertices(); ++v) set.push_back(GraphPoint::vertex(v));
  for (const auto& [p, n] : d.chips())
    if (!p.is_vertex()) set.push_back(p);
  return set;
}

}  // namespace

struct MetricRankEngine::Impl {
  MetricGraph g;
  Integer denominator;
  std::unique_ptr<MetricBackend> backend;

  void check_lattice(const std::vector<GraphPoint>& pts) const {
    if (!denominator) return;
    for (const auto& p : pts) {
      if (!p.is_vertex() && !is_integer(p.offset() * Rational(denominator))) {
        throw ValidationError("point " + point_name(g.model(), p) + " is off the rank engine lattice");
      }
    }
  }
  void check(const Divisor& d, const std::vector<GraphPoint>& set) const {
    check_divisor(g, d);
    std::vector<GraphPoint> pts = set;
    for (const auto& [p, n] : d.chips()) pts.push_back(p);
    check_lattice(pts);
  }
};

MetricRankEngine::MetricRankEngine(const MetricGraph& g, const Integer& denominator, Arithmetic arithmetic)
    : impl_(std::make_unique<Impl>()) {
  impl_->g = g;
  Integer n = denominator;
  for (const auto& l : g.lengths()) n = lcm(n, l.get_den());
  if (arithmetic == Arithmetic::automatic && detail::lattice_fits(g, n)) {
    impl_->denominator = n;
    detail::LatticeScale scale{n};
    auto host = detail::lattice_host(impl_->g, scale);
    impl_->backend = std::make_unique<MetricBackendImpl<std::int64_t, detail::LatticeScale>>(impl_->g, scale, host);
  } else {
    impl_->denominator = 0;
    impl_->backend = std::make_unique<MetricBackendImpl<Rational, detail::IdentityScale>>(
        impl_->g, detail::IdentityScale{}, detail::rational_host(impl_->g));
  }
}
MetricRankEngine::~MetricRankEngine() = default;
MetricRankEngine::MetricRankEngine(MetricRankEngine&&) noexcept = default;
const MetricGraph& MetricRankEngine::graph() const { return impl_->g; }

RankResult MetricRankEngine::rank(const Divisor& d, const RankOptions& opts) {
  auto set = opts.rank_set.empty() ? default_rank_set(impl_->g, d) : opts.rank_set;
  impl_->check(d, set);
  return impl_->backend->rank(d, set, opts.max_witnesses);
}

bool MetricRankEngine::rank_at_least(const Divisor& d, int k, const std::vector<GraphPoint>& rank_set) {
  auto set = rank_set.empty() ? default_rank_set(impl_->g, d) : rank_set;
  impl_->check(d, set);
  return impl_->backend->at_least(d, k, set);
}

// Free functions -------------------------------------------------------------

namespace {

Integer denominator_of(const Divisor& d, const std::vector<GraphPoint>& extra) {
  Integer n = 1;
  for (const auto& [p, c] : d.chips())
    if (!p.is_vertex()) n = lcm(n, p.offset().get_den());
  for (const auto& p : extra)
    if (!p.is_vertex()) n = lcm(n, p.offset().get_den());
  return n;
}

}  // namespace

RankResult rank(const FiniteGraph& g, const Divisor& d, std::size_t max_witnesses) {
  FiniteRankEngine engine(g);
  return engine.rank(d, max_witnesses);
}

RankResult rank(const MetricGraph& g, const Divisor& d, const RankOptions& opts) {
  MetricRankEngine engine(g, denominator_of(d, opts.rank_set), opts.arithmetic);
  return engine.rank(d, opts);
}

bool rank_at_least(const FiniteGraph& g, const Divisor& d, int k) {
  FiniteRankEngine engine(g);
  return engine.rank_at_least(d, k);
}

bool rank_at_least(const MetricGraph& g, const Divisor& d, int k) {
  MetricRankEngine engine(g, denominator_of(d, {}));
  return engine.rank_at_least(d, k);
}

namespace {

template <class G>
bool verify_certificate(const G& g, const Divisor& d, const RankResult& r) {
  auto effective = [&](const Divisor& x) { return equivalent_to_effective(g, x); };
  if (r.rank < -1) return false;
  if (r.rank == -1) return !effective(d) && r.failing.is_zero();
  if (r.failing.degree() != r.rank + 1 || !r.failing.is_effective() || effective(d - r.failing)) return false;
  for (const auto& w : r.witnesses) {
    if (w.e.degree() != r.rank || !w.e.is_effective() || !w.effective.is_effective()) return false;
    if (!is_equivalent(g, d - w.e, w.effective)) return false;
  }
  return true;
}

}  // namespace

bool verify_rank_certificate(const MetricGraph& g, const Divisor& d, const RankResult& r) {
  return verify_certificate(g, d, r);
}

bool verify_rank_certificate(const FiniteGraph& g, const Divisor& d, const RankResult& r) {
  return verify_certificate(g, d, r);
}

RiemannRochReport riemann_roch_check(const MetricGraph& g, const Divisor& d) {
  Divisor k = canonical_divisor(g);
  MetricRankEngine engine(g, denominator_of(d, {}));
  RiemannRochReport r;
  r.rank_d = engine.rank(d).rank;
  r.rank_k_minus_d = engine.rank(k - d).rank;
  r.degree = static_cast<int>(d.degree());
  r.genus = g.genus();
  r.holds = r.rank_d - r.rank_k_minus_d == r.degree - r.genus + 1;
  return r;
}

RiemannRochReport riemann_roch_check(const FiniteGraph& g, const Divisor& d) {
  Divisor k = canonical_divisor(g);
  FiniteRankEngine engine(g);
  RiemannRochReport r;
  r.rank_d = engine.rank(d).rank;
  r.rank_k_minus_d = engine.rank(k - d).rank;
  r.degree = static_cast<int>(d.degree());
  r.genus = g.genus();
  r.holds = r.rank_d - r.rank_k_minus_d == r.degree - r.genus + 1;
  return r;
}

namespace {

CliffordReport clifford_from(int rd, int rkd, int degree) {
  CliffordReport c;
  c.rank_d = rd;
  c.rank_k_minus_d = rkd;
  c.degree = degree;
  c.special = rd >= 0 && rkd >= 0;
  c.holds = !c.special || 2 * rd <= degree;
  return c;
}

}  // namespace

CliffordReport clifford_check(const MetricGraph& g, const Divisor& d) {
  auto rr = riemann_roch_check(g, d);
  return clifford_from(rr.rank_d, rr.rank_k_minus_d, rr.degree);
}

CliffordReport clifford_check(const FiniteGraph& g, const Divisor& d) {
  auto rr = riemann_roch_check(g, d);
  return clifford_from(rr.rank_d, rr.rank_k_minus_d, rr.degree);
}

}  // namespace tropdiv
