#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "tropdiv/divisor.hpp"
#include "tropdiv/graph.hpp"
#include "tropdiv/metric_reduce.hpp"

namespace tropdiv {

struct RankWitness {
  Divisor e;
  // Effective divisor equivalent to D - e.
  Divisor effective;
};

struct RankResult {
  int rank = -1;
  // Effective representatives of D - E for E of degree `rank` supported on
  // the rank-determining set, in lexicographic order of E.
  std::vector<RankWitness> witnesses;
  // False when the witness list was cut at RankOptions::max_witnesses.
  bool witnesses_complete = true;
  // Degree rank + 1, with D - failing not equivalent to an effective divisor.
  Divisor failing;
  std::vector<GraphPoint> rank_set;
};

struct RankOptions {
  std::size_t max_witnesses = 0;
  // Replaces the default rank-determining set. The caller vouches for it.
  std::vector<GraphPoint> rank_set;
  Arithmetic arithmetic = Arithmetic::automatic;
};

// Ranks on one finite graph, sharing a memo across queries. E ranges over
// effective vertex divisors.
class FiniteRankEngine {
 public:
  explicit FiniteRankEngine(const FiniteGraph& g);
  ~FiniteRankEngine();
  FiniteRankEngine(FiniteRankEngine&&) noexcept;

  RankResult rank(const Divisor& d, std::size_t max_witnesses = 0);
  bool rank_at_least(const Divisor& d, int k);
  const FiniteGraph& graph() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Ranks on one metric graph. Points must lie on (1/denominator)Z offsets when
// lattice arithmetic is chosen; Arithmetic::rational accepts any point.
class MetricRankEngine {
 public:
  MetricRankEngine(const MetricGraph& g, const Integer& denominator, Arithmetic arithmetic = Arithmetic::automatic);
  ~MetricRankEngine();
  MetricRankEngine(MetricRankEngine&&) noexcept;

  // The default rank-determining set is the host vertices plus supp(d).
  RankResult rank(const Divisor& d, const RankOptions& opts = {});
  bool rank_at_least(const Divisor& d, int k, const std::vector<GraphPoint>& rank_set = {});
  const MetricGraph& graph() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

RankResult rank(const FiniteGraph& g, const Divisor& d, std::size_t max_witnesses = 0);
RankResult rank(const MetricGraph& g, const Divisor& d, const RankOptions& opts = {});
bool rank_at_least(const FiniteGraph& g, const Divisor& d, int k);
bool rank_at_least(const MetricGraph& g, const Divisor& d, int k);

// Re-checks a certificate with independent equivalence tests.
bool verify_rank_certificate(const MetricGraph& g, const Divisor& d, const RankResult& r);
bool verify_rank_certificate(const FiniteGraph& g, const Divisor& d, const RankResult& r);

struct RiemannRochReport {
  int rank_d = -1;
  int rank_k_minus_d = -1;
  int degree = 0;
  int genus = 0;
  // r(D) - r(K - D) == deg(D) - g + 1
  bool holds = false;
};

RiemannRochReport riemann_roch_check(const MetricGraph& g, const Divisor& d);
RiemannRochReport riemann_roch_check(const FiniteGraph& g, const Divisor& d);

struct CliffordReport {
  int rank_d = -1;
  int rank_k_minus_d = -1;
  int degree = 0;
  // Both ranks nonnegative.
  bool special = false;
  // 2 r(D) <= deg(D) when special, true otherwise.
  bool holds = true;
};

CliffordReport clifford_check(const MetricGraph& g, const Divisor& d);
CliffordReport clifford_check(const FiniteGraph& g, const Divisor& d);

}  // namespace tropdiv
