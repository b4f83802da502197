#pragma once

#include <random>

#include "tropdiv/graph.hpp"

namespace tropdiv::families {

FiniteGraph path(int n);
// n >= 2; n = 2 gives two parallel edges.
FiniteGraph cycle(int n);
FiniteGraph complete(int n);
FiniteGraph complete_bipartite(int m, int n);
FiniteGraph petersen();
// Vertices P, Q joined by g+1 edges.
FiniteGraph banana(int g);
FiniteGraph theta();
// Two triangles v1v2v3 and v3v4v5 sharing v3.
FiniteGraph dhar_example();
// Circles {a,b} and {c,d} (two parallel edges each) joined by bridges a-c, b-d.
FiniteGraph hyperelliptic_genus3();
FiniteGraph single_vertex();

// Circle of total length `length` as two edges of half length.
MetricGraph circle(const Rational& length = 1);
// Two circles of length 1 sharing a vertex, each made of two half-length edges.
MetricGraph two_loops();

// Spanning tree plus `extra` random edges; parallel edges allowed, loops never.
FiniteGraph random_connected(std::mt19937_64& rng, int n, int extra);
// Lengths k/den with k uniform in [1, max_num].
MetricGraph random_lengths(std::mt19937_64& rng, FiniteGraph g, int max_num, int den);

}  // namespace tropdiv::families
