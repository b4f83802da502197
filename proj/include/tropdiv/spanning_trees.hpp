#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "tropdiv/graph.hpp"
#include "tropdiv/parallel.hpp"
#include "tropdiv/rational.hpp"

namespace tropdiv {

// A spanning tree as its sorted edge list.
using SpanningTree = std::vector<EdgeId>;

// Kirchhoff: determinant of the Laplacian with the first vertex deleted.
Integer spanning_tree_count_determinant(const FiniteGraph& g);

// All spanning trees in lexicographic order of their edge lists. Throws
// DomainError past `limit`. The parallel path splits on the first edge
// decisions and returns the same list.
std::vector<SpanningTree> spanning_trees(const FiniteGraph& g, std::size_t limit = 10'000'000,
                                         Execution exec = Execution::parallel);

// Both counts; throws ConsistencyError if they differ.
Integer spanning_tree_count(const FiniteGraph& g, Execution exec = Execution::parallel);

// Edges not in the tree, in increasing order.
std::vector<EdgeId> complement_edges(const FiniteGraph& g, const SpanningTree& t);

// BFS tree from the first vertex, taking edges in index order.
SpanningTree bfs_tree(const FiniteGraph& g);

}  // namespace tropdiv
