#pragma once

#include <cstdint>
#include <optional>

#include "pathcover/decomposition.hpp"
#include "pathcover/graph.hpp"

namespace pathcover {

struct Instance {
    Graph graph;
    std::optional<TreeDecomposition> decomposition;
    int central_bag = -1;  // figure2 only: the hub bag of the middle block
};

Graph star(int leaves);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);

/// Uniform random attachment, then a random relabelling.
Graph random_tree(int n, std::uint64_t seed);

/// Random partial t-tree: a random t-tree on n vertices, a random spanning
/// tree of it, plus each remaining edge kept with probability `density`.
/// Always connected; the t-tree's decomposition (width <= t) is returned too.
Instance random_tw_graph(int n, int t, double density, std::uint64_t seed);

/// Chain of blocks joined by bridge edges. Each block is a pair of poles
/// joined by s internally disjoint strands of two inner vertices (s = 2 is a
/// hexagon). blocks = 0 picks max(s, 5): with fewer blocks an optimal cover
/// may split the chain instead of running every path end to end. Comes with a
/// width-2 decomposition; central_bag is the pole bag of the middle block.
Instance figure2(int s, int blocks = 0);

}  // namespace pathcover
