#pragma once

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "pathcover/decomposition.hpp"
#include "pathcover/graph.hpp"

namespace pathcover::testing {

inline Graph make_graph(int n, std::initializer_list<Edge> edges) {
    std::vector<Edge> e(edges);
    for (auto& x : e) x = make_edge(x.first, x.second);
    return Graph(n, e);
}

inline int leaf_count(const Graph& g) {
    int leaves = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) leaves += g.degree(v) == 1;
    return leaves;
}

// A path-shaped nice decomposition: introduce `in` one by one, then forget
// `out` one by one. The caller keeps the bag sizes honest.
inline NiceTreeDecomposition chain_nice(const std::vector<Vertex>& in, const std::vector<Vertex>& out) {
    std::vector<NiceNode> nodes(1);
    std::vector<Vertex> bag;
    auto push = [&](NodeKind kind, Vertex v) {
        NiceNode node;
        node.kind = kind;
        node.vertex = v;
        node.children = {static_cast<int>(nodes.size()) - 1};
        nodes.back().parent = static_cast<int>(nodes.size());
        if (kind == NodeKind::introduce) bag.push_back(v);
        else std::erase(bag, v);
        std::sort(bag.begin(), bag.end());
        node.bag = bag;
        nodes.push_back(node);
    };
    for (Vertex v : in) push(NodeKind::introduce, v);
    for (Vertex v : out) push(NodeKind::forget, v);
    return NiceTreeDecomposition(std::move(nodes));
}

}  // namespace pathcover::testing
