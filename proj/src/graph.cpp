#include "pathcover/graph.hpp"

#include <algorithm>
#include <string>

namespace pathcover {

Graph::Graph(int vertex_count) {
    if (vertex_count < 0) throw InputError("negative vertex count");
    adjacency_.resize(vertex_count);
}

Graph::Graph(int vertex_count, std::span<const Edge> edges) : Graph(vertex_count) {
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (!contains(u) || !contains(v))
            throw InputError("edge " + std::to_string(u) + "-" + std::to_string(v) + " out of range");
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        edges_.push_back(make_edge(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end())
        throw InputError("parallel edge " + std::to_string(dup->first) + "-" + std::to_string(dup->second));
    for (auto [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (!contains(u) || !contains(v)) return false;
    if (adjacency_[u].size() > adjacency_[v].size()) std::swap(u, v);
    return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

int Graph::edge_index(Vertex u, Vertex v) const {
    Edge e = make_edge(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return -1;
    return static_cast<int>(it - edges_.begin());
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
    std::vector<int> local(g.vertex_count(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!g.contains(vertices[i])) throw InputError("induced_subgraph: vertex out of range");
        local[vertices[i]] = static_cast<int>(i);
    }
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges())
        if (local[u] >= 0 && local[v] >= 0) edges.push_back(make_edge(local[u], local[v]));
    return Graph(static_cast<int>(vertices.size()), edges);
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    std::vector<std::vector<Vertex>> components;
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (seen[s]) continue;
        auto& comp = components.emplace_back();
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (Vertex w : g.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
    }
    return components;
}

bool is_tree(const Graph& g) {
    if (g.vertex_count() == 0) return false;
    return g.edge_count() == g.vertex_count() - 1 && connected_components(g).size() == 1;
}

}  // namespace pathcover
