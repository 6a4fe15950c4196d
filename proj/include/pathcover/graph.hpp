#pragma once

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pathcover {

using Vertex = int;
/// Undirected edge, stored with first < second.
using Edge = std::pair<Vertex, Vertex>;

/// Malformed or inconsistent user input (files, ids, parameters).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input is well-formed but lacks a structural property an algorithm needs
/// (for example a tree solver handed a graph with a cycle).
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
/// Immutable once constructed.
class Graph {
public:
    Graph() = default;
    explicit Graph(int vertex_count);
    /// Throws InputError on self-loops, parallel edges, or out-of-range ids.
    Graph(int vertex_count, std::span<const Edge> edges);

    int vertex_count() const { return static_cast<int>(adjacency_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool contains(Vertex v) const { return v >= 0 && v < vertex_count(); }

    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
    int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }
    bool has_edge(Vertex u, Vertex v) const;

    /// Edges in lexicographic order; the position is the edge index.
    const std::vector<Edge>& edges() const { return edges_; }
    /// Index into edges(), or -1 if u and v are not adjacent.
    int edge_index(Vertex u, Vertex v) const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<Edge> edges_;
};

inline Edge make_edge(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Subgraph induced by `vertices`; vertex vertices[i] becomes i.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

/// Maximal connected vertex sets, each sorted, ordered by smallest member.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

bool is_tree(const Graph& g);

}  // namespace pathcover
