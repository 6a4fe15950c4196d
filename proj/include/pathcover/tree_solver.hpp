#pragma once

#include <span>
#include <utility>
#include <vector>

#include "pathcover/graph.hpp"
#include "pathcover/path_system.hpp"

namespace pathcover {

struct RootedTree {
    Vertex root = 0;
    std::vector<Vertex> parent;                 // parent[root] == root
    std::vector<std::vector<Vertex>> children;  // in adjacency order

    int vertex_count() const { return static_cast<int>(parent.size()); }
    bool is_leaf(Vertex v) const { return v != root && children[v].empty(); }

    /// Roots at the lowest-numbered internal vertex (vertex 0 when n < 3).
    /// Throws StructuralError if g is not a tree.
    static RootedTree from_graph(const Graph& g);
    /// Throws InputError if `root` is a leaf of a tree with at least 3 vertices.
    static RootedTree from_graph(const Graph& g, Vertex root);
};

enum class PathStatus { open, closed };

/// A path known only by its endpoints. endpoint_b is the end that is still
/// being extended towards the root; the full sequence is kept in a PathPool.
struct EndpointPath {
    Vertex endpoint_a = -1;
    Vertex endpoint_b = -1;
    PathStatus status = PathStatus::open;
    int node_a = -1;  // pool occurrence at endpoint_a
    int node_b = -1;  // pool occurrence at endpoint_b
};

/// Doubly linked occurrence records: every operation touches O(1) records
/// and full sequences are recovered by walking the links.
class PathPool {
public:
    explicit PathPool(std::size_t reserve = 0) { nodes_.reserve(reserve); }

    EndpointPath singleton(Vertex v);
    /// (a_1..a_j, v, b_k..b_1). Throws std::logic_error unless both paths are
    /// open and arrive through different vertices.
    EndpointPath comb(const EndpointPath& p1, const EndpointPath& p2, Vertex v);
    /// Appends v to every path. Throws std::logic_error on more than two paths.
    std::vector<EndpointPath> concat(std::span<const EndpointPath> paths, Vertex v);
    EndpointPath append(const EndpointPath& p, Vertex v);

    Path expand(const EndpointPath& p) const;

private:
    struct Occurrence {
        Vertex vertex;
        int link[2];
    };
    int make(Vertex v);
    void connect(int x, int y);

    std::vector<Occurrence> nodes_;
};

/// First two entries that arrive through different vertices, checking only
/// (0,1) and then (0,2). Requires at least three paths ordered by child, each
/// child contributing at most two. Throws std::logic_error otherwise.
std::pair<int, int> find_unrelated_pair(std::span<const EndpointPath> paths);

/// Minimum path cover of a tree in linear time. The result has exactly
/// ceil(leaves / 2) paths for n >= 2 and a single singleton for n = 1.
PathSystem solve_tree(const RootedTree& tree);
PathSystem solve_tree(const Graph& g);

}  // namespace pathcover
