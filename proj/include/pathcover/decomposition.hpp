#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pathcover/graph.hpp"

namespace pathcover {

/// Plain tree decomposition. Node ids are 0-based indices into `bags`.
/// Bag contents and tree edges keep their input order so that the PACE
/// `.td` text round-trips exactly.
struct TreeDecomposition {
    int vertex_count = 0;
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<int, int>> tree_edges;

    int node_count() const { return static_cast<int>(bags.size()); }
    /// Largest bag size minus one; -1 when there are no bags.
    int width() const;

    friend bool operator==(const TreeDecomposition&, const TreeDecomposition&) = default;
};

struct DecompositionCheck {
    bool ok = true;
    std::string reason;
    int node = -1;  // offending node, when one can be named

    explicit operator bool() const { return ok; }
};

/// Checks that the node tree is a tree, every vertex is in some bag, every
/// edge is inside some bag, and the nodes holding each vertex are connected.
/// Throws InputError if a bag names a vertex outside the graph or a tree
/// edge names a missing node.
DecompositionCheck check_decomposition(const Graph& g, const TreeDecomposition& td);
inline bool validate_decomposition(const Graph& g, const TreeDecomposition& td) {
    return check_decomposition(g, td).ok;
}

/// Min-degree elimination ordering (ties to the smallest id). Always valid,
/// no optimality promise.
TreeDecomposition heuristic_decomposition(const Graph& g);

/// Restricts bags to `vertices` and relabels vertex vertices[i] to i, which
/// yields a decomposition of the induced subgraph.
TreeDecomposition restrict_decomposition(const TreeDecomposition& td, std::span<const Vertex> vertices);

/// BFS check that removing X_a ∩ X_b from g separates the vertices seen on
/// a's side of tree edge (a, b) from those seen on b's side.
bool separator_check(const Graph& g, const TreeDecomposition& td, int node_a, int node_b);

enum class NodeKind { leaf, introduce, forget, join, introduce_edge };

struct NiceNode {
    NodeKind kind = NodeKind::leaf;
    std::vector<Vertex> bag;  // sorted
    Vertex vertex = -1;       // introduce / forget
    Edge edge{-1, -1};        // introduce_edge
    std::vector<int> children;
    int parent = -1;
};

/// Rooted decomposition whose nodes are leaf / introduce / forget / join
/// (and, in the advanced form, introduce_edge). Root and leaves have empty
/// bags. Children always have smaller ids than their parent, so increasing
/// id order is a valid bottom-up processing order and the root is last.
class NiceTreeDecomposition {
public:
    NiceTreeDecomposition() = default;
    explicit NiceTreeDecomposition(std::vector<NiceNode> nodes);

    const std::vector<NiceNode>& nodes() const { return nodes_; }
    const NiceNode& node(int id) const { return nodes_[id]; }
    int size() const { return static_cast<int>(nodes_.size()); }
    int root() const { return size() - 1; }
    int width() const;
    bool has_edge_nodes() const;

    /// Forget node of every graph vertex (-1 if never forgotten).
    std::vector<int> forget_nodes(int vertex_count) const;

private:
    std::vector<NiceNode> nodes_;
};

/// Converts a structurally valid decomposition into nice form of the same
/// width. Redundant bags (subsets of a neighbour) are contracted first.
/// Along every tree edge vertices are forgotten, then introduced, in sorted
/// order; nodes with several children become chains of binary joins.
/// Throws InputError if `td` is not a tree or violates vertex connectivity.
NiceTreeDecomposition to_nice(const TreeDecomposition& td);

/// Adds one introduce_edge node per graph edge uv, directly above the
/// highest introduce node whose bag holds both u and v; several edges at the
/// same spot are stacked in lexicographic order, smallest lowest.
/// Throws InputError if some edge never has both endpoints in one bag.
NiceTreeDecomposition to_advanced_nice(const NiceTreeDecomposition& ntd, const Graph& g);

/// Structural check of the nice-form invariants (and, when `advanced`, that
/// every graph edge has exactly one introduce_edge node). Empty on success.
std::string check_nice(const NiceTreeDecomposition& ntd, const Graph& g, bool advanced);

}  // namespace pathcover
