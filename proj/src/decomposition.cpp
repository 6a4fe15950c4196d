#include "pathcover/decomposition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

namespace pathcover {

int TreeDecomposition::width() const {
    int w = -1;
    for (auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
    return w;
}

namespace {

std::vector<std::vector<int>> tree_adjacency(const TreeDecomposition& td) {
    std::vector<std::vector<int>> adj(td.node_count());
    for (auto [a, b] : td.tree_edges) {
        if (a < 0 || b < 0 || a >= td.node_count() || b >= td.node_count())
            throw InputError("tree edge " + std::to_string(a) + "-" + std::to_string(b) + " names a missing node");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

// Empty string when the node graph is a tree and every vertex occupies a
// connected, nonempty set of nodes; otherwise a reason.
DecompositionCheck check_shape(const TreeDecomposition& td, const std::vector<std::vector<int>>& adj) {
    const int nodes = td.node_count();
    if (nodes == 0) {
        if (td.vertex_count > 0) return {false, "no bags", -1};
        return {};
    }
    if (static_cast<int>(td.tree_edges.size()) != nodes - 1)
        return {false, "tree has " + std::to_string(td.tree_edges.size()) + " edges for " + std::to_string(nodes) + " nodes", -1};
    std::vector<char> seen(nodes, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 0;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        ++reached;
        for (int y : adj[x])
            if (!seen[y]) {
                seen[y] = 1;
                stack.push_back(y);
            }
    }
    if (reached != nodes) return {false, "decomposition tree is disconnected", -1};

    std::vector<int> occurrences(td.vertex_count, 0), internal(td.vertex_count, 0);
    std::vector<int> stamp(td.vertex_count, -1);
    for (int x = 0; x < nodes; ++x)
        for (Vertex v : td.bags[x]) {
            if (v < 0 || v >= td.vertex_count)
                throw InputError("bag " + std::to_string(x) + " names vertex " + std::to_string(v) + " out of range");
            if (stamp[v] == x) return {false, "vertex " + std::to_string(v) + " repeated in a bag", x};
            stamp[v] = x;
            ++occurrences[v];
        }
    // A vertex's nodes form a subtree iff they span exactly (count - 1) tree edges.
    for (auto [a, b] : td.tree_edges) {
        for (Vertex v : td.bags[a]) stamp[v] = -2 - a;
        for (Vertex v : td.bags[b])
            if (stamp[v] == -2 - a) ++internal[v];
    }
    for (Vertex v = 0; v < td.vertex_count; ++v) {
        if (occurrences[v] == 0) return {false, "vertex " + std::to_string(v) + " in no bag", -1};
        if (internal[v] != occurrences[v] - 1)
            return {false, "bags holding vertex " + std::to_string(v) + " are not connected", -1};
    }
    return {};
}

}  // namespace

DecompositionCheck check_decomposition(const Graph& g, const TreeDecomposition& td) {
    if (td.vertex_count != g.vertex_count())
        throw InputError("decomposition is for " + std::to_string(td.vertex_count) + " vertices, graph has " +
                         std::to_string(g.vertex_count()));
    auto adj = tree_adjacency(td);
    if (auto shape = check_shape(td, adj); !shape) return shape;

    std::vector<std::vector<int>> holders(g.vertex_count());
    for (int x = 0; x < td.node_count(); ++x)
        for (Vertex v : td.bags[x]) holders[v].push_back(x);
    for (auto [u, v] : g.edges()) {
        auto& a = holders[u];
        auto& b = holders[v];
        std::size_t i = 0, j = 0;
        bool found = false;
        while (i < a.size() && j < b.size() && !found) {
            if (a[i] == b[j]) found = true;
            else if (a[i] < b[j]) ++i;
            else ++j;
        }
        if (!found) return {false, "edge " + std::to_string(u) + "-" + std::to_string(v) + " in no bag", -1};
    }
    return {};
}

TreeDecomposition heuristic_decomposition(const Graph& g) {
    const int n = g.vertex_count();
    TreeDecomposition td;
    td.vertex_count = n;
    if (n == 0) {
        td.bags.emplace_back();
        return td;
    }
    std::vector<std::set<Vertex>> adj(n);
    for (Vertex v = 0; v < n; ++v) adj[v].insert(g.neighbors(v).begin(), g.neighbors(v).end());

    using Entry = std::pair<int, Vertex>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (Vertex v = 0; v < n; ++v) heap.emplace(static_cast<int>(adj[v].size()), v);
    std::vector<int> position(n, -1);
    std::vector<Vertex> order;
    std::vector<std::vector<Vertex>> neighbourhood;
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (position[v] >= 0 || d != static_cast<int>(adj[v].size())) continue;
        position[v] = static_cast<int>(order.size());
        order.push_back(v);
        std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
        for (Vertex a : nb) {
            adj[a].erase(v);
            for (Vertex b : nb)
                if (a != b) adj[a].insert(b);
        }
        for (Vertex a : nb) heap.emplace(static_cast<int>(adj[a].size()), a);
        adj[v].clear();
        neighbourhood.push_back(std::move(nb));
    }

    td.bags.resize(n);
    int previous_root = -1;
    for (int i = 0; i < n; ++i) {
        auto& bag = td.bags[i];
        bag.push_back(order[i]);
        bag.insert(bag.end(), neighbourhood[i].begin(), neighbourhood[i].end());
        std::sort(bag.begin(), bag.end());
        int parent = -1;
        for (Vertex a : neighbourhood[i])
            if (parent < 0 || position[a] < parent) parent = position[a];
        if (parent >= 0) {
            td.tree_edges.emplace_back(i, parent);
        } else {
            // Roots of the elimination forest are chained into one tree.
            if (previous_root >= 0) td.tree_edges.emplace_back(previous_root, i);
            previous_root = i;
        }
    }
    return td;
}

TreeDecomposition restrict_decomposition(const TreeDecomposition& td, std::span<const Vertex> vertices) {
    std::vector<int> local(td.vertex_count, -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] < 0 || vertices[i] >= td.vertex_count) throw InputError("restrict: vertex out of range");
        local[vertices[i]] = static_cast<int>(i);
    }
    TreeDecomposition out;
    out.vertex_count = static_cast<int>(vertices.size());
    out.tree_edges = td.tree_edges;
    out.bags.reserve(td.bags.size());
    for (auto& bag : td.bags) {
        auto& b = out.bags.emplace_back();
        for (Vertex v : bag)
            if (v >= 0 && v < td.vertex_count && local[v] >= 0) b.push_back(local[v]);
    }
    return out;
}

bool separator_check(const Graph& g, const TreeDecomposition& td, int node_a, int node_b) {
    auto adj = tree_adjacency(td);
    if (std::find(adj[node_a].begin(), adj[node_a].end(), node_b) == adj[node_a].end())
        throw InputError("separator_check: nodes are not adjacent");
    const int n = g.vertex_count();
    // side[v]: bit 1 if v appears on a's side, bit 2 on b's side.
    std::vector<int> side(n, 0);
    auto mark = [&](int start, int blocked, int bit) {
        std::vector<int> stack{start};
        std::vector<char> seen(td.node_count(), 0);
        seen[start] = seen[blocked] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (Vertex v : td.bags[x]) side[v] |= bit;
            for (int y : adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
        }
    };
    mark(node_a, node_b, 1);
    mark(node_b, node_a, 2);
    std::vector<char> separator(n, 0);
    for (Vertex v : td.bags[node_a])
        if (std::find(td.bags[node_b].begin(), td.bags[node_b].end(), v) != td.bags[node_b].end()) separator[v] = 1;

    std::vector<char> seen(n, 0);
    std::vector<Vertex> queue;
    for (Vertex v = 0; v < n; ++v)
        if ((side[v] & 1) && !separator[v]) {
            seen[v] = 1;
            queue.push_back(v);
        }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex v = queue[head];
        if ((side[v] & 2)) return false;
        for (Vertex w : g.neighbors(v))
            if (!seen[w] && !separator[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
    }
    return true;
}

NiceTreeDecomposition::NiceTreeDecomposition(std::vector<NiceNode> nodes) : nodes_(std::move(nodes)) {}

int NiceTreeDecomposition::width() const {
    int w = -1;
    for (auto& node : nodes_) w = std::max(w, static_cast<int>(node.bag.size()) - 1);
    return w;
}

bool NiceTreeDecomposition::has_edge_nodes() const {
    return std::any_of(nodes_.begin(), nodes_.end(), [](const NiceNode& x) { return x.kind == NodeKind::introduce_edge; });
}

std::vector<int> NiceTreeDecomposition::forget_nodes(int vertex_count) const {
    std::vector<int> out(vertex_count, -1);
    for (int i = 0; i < size(); ++i)
        if (nodes_[i].kind == NodeKind::forget && nodes_[i].vertex >= 0 && nodes_[i].vertex < vertex_count)
            out[nodes_[i].vertex] = i;
    return out;
}

namespace {

bool subset(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

class NiceBuilder {
public:
    int add(NiceNode node) {
        int id = static_cast<int>(nodes.size());
        for (int c : node.children) nodes[c].parent = id;
        nodes.push_back(std::move(node));
        return id;
    }

    int leaf() { return add(NiceNode{}); }

    // Chain from node `from` to a node whose bag is `target`: forgets first, then introduces.
    int morph(int from, const std::vector<Vertex>& target) {
        std::vector<Vertex> gone, fresh;
        const auto start = nodes[from].bag;
        std::set_difference(start.begin(), start.end(), target.begin(), target.end(), std::back_inserter(gone));
        std::set_difference(target.begin(), target.end(), start.begin(), start.end(), std::back_inserter(fresh));
        int top = from;
        for (Vertex v : gone) {
            NiceNode x;
            x.kind = NodeKind::forget;
            x.vertex = v;
            x.bag = nodes[top].bag;
            x.bag.erase(std::find(x.bag.begin(), x.bag.end(), v));
            x.children = {top};
            top = add(std::move(x));
        }
        for (Vertex v : fresh) {
            NiceNode x;
            x.kind = NodeKind::introduce;
            x.vertex = v;
            x.bag = nodes[top].bag;
            x.bag.insert(std::upper_bound(x.bag.begin(), x.bag.end(), v), v);
            x.children = {top};
            top = add(std::move(x));
        }
        return top;
    }

    int join(int left, int right) {
        NiceNode x;
        x.kind = NodeKind::join;
        x.bag = nodes[left].bag;
        x.children = {left, right};
        return add(std::move(x));
    }

    std::vector<NiceNode> nodes;
};

}  // namespace

NiceTreeDecomposition to_nice(const TreeDecomposition& td) {
    auto adj = tree_adjacency(td);
    if (auto shape = check_shape(td, adj); !shape) throw InputError("invalid decomposition: " + shape.reason);
    NiceBuilder b;
    if (td.node_count() == 0) {
        b.leaf();
        return NiceTreeDecomposition(std::move(b.nodes));
    }

    std::vector<std::vector<Vertex>> bags = td.bags;
    for (auto& bag : bags) std::sort(bag.begin(), bag.end());
    std::vector<std::set<int>> nbrs(td.node_count());
    for (int x = 0; x < td.node_count(); ++x) nbrs[x].insert(adj[x].begin(), adj[x].end());
    std::vector<char> alive(td.node_count(), 1);
    // Contract every bag that is contained in a neighbouring bag.
    for (bool changed = true; changed;) {
        changed = false;
        for (int x = 0; x < td.node_count(); ++x) {
            if (!alive[x]) continue;
            for (int y : nbrs[x]) {
                if (!subset(bags[x], bags[y])) continue;
                for (int z : nbrs[x]) {
                    nbrs[z].erase(x);
                    if (z != y) {
                        nbrs[z].insert(y);
                        nbrs[y].insert(z);
                    }
                }
                nbrs[x].clear();
                alive[x] = 0;
                changed = true;
                break;
            }
        }
    }
    int root = static_cast<int>(std::find(alive.begin(), alive.end(), 1) - alive.begin());

    // Pre-order from the root; processing it backwards handles children first.
    std::vector<int> order, parent(td.node_count(), -1);
    std::vector<int> stack{root};
    parent[root] = root;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        order.push_back(x);
        for (auto it = nbrs[x].rbegin(); it != nbrs[x].rend(); ++it)
            if (parent[*it] < 0) {
                parent[*it] = x;
                stack.push_back(*it);
            }
    }
    std::vector<std::vector<int>> tops(td.node_count());  // finished child chains, bag = bags[x]
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int x = *it;
        int top;
        if (tops[x].empty()) {
            top = b.morph(b.leaf(), bags[x]);
        } else {
            top = tops[x][0];
            for (std::size_t i = 1; i < tops[x].size(); ++i) top = b.join(top, tops[x][i]);
        }
        if (x == root) b.morph(top, {});
        else tops[parent[x]].push_back(b.morph(top, bags[parent[x]]));
    }
    return NiceTreeDecomposition(std::move(b.nodes));
}

NiceTreeDecomposition to_advanced_nice(const NiceTreeDecomposition& ntd, const Graph& g) {
    std::vector<int> spot(g.edge_count(), -1);
    for (int i = 0; i < ntd.size(); ++i) {
        const auto& x = ntd.node(i);
        if (x.kind == NodeKind::introduce_edge) throw InputError("decomposition already has introduce-edge nodes");
        if (x.kind != NodeKind::introduce) continue;
        if (!g.contains(x.vertex)) throw InputError("introduce node names vertex outside the graph");
        for (Vertex y : g.neighbors(x.vertex))
            if (std::binary_search(x.bag.begin(), x.bag.end(), y)) {
                int e = g.edge_index(x.vertex, y);
                spot[e] = std::max(spot[e], i);
            }
    }
    std::vector<std::vector<int>> stacked(ntd.size());
    for (int e = 0; e < g.edge_count(); ++e) {
        if (spot[e] < 0)
            throw InputError("edge " + std::to_string(g.edges()[e].first) + "-" + std::to_string(g.edges()[e].second) +
                             " never has both endpoints in one bag");
        stacked[spot[e]].push_back(e);  // edge indices are already lexicographic
    }
    NiceBuilder b;
    std::vector<int> top(ntd.size(), -1);
    for (int i = 0; i < ntd.size(); ++i) {
        NiceNode x = ntd.node(i);
        for (int& c : x.children) c = top[c];
        x.parent = -1;
        int t = b.add(std::move(x));
        for (int e : stacked[i]) {
            NiceNode y;
            y.kind = NodeKind::introduce_edge;
            y.edge = g.edges()[e];
            y.bag = b.nodes[t].bag;
            y.children = {t};
            t = b.add(std::move(y));
        }
        top[i] = t;
    }
    return NiceTreeDecomposition(std::move(b.nodes));
}

std::string check_nice(const NiceTreeDecomposition& ntd, const Graph& g, bool advanced) {
    const int size = ntd.size();
    if (size == 0) return "no nodes";
    std::vector<int> forgotten(g.vertex_count(), 0), edge_nodes(g.edge_count(), 0);
    for (int i = 0; i < size; ++i) {
        const auto& x = ntd.node(i);
        auto where = "node " + std::to_string(i) + ": ";
        if (!std::is_sorted(x.bag.begin(), x.bag.end()) || std::adjacent_find(x.bag.begin(), x.bag.end()) != x.bag.end())
            return where + "bag not strictly sorted";
        for (Vertex v : x.bag)
            if (!g.contains(v)) return where + "vertex out of range";
        for (int c : x.children)
            if (c < 0 || c >= i || ntd.node(c).parent != i) return where + "bad child link";
        if ((x.parent < 0) != (i == size - 1)) return where + "bad parent link";
        auto one_child = [&] { return x.children.size() == 1; };
        switch (x.kind) {
            case NodeKind::leaf:
                if (!x.children.empty() || !x.bag.empty()) return where + "leaf must be empty and childless";
                break;
            case NodeKind::introduce: {
                if (!one_child()) return where + "introduce needs one child";
                auto expect = ntd.node(x.children[0]).bag;
                if (std::binary_search(expect.begin(), expect.end(), x.vertex)) return where + "vertex already present";
                expect.insert(std::upper_bound(expect.begin(), expect.end(), x.vertex), x.vertex);
                if (expect != x.bag) return where + "introduce bag mismatch";
                break;
            }
            case NodeKind::forget: {
                if (!one_child()) return where + "forget needs one child";
                auto expect = ntd.node(x.children[0]).bag;
                auto it = std::lower_bound(expect.begin(), expect.end(), x.vertex);
                if (it == expect.end() || *it != x.vertex) return where + "forgotten vertex absent";
                expect.erase(it);
                if (expect != x.bag) return where + "forget bag mismatch";
                if (++forgotten[x.vertex] > 1) return where + "vertex forgotten twice";
                break;
            }
            case NodeKind::join:
                if (x.children.size() != 2) return where + "join needs two children";
                if (ntd.node(x.children[0]).bag != x.bag || ntd.node(x.children[1]).bag != x.bag)
                    return where + "join bags differ";
                break;
            case NodeKind::introduce_edge: {
                if (!advanced) return where + "unexpected introduce-edge node";
                if (!one_child() || ntd.node(x.children[0]).bag != x.bag) return where + "introduce-edge bag mismatch";
                int e = g.edge_index(x.edge.first, x.edge.second);
                if (e < 0 || x.edge.first > x.edge.second) return where + "not a graph edge";
                if (!std::binary_search(x.bag.begin(), x.bag.end(), x.edge.first) ||
                    !std::binary_search(x.bag.begin(), x.bag.end(), x.edge.second))
                    return where + "edge endpoints not in bag";
                ++edge_nodes[e];
                break;
            }
        }
    }
    if (!ntd.node(size - 1).bag.empty()) return "root bag not empty";
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (forgotten[v] != 1) return "vertex " + std::to_string(v) + " never forgotten";
    if (advanced) {
        for (int e = 0; e < g.edge_count(); ++e)
            if (edge_nodes[e] != 1) return "edge index " + std::to_string(e) + " has " + std::to_string(edge_nodes[e]) + " introduce-edge nodes";
    } else {
        // Every edge must sit in some bag; checking introduce nodes suffices.
        std::vector<char> covered(g.edge_count(), 0);
        for (const auto& x : ntd.nodes())
            if (x.kind == NodeKind::introduce)
                for (Vertex y : g.neighbors(x.vertex))
                    if (std::binary_search(x.bag.begin(), x.bag.end(), y)) covered[g.edge_index(x.vertex, y)] = 1;
        for (int e = 0; e < g.edge_count(); ++e)
            if (!covered[e]) return "edge index " + std::to_string(e) + " in no bag";
    }
    return {};
}

}  // namespace pathcover
