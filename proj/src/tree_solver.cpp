#include "pathcover/tree_solver.hpp"

#include <stdexcept>

namespace pathcover {

RootedTree RootedTree::from_graph(const Graph& g) {
    if (g.vertex_count() == 0 || g.edge_count() != g.vertex_count() - 1) throw StructuralError("graph is not a tree");
    Vertex root = 0;
    if (g.vertex_count() >= 3)
        while (g.degree(root) < 2) ++root;
    return from_graph(g, root);
}

RootedTree RootedTree::from_graph(const Graph& g, Vertex root) {
    // n - 1 edges plus a BFS that reaches everything makes a tree.
    if (g.vertex_count() == 0 || g.edge_count() != g.vertex_count() - 1) throw StructuralError("graph is not a tree");
    if (!g.contains(root)) throw InputError("root out of range");
    if (g.vertex_count() >= 3 && g.degree(root) < 2) throw InputError("root must be an internal vertex");
    const int n = g.vertex_count();
    RootedTree t;
    t.root = root;
    t.parent.assign(n, -1);
    t.children.resize(n);
    for (Vertex v = 0; v < n; ++v) t.children[v].reserve(std::max(0, g.degree(v) - (v != root)));
    t.parent[root] = root;
    std::vector<Vertex> queue{root};
    queue.reserve(n);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex v = queue[head];
        for (Vertex w : g.neighbors(v))
            if (t.parent[w] < 0) {
                t.parent[w] = v;
                t.children[v].push_back(w);
                queue.push_back(w);
            }
    }
    if (static_cast<int>(queue.size()) != n) throw StructuralError("graph is not a tree");
    return t;
}

int PathPool::make(Vertex v) {
    nodes_.push_back({v, {-1, -1}});
    return static_cast<int>(nodes_.size()) - 1;
}

void PathPool::connect(int x, int y) {
    auto attach = [this](int from, int to) {
        int* slot = nodes_[from].link[0] < 0 ? &nodes_[from].link[0] : &nodes_[from].link[1];
        if (*slot >= 0) throw std::logic_error("occurrence already has two neighbours");
        *slot = to;
    };
    attach(x, y);
    attach(y, x);
}

EndpointPath PathPool::singleton(Vertex v) {
    int x = make(v);
    return {v, v, PathStatus::open, x, x};
}

EndpointPath PathPool::append(const EndpointPath& p, Vertex v) {
    if (p.status != PathStatus::open) throw std::logic_error("cannot extend a closed path");
    int x = make(v);
    connect(p.node_b, x);
    return {p.endpoint_a, v, PathStatus::open, p.node_a, x};
}

EndpointPath PathPool::comb(const EndpointPath& p1, const EndpointPath& p2, Vertex v) {
    if (p1.status != PathStatus::open || p2.status != PathStatus::open)
        throw std::logic_error("comb needs two open paths");
    if (p1.endpoint_b == p2.endpoint_b) throw std::logic_error("comb of related paths");
    int x = make(v);
    connect(p1.node_b, x);
    connect(x, p2.node_b);
    return {p1.endpoint_a, p2.endpoint_a, PathStatus::closed, p1.node_a, p2.node_a};
}

std::vector<EndpointPath> PathPool::concat(std::span<const EndpointPath> paths, Vertex v) {
    if (paths.size() > 2) throw std::logic_error("concat of more than two paths");
    std::vector<EndpointPath> out;
    for (auto& p : paths) out.push_back(append(p, v));
    return out;
}

Path PathPool::expand(const EndpointPath& p) const {
    Path out;
    int prev = -1, cur = p.node_a;
    while (cur >= 0) {
        out.push_back(nodes_[cur].vertex);
        const auto& link = nodes_[cur].link;
        int next = link[0] != prev ? link[0] : link[1];
        if (next == prev) next = -1;
        prev = cur;
        cur = next;
    }
    return out;
}

std::pair<int, int> find_unrelated_pair(std::span<const EndpointPath> paths) {
    if (paths.size() < 3) throw std::logic_error("find_unrelated_pair needs at least three paths");
    if (paths[0].endpoint_b != paths[1].endpoint_b) return {0, 1};
    if (paths[0].endpoint_b != paths[2].endpoint_b) return {0, 2};
    throw std::logic_error("three paths arrive through the same child");
}

PathSystem solve_tree(const RootedTree& tree) {
    const int n = tree.vertex_count();
    if (n == 0) throw StructuralError("empty tree");
    PathSystem result;
    result.mode = Mode::cover;
    if (n == 1) {
        result.paths.push_back({tree.root});
        return result;
    }

    // Work in BFS order: the children of a vertex occupy consecutive
    // positions, so the paths they forward sit next to each other in memory.
    std::vector<Vertex> order;
    order.reserve(n);
    std::vector<int> first_child(n), child_count(n);
    order.push_back(tree.root);
    for (int i = 0; i < n; ++i) {
        const auto& kids = tree.children[order[i]];
        first_child[i] = static_cast<int>(order.size());
        child_count[i] = static_cast<int>(kids.size());
        order.insert(order.end(), kids.begin(), kids.end());
    }

    PathPool pool(3 * static_cast<std::size_t>(n));
    // Up to two open paths forwarded by every position.
    std::vector<EndpointPath> forwarded(2 * static_cast<std::size_t>(n));
    std::vector<unsigned char> forwarded_count(n, 0);
    std::vector<EndpointPath> closed, pending;

    for (int i = n - 1; i >= 0; --i) {
        const Vertex v = order[i];
        const int kids_begin = first_child[i], kids_end = kids_begin + child_count[i];
        if (i > 0 && child_count[i] == 0) {
            forwarded[2 * i] = pool.singleton(v);
            forwarded_count[i] = 1;
            continue;
        }
        pending.clear();
        for (int c = kids_begin; c < kids_end; ++c)
            for (int k = 0; k < forwarded_count[c]; ++k) pending.push_back(forwarded[2 * c + k]);

        if (i == 0) {
            // Pair across children so that no two paths through the same child meet
            // here: lay out the two-path children first, set aside one path if the
            // total is odd, and pair position i with position i + half.
            std::vector<EndpointPath> layout;
            layout.reserve(pending.size());
            for (int pass = 2; pass >= 1; --pass)
                for (int c = kids_begin; c < kids_end; ++c)
                    if (forwarded_count[c] == pass)
                        for (int k = 0; k < pass; ++k) layout.push_back(forwarded[2 * c + k]);
            std::size_t first = layout.size() % 2;
            std::size_t half = (layout.size() - first) / 2;
            for (std::size_t k = 0; k < half; ++k)
                closed.push_back(pool.comb(layout[first + k], layout[first + half + k], v));
            if (first) {
                EndpointPath last = pool.append(layout[0], v);
                last.status = PathStatus::closed;
                closed.push_back(last);
            }
            break;
        }

        std::size_t head = 0;
        while (pending.size() - head > 2) {
            auto [a, b] = find_unrelated_pair(std::span(pending).subspan(head));
            closed.push_back(pool.comb(pending[head + a], pending[head + b], v));
            if (b == 2) pending[head + 2] = pending[head + 1];
            head += 2;
        }
        auto open = pool.concat(std::span(pending).subspan(head), v);
        forwarded_count[i] = static_cast<unsigned char>(open.size());
        for (std::size_t k = 0; k < open.size(); ++k) forwarded[2 * i + k] = open[k];
    }

    result.paths.reserve(closed.size());
    for (auto& p : closed) result.paths.push_back(pool.expand(p));
    return result;
}

PathSystem solve_tree(const Graph& g) { return solve_tree(RootedTree::from_graph(g)); }

}  // namespace pathcover
