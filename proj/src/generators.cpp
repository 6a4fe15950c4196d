#include "pathcover/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "pathcover/random.hpp"

namespace pathcover {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw InputError(what);
}

}  // namespace

Graph star(int leaves) {
    require(leaves >= 0, "star needs a non-negative leaf count");
    std::vector<Edge> edges;
    for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
    return Graph(leaves + 1, edges);
}

Graph path_graph(int n) {
    require(n >= 1, "path needs at least one vertex");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return Graph(n, edges);
}

Graph cycle_graph(int n) {
    require(n >= 3, "cycle needs at least three vertices");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    edges.push_back({0, n - 1});
    return Graph(n, edges);
}

Graph complete_graph(int n) {
    require(n >= 1, "complete graph needs at least one vertex");
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
    return Graph(n, edges);
}

Graph random_tree(int n, std::uint64_t seed) {
    require(n >= 1, "tree needs at least one vertex");
    std::mt19937_64 rng(seed);
    std::vector<Vertex> label(n);
    std::iota(label.begin(), label.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(label[i], label[uniform_int(rng, 0, i)]);
    std::vector<Edge> edges;
    edges.reserve(n);
    for (int i = 1; i < n; ++i) edges.push_back(make_edge(label[i], label[uniform_int(rng, 0, i - 1)]));
    return Graph(n, edges);
}

Instance random_tw_graph(int n, int t, double density, std::uint64_t seed) {
    require(n >= 1, "graph needs at least one vertex");
    require(t >= 1, "width must be at least 1");
    require(density >= 0 && density <= 1, "density must lie in [0, 1]");
    std::mt19937_64 rng(seed);
    auto coin = [&] { return static_cast<double>(uniform_int(rng, 0, (1 << 30) - 1)) / (1 << 30) < density; };

    TreeDecomposition td;
    td.vertex_count = n;
    const int base = std::min(n, t + 1);
    std::vector<Edge> all;
    std::vector<Vertex> first(base);
    std::iota(first.begin(), first.end(), 0);
    td.bags.push_back(first);
    for (int i = 0; i < base; ++i)
        for (int j = i + 1; j < base; ++j) all.push_back({i, j});
    // Each new vertex joins a random t-subset of a random existing bag.
    for (int v = base; v < n; ++v) {
        const int host = static_cast<int>(uniform_int(rng, 0, td.node_count() - 1));
        std::vector<Vertex> clique = td.bags[host];
        if (static_cast<int>(clique.size()) > t) clique.erase(clique.begin() + uniform_int(rng, 0, clique.size() - 1));
        for (Vertex u : clique) all.push_back(make_edge(u, v));
        clique.push_back(v);
        td.bags.push_back(clique);
        td.tree_edges.push_back({host, td.node_count() - 1});
    }

    // Random spanning tree by shuffled Kruskal, then the rest by coin flips.
    for (int i = static_cast<int>(all.size()) - 1; i > 0; --i) std::swap(all[i], all[uniform_int(rng, 0, i)]);
    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int x) {
        while (root[x] != x) x = root[x] = root[root[x]];
        return x;
    };
    std::vector<Edge> kept;
    for (auto e : all) {
        const int a = find(e.first), b = find(e.second);
        if (a != b) {
            root[a] = b;
            kept.push_back(e);
        } else if (coin()) {
            kept.push_back(e);
        }
    }
    return {Graph(n, kept), td, -1};
}

Instance figure2(int s, int blocks) {
    require(s >= 1, "figure2 needs at least one strand");
    if (blocks == 0) blocks = std::max(s, 5);
    require(blocks >= 1, "figure2 needs at least one block");
    constexpr int inner = 2;
    const int block_size = 2 + s * inner;
    const int n = blocks * block_size;
    std::vector<Edge> edges;
    TreeDecomposition td;
    td.vertex_count = n;
    std::vector<int> hub(blocks);
    for (int b = 0; b < blocks; ++b) {
        const Vertex a = b * block_size, c = a + 1;
        hub[b] = td.node_count();
        td.bags.push_back({a, c});
        for (int j = 0; j < s; ++j) {
            const Vertex x = a + 2 + j * inner;
            edges.push_back(make_edge(a, x));
            for (int i = 0; i + 1 < inner; ++i) edges.push_back({x + i, x + i + 1});
            edges.push_back(make_edge(x + inner - 1, c));
            // {a, c, x0} - {c, x0, x1} - ... hanging off the hub.
            int prev = hub[b];
            td.bags.push_back({a, c, x});
            td.tree_edges.push_back({prev, td.node_count() - 1});
            prev = td.node_count() - 1;
            for (int i = 0; i + 1 < inner; ++i) {
                td.bags.push_back({c, x + i, x + i + 1});
                td.tree_edges.push_back({prev, td.node_count() - 1});
                prev = td.node_count() - 1;
            }
        }
        if (b > 0) {
            const Vertex left = (b - 1) * block_size + 1;
            edges.push_back(make_edge(left, a));
            td.bags.push_back({left, a});
            td.tree_edges.push_back({hub[b - 1], td.node_count() - 1});
            td.tree_edges.push_back({td.node_count() - 1, hub[b]});
        }
    }
    std::sort(edges.begin(), edges.end());
    return {Graph(n, edges), td, hub[blocks / 2]};
}

}  // namespace pathcover
