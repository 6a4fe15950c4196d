#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "pathcover/decomposition.hpp"
#include "pathcover/generators.hpp"

using namespace pathcover;
using pathcover::testing::make_graph;

namespace {

NiceNode make_node(NodeKind kind, std::vector<Vertex> bag, Vertex v, std::vector<int> children) {
    NiceNode node;
    node.kind = kind;
    node.bag = std::move(bag);
    node.vertex = v;
    node.children = std::move(children);
    return node;
}

// Leaf, introduce 0, 1, 2, forget 0, 1, 2.
std::vector<NiceNode> k3_chain() {
    std::vector<NiceNode> nodes{
        make_node(NodeKind::leaf, {}, -1, {}),
        make_node(NodeKind::introduce, {0}, 0, {0}),
        make_node(NodeKind::introduce, {0, 1}, 1, {1}),
        make_node(NodeKind::introduce, {0, 1, 2}, 2, {2}),
        make_node(NodeKind::forget, {1, 2}, 0, {3}),
        make_node(NodeKind::forget, {2}, 1, {4}),
        make_node(NodeKind::forget, {}, 2, {5}),
    };
    for (int i = 0; i + 1 < static_cast<int>(nodes.size()); ++i) nodes[i].parent = i + 1;
    return nodes;
}

int count_kind(const NiceTreeDecomposition& ntd, NodeKind kind) {
    int c = 0;
    for (auto& node : ntd.nodes()) c += node.kind == kind;
    return c;
}

}  // namespace

TEST_SUITE("decomposition") {
    TEST_CASE("validation") {
        Graph p3 = path_graph(3);
        TreeDecomposition td{3, {{0, 1}, {1, 2}}, {{0, 1}}};
        CHECK(validate_decomposition(p3, td));
        CHECK(td.width() == 1);

        Graph c4 = cycle_graph(4);
        TreeDecomposition split{4, {{0, 1}, {2, 3}}, {{0, 1}}};
        auto why = check_decomposition(c4, split);
        CHECK_FALSE(why.ok);
        CHECK_FALSE(why.reason.empty());

        Graph k4 = complete_graph(4);
        TreeDecomposition one{4, {{0, 1, 2, 3}}, {}};
        CHECK(validate_decomposition(k4, one));
        CHECK(one.width() == 3);

        // Vertex 1 appears in two bags that the tree does not connect through it.
        TreeDecomposition gap{3, {{0, 1}, {0, 2}, {1, 2}}, {{0, 1}, {1, 2}}};
        CHECK_FALSE(validate_decomposition(p3, gap));
        // Not a tree.
        TreeDecomposition cyclic{3, {{0, 1}, {1, 2}, {1}}, {{0, 1}, {1, 2}, {2, 0}}};
        CHECK_FALSE(validate_decomposition(p3, cyclic));
        // Vertex 2 missing.
        TreeDecomposition missing{3, {{0, 1}}, {}};
        CHECK_FALSE(validate_decomposition(p3, missing));
    }

    TEST_CASE("hand-built nice chain") {
        Graph k3 = complete_graph(3);
        NiceTreeDecomposition ntd(k3_chain());
        CHECK(check_nice(ntd, k3, false).empty());
        CHECK(ntd.width() == 2);
        CHECK(ntd.root() == 6);
        CHECK(ntd.forget_nodes(3) == std::vector<int>{4, 5, 6});

        auto bad = k3_chain();
        bad[4].vertex = 1;  // the bag says 0 is forgotten
        CHECK_FALSE(check_nice(NiceTreeDecomposition(bad), k3, false).empty());
        auto nonempty_root = k3_chain();
        nonempty_root.pop_back();
        CHECK_FALSE(check_nice(NiceTreeDecomposition(nonempty_root), k3, false).empty());

        auto adv = to_advanced_nice(ntd, k3);
        CHECK(check_nice(adv, k3, true).empty());
        CHECK(count_kind(adv, NodeKind::introduce_edge) == 3);
        CHECK(check_nice(ntd, k3, true) != "");
    }

    TEST_CASE("edge nodes") {
        Graph p3 = path_graph(3);
        auto adv = to_advanced_nice(to_nice(heuristic_decomposition(p3)), p3);
        CHECK(count_kind(adv, NodeKind::introduce_edge) == 2);
        CHECK(adv.has_edge_nodes());
    }

    TEST_CASE("random decompositions are valid and nice") {
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const int n = 3 + static_cast<int>(seed % 12);
            const int t = 1 + static_cast<int>(seed % 3);
            if (n <= t) continue;
            Instance inst = random_tw_graph(n, t, 0.5, seed);
            const Graph& g = inst.graph;
            CAPTURE(seed);
            TreeDecomposition td = heuristic_decomposition(g);
            REQUIRE(validate_decomposition(g, td));
            NiceTreeDecomposition ntd = to_nice(td);
            CHECK(check_nice(ntd, g, false).empty());
            CHECK(ntd.width() == td.width());
            auto adv = to_advanced_nice(ntd, g);
            CHECK(check_nice(adv, g, true).empty());
            std::map<Edge, int> seen;
            for (auto& node : adv.nodes())
                if (node.kind == NodeKind::introduce_edge) ++seen[node.edge];
            CHECK(static_cast<int>(seen.size()) == g.edge_count());
            for (auto& [e, c] : seen) CHECK(c == 1);

            // The planted decomposition is valid too and converts the same way.
            REQUIRE(inst.decomposition);
            CHECK(validate_decomposition(g, *inst.decomposition));
            CHECK(check_nice(to_nice(*inst.decomposition), g, false).empty());
        }
    }

    TEST_CASE("heuristic widths") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed)
            CHECK(heuristic_decomposition(random_tree(15, seed)).width() == 1);
        for (int n = 3; n <= 12; ++n) CHECK(heuristic_decomposition(cycle_graph(n)).width() == 2);
        CHECK(heuristic_decomposition(complete_graph(5)).width() == 4);
        CHECK(heuristic_decomposition(Graph(3)).width() == 0);
    }

    TEST_CASE("separator check") {
        Graph p4 = path_graph(4);
        TreeDecomposition td{4, {{0, 1}, {1, 2}, {2, 3}}, {{0, 1}, {1, 2}}};
        CHECK(separator_check(p4, td, 0, 1));
        CHECK(separator_check(p4, td, 1, 2));
        CHECK_THROWS_AS(separator_check(p4, td, 0, 2), InputError);

        // Edge 0-3 lies on no bag, so {1} no longer separates 0 from 2 and 3.
        Graph c4 = cycle_graph(4);
        CHECK_FALSE(separator_check(c4, td, 0, 1));
    }

    TEST_CASE("restrict") {
        Graph c5 = cycle_graph(5);
        TreeDecomposition td = heuristic_decomposition(c5);
        std::vector<Vertex> keep{1, 2, 3};
        TreeDecomposition sub = restrict_decomposition(td, keep);
        CHECK(sub.vertex_count == 3);
        CHECK(validate_decomposition(induced_subgraph(c5, keep), sub));
        std::vector<Vertex> bad{7};
        CHECK_THROWS_AS(restrict_decomposition(td, bad), InputError);
    }
}
