#include "catalog.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "pathcover/generators.hpp"
#include "pathcover/oracle.hpp"

using namespace pathcover;

TEST_SUITE("oracle") {
    TEST_CASE("known values") {
        CHECK(brute_pathcover(star(5)).size == 3);
        CHECK(brute_pathcover(complete_graph(4)).size == 1);
        CHECK(brute_pathcover(Graph(0)).size == 0);
        CHECK(brute_pathpartition(star(4)).size == 3);
        CHECK(brute_pathpartition(cycle_graph(6)).size == 1);
        CHECK(brute_pathpartition(Graph(1)).size == 1);
        // A triangle is one path, but no induced path holds all three vertices.
        CHECK(brute_pathcover(complete_graph(3), {true, false}).size == 2);
        CHECK(brute_pathpartition(complete_graph(3), {true, false}).size == 2);
        // The star K1,4 with edge-disjoint paths still needs only 2.
        CHECK(brute_pathcover(star(4), {false, true}).size == 2);
    }

    TEST_CASE("refusal") {
        CHECK_THROWS_AS(brute_pathcover(path_graph(11)), OracleRefusal);
        CHECK_THROWS_AS(brute_pathpartition(path_graph(11)), OracleRefusal);
        CHECK_NOTHROW(brute_pathcover(path_graph(11), {}, {11, 5'000'000}));
        CHECK_THROWS_AS(brute_pathcover(complete_graph(9), {}, {10, 1000}), OracleRefusal);
        CHECK_THROWS_AS(brute_pathpartition(path_graph(25), {}, {30, 1000}), OracleRefusal);
    }

    TEST_CASE("witnesses and ordering") {
        for (const Graph& g : pathcover::testing::connected_graphs_up_to(6))
            for (bool induced : {false, true}) {
                Variant v{induced, false};
                auto cover = brute_pathcover(g, v);
                auto part = brute_pathpartition(g, v);
                CHECK(cover.size <= part.size);
                CHECK(cover.witness.size() == cover.size);
                CHECK(part.witness.size() == part.size);
                CHECK(validate_system(g, cover.witness).ok());
                CHECK(validate_system(g, part.witness).ok());
                auto disjoint = brute_pathcover(g, {induced, true});
                CHECK(disjoint.size >= cover.size);
                CHECK(disjoint.size <= part.size);
                CHECK(validate_system(g, disjoint.witness).ok());
            }
    }
}
