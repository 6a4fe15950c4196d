#pragma once

#include <stdexcept>
#include <vector>

#include "pathcover/graph.hpp"
#include "pathcover/partition.hpp"
#include "pathcover/path_system.hpp"

namespace pathcover {

// Exhaustive solvers used as ground truth. They share no code with the
// tree, DP, or Cut&Count solvers.

struct OracleBudget {
    int max_vertices = 10;
    long long max_paths = 5'000'000;  // simple paths enumerated by the cover oracle
};

/// Thrown when an instance exceeds the oracle budget.
class OracleRefusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    int size = 0;
    PathSystem witness;
};

/// Enumerates every simple path (induced paths only for the induced
/// variant), then runs an iterative-deepening set cover search.
OracleResult brute_pathcover(const Graph& g, Variant variant = {}, OracleBudget budget = {});

/// Subset DP: which vertex sets carry a Hamiltonian path (an induced path for
/// the induced variant), then the cheapest split of V into such sets.
OracleResult brute_pathpartition(const Graph& g, Variant variant = {}, OracleBudget budget = {});

/// Per-weight family sizes for the Cut&Count argument, by direct enumeration
/// of (edge set P, marker set M) pairs and of cuts.
///   r: P is a path partition (max degree 2, no cycle), |M| = k.
///   s: the members of r in which every component of (V, P) has a marker.
///   c: members of r paired with a consistent cut (no P edge crosses, M on side 1).
///   c_raw: like c but P may contain cycles (max degree 2 only).
///   weighted: sum over members of r of 2^(unmarked components).
/// With endpoint_markers, markers are restricted to vertices of P-degree <= 1.
struct RscCounts {
    int max_weight = 0;
    std::vector<long long> r, s, c, c_raw, weighted;
};

RscCounts enumerate_rsc(const Graph& g, const WeightAssignment& w, int k, bool endpoint_markers = true);

}  // namespace pathcover
