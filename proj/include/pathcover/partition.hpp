#pragma once

#include <cstdint>
#include <vector>

#include "pathcover/cover_dp.hpp"
#include "pathcover/decomposition.hpp"
#include "pathcover/graph.hpp"

namespace pathcover {

/// Exact minimum path partition (DP over bag partitions into ordered paths).
SolveResult solve_partition_dp(const Graph& g, const SolveOptions& options = {});

/// Random weights on vertices and edges, uniform in 1..N with N = 2(|E|+|V|).
struct WeightAssignment {
    int N = 0;
    std::vector<int> vertex;  // by vertex id
    std::vector<int> edge;    // by Graph::edge_index

    friend bool operator==(const WeightAssignment&, const WeightAssignment&) = default;
};

/// Vertex weights are drawn first (by id), then edge weights (by index).
WeightAssignment sample_weights(const Graph& g, std::uint64_t seed);

/// Degree of a bag vertex in the chosen edge set, plus its cut side for
/// degrees 0 and 1.
enum class DegreeSide : std::uint8_t { zero_1, zero_2, one_1, one_2, two };

inline int degree_of(DegreeSide s) { return s == DegreeSide::two ? 2 : static_cast<int>(s) / 2; }
inline int side_of(DegreeSide s) { return s == DegreeSide::two ? 0 : static_cast<int>(s) % 2 + 1; }

/// Root parities: bit (i, w) is the parity of the number of
/// (edge set, marker set, consistent cut) triples with i markers and weight w.
class ParityTable {
public:
    ParityTable(int max_markers, int max_weight);

    int max_markers() const { return max_markers_; }
    int max_weight() const { return max_weight_; }
    bool odd(int markers, int weight) const;
    void flip(int markers, int weight);
    /// Weights with odd parity for the given marker count.
    std::vector<int> odd_weights(int markers) const;

private:
    int max_markers_, max_weight_, words_;
    std::vector<std::uint64_t> bits_;
};

/// Counting DP over an advanced nice decomposition. Markers are placed at
/// forget nodes, on cut side 1, and only on vertices of degree at most 1.
/// Throws InputError if some edge of g has no introduce-edge node.
ParityTable count_parity(const Graph& g, const NiceTreeDecomposition& antd, const WeightAssignment& w, int k);

struct DecideResult {
    bool yes = false;
    int k = 0;
    int reps = 0;
    int per_run_hits = 0;  // repetitions that found an odd weight
};

/// Monte-Carlo test for a path partition with at most k paths. Never answers
/// yes wrongly; a no may be wrong with probability at most 2^-reps.
DecideResult decide_partition(const Graph& g, const NiceTreeDecomposition& antd, int k, int reps, std::uint64_t seed);

struct CcOptions {
    int reps = 20;
    std::uint64_t seed = 0;
    const TreeDecomposition* decomposition = nullptr;  // heuristic if null
};

/// Builds the advanced nice decomposition of g from `td` (or the heuristic).
NiceTreeDecomposition advanced_decomposition(const Graph& g, const TreeDecomposition* td);

/// Smallest k with a yes answer, scanned per connected component and summed.
/// May overestimate with small probability, never underestimates.
int min_partition_cc(const Graph& g, const CcOptions& options = {});

}  // namespace pathcover
