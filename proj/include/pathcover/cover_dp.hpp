#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "pathcover/decomposition.hpp"
#include "pathcover/graph.hpp"
#include "pathcover/path_system.hpp"

namespace pathcover {

// How a solution path continues next to a bag vertex. `edge` is a graph edge
// to the neighbouring bag vertex; `down` runs through forgotten vertices;
// `up` through vertices that are not introduced yet; `none` ends the path.
enum class Link : std::uint8_t { none, edge, down, up };

// The ten neighbour types: multisets of size <= 2 over {dash, up, down}.
enum class NeighborType : std::uint8_t {
    empty, dash, dash_dash, up, down, up_up, down_down, down_up, up_dash, down_dash,
};

std::string_view to_string(Link link);
std::string_view to_string(NeighborType type);
NeighborType neighbor_type(Link a, Link b);

/// Intersection of one solution path with a bag: the bag vertices in path
/// order, the link between each consecutive pair, and the links beyond
/// the two ends.
struct PartialPath {
    std::vector<Vertex> vertices;
    std::vector<Link> gaps;  // gaps[i] joins vertices[i] and vertices[i+1]
    Link head = Link::none;
    Link tail = Link::none;

    int size() const { return static_cast<int>(vertices.size()); }
    NeighborType type_at(int i) const;
    int up_links() const;
    /// Orients the path so that the front vertex is smaller than the back one
    /// (for one vertex: head <= tail).
    void canonicalize();

    friend auto operator<=>(const PartialPath&, const PartialPath&) = default;
};

struct PathClass {
    PartialPath path;
    int count = 1;

    friend auto operator<=>(const PathClass&, const PathClass&) = default;
};

/// A DP state: distinct partial paths sorted ascending, each with a copy count.
using DpState = std::vector<PathClass>;

int copy_count(const DpState& state);

struct DpStateHash {
    std::size_t operator()(const DpState& state) const;
};

struct DpEntry {
    DpState state;
    int value = 0;
    int child_a = -1;  // index into the (first) child's table
    int child_b = -1;  // index into the second child's table (join only)
};

/// Sparse table of one node; absent states are infinite.
class DpTable {
public:
    /// Inserts or improves; returns true if the table changed.
    bool relax(DpState state, int value, int child_a, int child_b);
    int find(const DpState& state) const;
    const std::vector<DpEntry>& entries() const { return entries_; }
    int size() const { return static_cast<int>(entries_.size()); }

private:
    std::vector<DpEntry> entries_;
    std::unordered_map<DpState, int, DpStateHash> index_;
};

struct DpOptions {
    Mode mode = Mode::cover;
    Variant variant;
    int bound = 0;  // largest admissible solution size (copies and value)
};

struct DpStats {
    int nodes = 0;
    int peak_states = 0;
    long long total_states = 0;
};

nlohmann::json to_json(const DpStats& stats);

/// Bottom-up dynamic program over a nice decomposition. In cover mode a
/// state may hold several copies of a partial path; in partition mode every
/// bag vertex lies on exactly one copy and all counts are 1.
class CoverDp {
public:
    CoverDp(const Graph& g, const NiceTreeDecomposition& ntd, DpOptions options);
    ~CoverDp();
    CoverDp(const CoverDp&) = delete;
    CoverDp& operator=(const CoverDp&) = delete;

    DpTable process_leaf(int node) const;
    DpTable process_introduce(int node, const DpTable& child) const;
    DpTable process_forget(int node, const DpTable& child) const;
    DpTable process_join(int node, const DpTable& left, const DpTable& right) const;

    /// Processes every node bottom-up.
    void run();
    /// Root value, or nullopt when no solution within the bound exists.
    std::optional<int> optimum() const;
    /// Witness for optimum(); requires run() and a feasible root.
    PathSystem witness() const;

    const DpTable& table(int node) const { return tables_[node]; }
    DpStats stats() const;
    nlohmann::json dump_tables() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::vector<DpTable> tables_;
};

/// Every locally consistent state over `bag` with at most `max_copies`
/// copies: all bag vertices covered (exactly once in partition mode), dash
/// links only between graph-adjacent vertices, no in-bag chords for the
/// induced variant, no repeated dash link for the edge-disjoint variant.
/// Sorted ascending. Exponential; intended for tiny bags.
std::vector<DpState> enumerate_states(const Graph& g, std::span<const Vertex> bag, int max_copies, Variant variant,
                                      Mode mode = Mode::cover);

struct SolveOptions {
    Variant variant;
    std::optional<int> kappa;        // defaults to n
    bool partition_bound = true;     // cap the bound search with an optimal partition
    const TreeDecomposition* decomposition = nullptr;  // heuristic if null
};

struct SolveResult {
    bool feasible = false;
    int size = 0;  // minimum when feasible
    PathSystem witness;
    int width = -1;
    bool width_from_input = false;
    DpStats stats;
};

/// Runs the DP in the given mode on every connected component and sums the
/// optima; the witness is relabelled to g's ids. In cover mode the result is
/// infeasible when the minimum exceeds kappa.
SolveResult solve_by_components(const Graph& g, Mode mode, const SolveOptions& options);

/// Minimum path cover no larger than kappa.
SolveResult solve_pathcover(const Graph& g, const SolveOptions& options = {});

/// Runs the DP once on a given nice decomposition of g (no component split).
SolveResult solve_on_decomposition(const Graph& g, const NiceTreeDecomposition& ntd, DpOptions options);

}  // namespace pathcover
