#pragma once

#include "json.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathcover/graph.hpp"

namespace pathcover {

using Path = std::vector<Vertex>;

enum class Mode { cover, partition };

/// Extra constraints on solution paths. Both may be combined.
struct Variant {
    bool induced = false;        // no chord inside any path
    bool edge_disjoint = false;  // no graph edge used by two paths

    friend bool operator==(const Variant&, const Variant&) = default;
};

struct PathSystem {
    std::vector<Path> paths;
    Mode mode = Mode::cover;
    Variant variant;

    int size() const { return static_cast<int>(paths.size()); }
};

enum class Violation {
    none,
    empty_path,
    repeated_vertex,
    missing_edge,
    uncovered_vertex,
    shared_vertex,
    chord,
    shared_edge,
};

struct ValidationResult {
    Violation violation = Violation::none;
    std::string detail;

    bool ok() const { return violation == Violation::none; }
    explicit operator bool() const { return ok(); }
};

std::string_view to_string(Mode mode);
std::string_view to_string(Violation violation);

/// True iff `path` is a nonempty sequence of distinct, consecutively adjacent
/// vertices. Throws InputError if an id is out of range.
bool validate_path(const Graph& g, std::span<const Vertex> path);

/// Checks every constraint implied by the system's mode and variant.
/// Never throws; out-of-range ids are reported as missing_edge.
ValidationResult validate_system(const Graph& g, const PathSystem& system);

/// {"mode": ..., "paths": [[...], ...], "size": k}
nlohmann::json to_json(const PathSystem& system);

/// Sorts paths (and orients each so its first vertex is smaller than its
/// last) for stable output.
void normalize(PathSystem& system);

}  // namespace pathcover
