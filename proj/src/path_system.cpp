#include "pathcover/path_system.hpp"

#include <algorithm>
#include <map>

namespace pathcover {

std::string_view to_string(Mode mode) {
    return mode == Mode::cover ? "cover" : "partition";
}

std::string_view to_string(Violation violation) {
    switch (violation) {
        case Violation::none: return "none";
        case Violation::empty_path: return "empty_path";
        case Violation::repeated_vertex: return "repeated_vertex";
        case Violation::missing_edge: return "missing_edge";
        case Violation::uncovered_vertex: return "uncovered_vertex";
        case Violation::shared_vertex: return "shared_vertex";
        case Violation::chord: return "chord";
        case Violation::shared_edge: return "shared_edge";
    }
    return "unknown";
}

namespace {

ValidationResult check_path(const Graph& g, std::span<const Vertex> path, std::vector<int>& stamp, int id) {
    if (path.empty()) return {Violation::empty_path, "path " + std::to_string(id) + " is empty"};
    for (std::size_t i = 0; i < path.size(); ++i) {
        Vertex v = path[i];
        if (!g.contains(v))
            return {Violation::missing_edge, "vertex " + std::to_string(v) + " out of range"};
        if (stamp[v] == id)
            return {Violation::repeated_vertex, "vertex " + std::to_string(v) + " repeated in path " + std::to_string(id)};
        stamp[v] = id;
        if (i > 0 && !g.has_edge(path[i - 1], v))
            return {Violation::missing_edge,
                    "no edge " + std::to_string(path[i - 1]) + "-" + std::to_string(v) + " in path " + std::to_string(id)};
    }
    return {};
}

}  // namespace

bool validate_path(const Graph& g, std::span<const Vertex> path) {
    for (Vertex v : path)
        if (!g.contains(v)) throw InputError("vertex " + std::to_string(v) + " out of range");
    std::vector<int> stamp(g.vertex_count(), -1);
    return check_path(g, path, stamp, 0).ok();
}

ValidationResult validate_system(const Graph& g, const PathSystem& system) {
    std::vector<int> stamp(g.vertex_count(), -1);
    std::vector<int> hits(g.vertex_count(), 0);
    std::map<Edge, int> edge_use;
    for (int id = 0; id < system.size(); ++id) {
        const Path& p = system.paths[id];
        if (auto r = check_path(g, p, stamp, id); !r) return r;
        for (Vertex v : p) ++hits[v];
        if (system.variant.induced) {
            for (std::size_t i = 0; i < p.size(); ++i)
                for (std::size_t j = i + 2; j < p.size(); ++j)
                    if (g.has_edge(p[i], p[j]))
                        return {Violation::chord, "chord " + std::to_string(p[i]) + "-" + std::to_string(p[j]) +
                                                      " in path " + std::to_string(id)};
        }
        if (system.variant.edge_disjoint) {
            for (std::size_t i = 1; i < p.size(); ++i)
                if (++edge_use[make_edge(p[i - 1], p[i])] > 1)
                    return {Violation::shared_edge, "edge " + std::to_string(p[i - 1]) + "-" + std::to_string(p[i]) +
                                                        " used twice"};
        }
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (hits[v] == 0) return {Violation::uncovered_vertex, "vertex " + std::to_string(v) + " uncovered"};
        if (system.mode == Mode::partition && hits[v] > 1)
            return {Violation::shared_vertex, "vertex " + std::to_string(v) + " on " + std::to_string(hits[v]) + " paths"};
    }
    return {};
}

nlohmann::json to_json(const PathSystem& system) {
    nlohmann::json j;
    j["mode"] = to_string(system.mode);
    j["paths"] = system.paths;
    j["size"] = system.size();
    return j;
}

void normalize(PathSystem& system) {
    for (auto& p : system.paths)
        if (p.size() > 1 && p.front() > p.back()) std::reverse(p.begin(), p.end());
    std::sort(system.paths.begin(), system.paths.end());
}

}  // namespace pathcover
