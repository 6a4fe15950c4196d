#include "pathcover/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>

namespace pathcover {

namespace {

using Mask = std::uint64_t;

void check_budget(const Graph& g, const OracleBudget& budget) {
    if (g.vertex_count() > budget.max_vertices || g.vertex_count() > 63)
        throw OracleRefusal("oracle refuses " + std::to_string(g.vertex_count()) + " vertices (budget " +
                            std::to_string(budget.max_vertices) + ")");
}

Mask bit(int v) { return Mask{1} << v; }

struct Candidate {
    Mask vertices = 0;
    Mask edges = 0;
    Path path;
};

// Every simple path, once per direction class, as a candidate.
std::vector<Candidate> all_paths(const Graph& g, bool induced, long long max_paths) {
    const int n = g.vertex_count();
    if (g.edge_count() > 64) throw OracleRefusal("oracle refuses more than 64 edges");
    std::vector<Mask> nbr(n, 0);
    for (auto [u, v] : g.edges()) {
        nbr[u] |= bit(v);
        nbr[v] |= bit(u);
    }
    std::vector<Candidate> out;
    Path current;
    auto dfs = [&](auto&& self, Mask used, Mask edges) -> void {
        if (current.size() == 1 || current.front() < current.back()) {
            if (static_cast<long long>(out.size()) >= max_paths) throw OracleRefusal("oracle path budget exceeded");
            out.push_back({used, edges, current});
        }
        const Vertex last = current.back();
        for (Vertex w : g.neighbors(last)) {
            if (used & bit(w)) continue;
            // An induced path may touch only its last vertex.
            if (induced && (nbr[w] & used & ~bit(last))) continue;
            current.push_back(w);
            self(self, used | bit(w), edges | bit(g.edge_index(last, w)));
            current.pop_back();
        }
    };
    for (Vertex s = 0; s < n; ++s) {
        current.assign(1, s);
        dfs(dfs, bit(s), 0);
    }
    return out;
}

// Drops candidates that another candidate dominates: a superset of vertices
// (and, when edges matter, a subset of edges). Swapping in the dominating
// path never breaks a cover.
std::vector<Candidate> prune_dominated(std::vector<Candidate> all, bool edges_matter) {
    if (!edges_matter) {
        std::unordered_map<Mask, std::size_t> first;
        std::vector<Candidate> unique;
        for (auto& c : all)
            if (first.emplace(c.vertices, unique.size()).second) unique.push_back(std::move(c));
        std::sort(unique.begin(), unique.end(),
                  [](const Candidate& a, const Candidate& b) { return std::popcount(a.vertices) > std::popcount(b.vertices); });
        std::vector<Candidate> kept;
        for (auto& c : unique) {
            bool dominated = false;
            for (auto& k : kept)
                if ((c.vertices & ~k.vertices) == 0) {
                    dominated = true;
                    break;
                }
            if (!dominated) kept.push_back(std::move(c));
        }
        return kept;
    }
    std::vector<Candidate> kept;
    for (std::size_t i = 0; i < all.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < all.size() && !dominated; ++j) {
            if (i == j) continue;
            bool covers = (all[i].vertices & ~all[j].vertices) == 0 && (all[j].edges & ~all[i].edges) == 0;
            bool same = all[i].vertices == all[j].vertices && all[i].edges == all[j].edges;
            // Among identical pairs keep the first one.
            if (covers && (!same || j < i)) dominated = true;
        }
        if (!dominated) kept.push_back(all[i]);
    }
    return kept;
}

}  // namespace

OracleResult brute_pathcover(const Graph& g, Variant variant, OracleBudget budget) {
    check_budget(g, budget);
    const int n = g.vertex_count();
    OracleResult result;
    result.witness.mode = Mode::cover;
    result.witness.variant = variant;
    if (n == 0) return result;

    auto candidates = prune_dominated(all_paths(g, variant.induced, budget.max_paths), variant.edge_disjoint);
    std::vector<std::vector<int>> containing(n);
    for (int i = 0; i < static_cast<int>(candidates.size()); ++i)
        for (Vertex v = 0; v < n; ++v)
            if (candidates[i].vertices & bit(v)) containing[v].push_back(i);

    const Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
    // Largest remaining budget known to fail from a (covered, used edges) position.
    std::unordered_map<Mask, int> fail_plain;
    std::unordered_map<Mask, std::unordered_map<Mask, int>> fail_edges;
    std::vector<int> chosen;
    auto search = [&](auto&& self, Mask covered, Mask used, int left) -> bool {
        if (covered == all) return true;
        if (left == 0) return false;
        int& failed = variant.edge_disjoint ? fail_edges[covered][used] : fail_plain[covered];
        if (failed >= left) return false;
        const Vertex u = std::countr_zero(~covered);
        for (int i : containing[u]) {
            const auto& c = candidates[i];
            if (variant.edge_disjoint && (c.edges & used)) continue;
            chosen.push_back(i);
            if (self(self, covered | c.vertices, used | c.edges, left - 1)) return true;
            chosen.pop_back();
        }
        int& again = variant.edge_disjoint ? fail_edges[covered][used] : fail_plain[covered];
        again = std::max(again, left);
        return false;
    };
    for (int k = 1; k <= n; ++k) {
        chosen.clear();
        if (search(search, 0, 0, k)) {
            result.size = k;
            for (int i : chosen) result.witness.paths.push_back(candidates[i].path);
            return result;
        }
    }
    throw std::logic_error("cover oracle found no cover");
}

OracleResult brute_pathpartition(const Graph& g, Variant variant, OracleBudget budget) {
    check_budget(g, budget);
    const int n = g.vertex_count();
    OracleResult result;
    result.witness.mode = Mode::partition;
    result.witness.variant = variant;
    if (n == 0) return result;
    if (n > 24) throw OracleRefusal("partition oracle refuses more than 24 vertices");

    const std::size_t subsets = std::size_t{1} << n;
    std::vector<std::uint32_t> nbr(n, 0);
    for (auto [u, v] : g.edges()) {
        nbr[u] |= 1u << v;
        nbr[v] |= 1u << u;
    }
    // ends[S]: vertices where a Hamiltonian path of G[S] can end.
    std::vector<std::uint32_t> ends(subsets, 0);
    for (int v = 0; v < n; ++v) ends[std::size_t{1} << v] = 1u << v;
    for (std::size_t s = 1; s < subsets; ++s) {
        for (std::uint32_t e = ends[s]; e; e &= e - 1) {
            const int v = std::countr_zero(e);
            for (std::uint32_t nx = nbr[v] & ~static_cast<std::uint32_t>(s); nx; nx &= nx - 1) {
                const int w = std::countr_zero(nx);
                ends[s | (std::size_t{1} << w)] |= 1u << w;
            }
        }
    }
    auto usable = [&](std::size_t s) {
        if (!ends[s]) return false;
        if (!variant.induced) return true;
        int edges = 0;
        for (std::uint32_t r = static_cast<std::uint32_t>(s); r; r &= r - 1)
            edges += std::popcount(nbr[std::countr_zero(r)] & static_cast<std::uint32_t>(s));
        return edges / 2 == std::popcount(s) - 1;
    };
    std::vector<char> ok(subsets, 0);
    for (std::size_t s = 1; s < subsets; ++s) ok[s] = usable(s);

    const int inf = n + 1;
    std::vector<int> best(subsets, inf);
    std::vector<std::uint32_t> piece(subsets, 0);
    best[0] = 0;
    for (std::size_t s = 1; s < subsets; ++s) {
        const std::uint32_t low = static_cast<std::uint32_t>(s & (~s + 1));
        const std::uint32_t rest = static_cast<std::uint32_t>(s) ^ low;
        // Submasks of s that contain its lowest vertex.
        for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
            const std::uint32_t part = sub | low;
            if (ok[part] && best[s ^ part] + 1 < best[s]) {
                best[s] = best[s ^ part] + 1;
                piece[s] = part;
            }
            if (sub == 0) break;
        }
    }

    // Rebuild each piece's path by walking the end table backwards.
    auto trace = [&](std::uint32_t part) {
        Path p;
        std::uint32_t s = part;
        int v = std::countr_zero(ends[s]);
        while (true) {
            p.push_back(v);
            const std::uint32_t prev = s & ~(1u << v);
            if (!prev) break;
            int next = -1;
            for (std::uint32_t e = ends[prev] & nbr[v]; e; e &= e - 1) {
                next = std::countr_zero(e);
                break;
            }
            s = prev;
            v = next;
        }
        return p;
    };
    result.size = best[subsets - 1];
    for (std::size_t s = subsets - 1; s; s ^= piece[s]) result.witness.paths.push_back(trace(piece[s]));
    return result;
}

RscCounts enumerate_rsc(const Graph& g, const WeightAssignment& w, int k, bool endpoint_markers) {
    const int n = g.vertex_count(), m = g.edge_count();
    if (n > 6) throw OracleRefusal("enumerate_rsc refuses more than 6 vertices");
    if (static_cast<int>(w.vertex.size()) != n || static_cast<int>(w.edge.size()) != m)
        throw InputError("weight assignment does not match the graph");
    RscCounts out;
    out.max_weight = (k + n) * w.N;
    for (auto* v : {&out.r, &out.s, &out.c, &out.c_raw, &out.weighted}) v->assign(out.max_weight + 1, 0);

    for (std::uint32_t pset = 0; pset < (1u << m); ++pset) {
        std::vector<int> degree(n, 0);
        int p_weight = 0;
        for (int e = 0; e < m; ++e)
            if (pset >> e & 1) {
                ++degree[g.edges()[e].first];
                ++degree[g.edges()[e].second];
                p_weight += w.edge[e];
            }
        if (std::any_of(degree.begin(), degree.end(), [](int d) { return d > 2; })) continue;

        // Components of (V, P) by repeated relabelling; small n.
        std::vector<int> comp(n);
        for (int v = 0; v < n; ++v) comp[v] = v;
        for (bool changed = true; changed;) {
            changed = false;
            for (int e = 0; e < m; ++e)
                if (pset >> e & 1) {
                    auto [a, b] = g.edges()[e];
                    int lo = std::min(comp[a], comp[b]);
                    if (comp[a] != lo || comp[b] != lo) {
                        comp[a] = comp[b] = lo;
                        changed = true;
                    }
                }
        }
        int components = 0;
        for (int v = 0; v < n; ++v) components += comp[v] == v;
        const bool acyclic = std::popcount(pset) == n - components;

        for (std::uint32_t mset = 0; mset < (1u << n); ++mset) {
            if (std::popcount(mset) != k) continue;
            bool allowed = true;
            int weight = p_weight;
            for (int v = 0; v < n; ++v)
                if (mset >> v & 1) {
                    if (endpoint_markers && degree[v] > 1) allowed = false;
                    weight += w.vertex[v];
                }
            if (!allowed) continue;
            // Components without a marker.
            std::vector<char> marked(n, 0);
            for (int v = 0; v < n; ++v)
                if (mset >> v & 1) marked[comp[v]] = 1;
            int unmarked = 0;
            for (int v = 0; v < n; ++v) unmarked += comp[v] == v && !marked[v];

            long long cuts = 0;
            for (std::uint32_t side2 = 0; side2 < (1u << n); ++side2) {
                if (side2 & mset) continue;
                bool consistent = true;
                for (int e = 0; e < m && consistent; ++e)
                    if (pset >> e & 1) {
                        auto [a, b] = g.edges()[e];
                        if ((side2 >> a & 1) != (side2 >> b & 1)) consistent = false;
                    }
                cuts += consistent;
            }
            out.c_raw[weight] += cuts;
            if (!acyclic) continue;
            out.r[weight] += 1;
            out.c[weight] += cuts;
            out.weighted[weight] += 1LL << unmarked;
            if (unmarked == 0) out.s[weight] += 1;
        }
    }
    return out;
}

}  // namespace pathcover
