// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Tolerances are pinned below.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "catalog.hpp"
#include "pathcover/cover_dp.hpp"
#include "pathcover/generators.hpp"
#include "pathcover/oracle.hpp"
#include "pathcover/partition.hpp"
#include "pathcover/random.hpp"
#include "pathcover/tree_solver.hpp"

using namespace pathcover;
using pathcover::testing::all_trees;
using pathcover::testing::connected_graphs_up_to;

namespace {

constexpr int kRandomTrees = 1000;
constexpr double kLinearityRatio = 20.0;
constexpr int kRandomTwGraphs = 500;
constexpr int kParitySeeds = 10;
constexpr int kMinTriples = 1000;
constexpr int kReps = 20;
constexpr double kMinHitRate = 0.45;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void fail(const std::string& why) {
        if (pass) detail << "first failure: " << why << "; ";
        pass = false;
    }
};

int failures = 0;

void report(int id, Outcome& o, Clock::time_point start) {
    std::printf("criterion %d: %s %s(%.1f s)\n", id, o.pass ? "PASS" : "FAIL", o.detail.str().c_str(),
                seconds_since(start));
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

std::string describe(const Graph& g) {
    std::ostringstream s;
    s << "n=" << g.vertex_count() << " edges";
    for (auto [u, v] : g.edges()) s << ' ' << u << '-' << v;
    return s.str();
}

int leaves(const Graph& g) {
    int l = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) l += g.degree(v) == 1;
    return l;
}

void check_tree(const Graph& g, Outcome& o) {
    PathSystem ps = solve_tree(g);
    const int want = (leaves(g) + 1) / 2;
    if (ps.size() != want) o.fail("tree " + describe(g) + " gave " + std::to_string(ps.size()));
    if (auto v = validate_system(g, ps); !v.ok()) o.fail("invalid tree cover: " + v.detail);
}

void criterion1() {
    const auto start = Clock::now();
    Outcome o;
    std::mt19937_64 rng(2024);
    for (int i = 0; i < kRandomTrees; ++i) {
        const int n = static_cast<int>(uniform_int(rng, 2, 200));
        check_tree(random_tree(n, static_cast<std::uint64_t>(i)), o);
    }
    int exhaustive = 0;
    for (int n = 2; n <= 10; ++n)
        for (const Graph& t : all_trees(n)) {
            ++exhaustive;
            check_tree(t, o);
            if (brute_pathcover(t).size != (leaves(t) + 1) / 2) o.fail("oracle disagrees on " + describe(t));
        }
    o.detail << kRandomTrees << " random trees, " << exhaustive << " trees with n<=10 ";
    report(1, o, start);
}

void criterion2() {
    const auto start = Clock::now();
    Outcome o;
    auto best_time = [](int n) {
        Graph g = random_tree(n, 7);
        double best = 1e9;
        for (int rep = 0; rep < 3; ++rep) {
            const auto t = Clock::now();
            PathSystem ps = solve_tree(g);
            best = std::min(best, seconds_since(t));
            if (ps.size() != (leaves(g) + 1) / 2) best = 1e9;
        }
        return best;
    };
    const double small = best_time(100'000), large = best_time(1'000'000);
    const double ratio = large / small;
    if (!(ratio <= kLinearityRatio)) o.fail("ratio above bound");
    o.detail << "t(1e5)=" << small << "s t(1e6)=" << large << "s ratio=" << ratio << " (bound " << kLinearityRatio
             << ") ";
    report(2, o, start);
}

void criterion3() {
    const auto start = Clock::now();
    Outcome o;
    const auto graphs = connected_graphs_up_to(7);
    const Variant variants[] = {{false, false}, {true, false}, {false, true}};
    for (Variant v : variants)
        for (const Graph& g : graphs) {
            SolveOptions opt;
            opt.variant = v;
            auto dp = solve_pathcover(g, opt);
            auto oracle = brute_pathcover(g, v);
            if (!dp.feasible || dp.size != oracle.size)
                o.fail("size mismatch on " + describe(g) + " induced=" + std::to_string(v.induced) +
                       " edge_disjoint=" + std::to_string(v.edge_disjoint));
            else if (auto check = validate_system(g, dp.witness); !check.ok())
                o.fail("invalid witness on " + describe(g) + ": " + check.detail);
        }
    int random = 0, attempts = 0;
    OracleBudget budget{12, 5'000'000};
    while (random < kRandomTwGraphs) {
        const std::uint64_t seed = static_cast<std::uint64_t>(attempts++);
        std::mt19937_64 rng(derive_seed(99, seed));
        const int n = static_cast<int>(uniform_int(rng, 4, 12));
        const int t = static_cast<int>(uniform_int(rng, 1, 3));
        const double density = static_cast<double>(uniform_int(rng, 1, 9)) / 10;
        Graph g = random_tw_graph(n, std::min(t, n - 1), density, seed).graph;
        if (heuristic_decomposition(g).width() > 3) continue;
        ++random;
        auto dp = solve_pathcover(g);
        auto oracle = brute_pathcover(g, {}, budget);
        if (dp.size != oracle.size) o.fail("size mismatch on " + describe(g));
        else if (!validate_system(g, dp.witness).ok()) o.fail("invalid witness on " + describe(g));
    }
    o.detail << graphs.size() << " graphs with n<=7 x 3 variants, " << random << " random width<=3 graphs with n<=12 ";
    report(3, o, start);
}

void criterion4() {
    const auto start = Clock::now();
    Outcome o;
    const auto graphs = connected_graphs_up_to(7);
    for (const Graph& g : graphs) {
        auto dp = solve_partition_dp(g);
        auto oracle = brute_pathpartition(g);
        if (dp.size != oracle.size) o.fail("size mismatch on " + describe(g));
        else if (!validate_system(g, dp.witness).ok()) o.fail("invalid witness on " + describe(g));
    }
    o.detail << graphs.size() << " graphs with n<=7 ";
    report(4, o, start);
}

void criterion5() {
    const auto start = Clock::now();
    Outcome o;
    long long compared = 0;
    const auto graphs = connected_graphs_up_to(5);
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const Graph& g = graphs[gi];
        auto antd = advanced_decomposition(g, nullptr);
        for (int k = 0; k <= g.vertex_count(); ++k)
            for (int s = 0; s < kParitySeeds; ++s) {
                auto w = sample_weights(g, derive_seed(gi * 100 + k, static_cast<std::uint64_t>(s)));
                auto rsc = enumerate_rsc(g, w, k);
                auto table = count_parity(g, antd, w, k);
                for (int x = 0; x <= rsc.max_weight; ++x) {
                    ++compared;
                    if (table.odd(k, x) != (rsc.s[x] % 2 != 0))
                        o.fail("parity mismatch on " + describe(g) + " k=" + std::to_string(k) + " w=" +
                               std::to_string(x));
                }
            }
    }
    o.detail << graphs.size() << " graphs, k=0..n, " << kParitySeeds << " seeds, " << compared << " weights compared ";
    report(5, o, start);
}

void criterion6() {
    const auto start = Clock::now();
    Outcome o;
    int no_triples = 0, yes_triples = 0, false_yes = 0, misses = 0;
    long long hits = 0;
    const auto graphs = connected_graphs_up_to(6);
    for (int seed = 0; no_triples < kMinTriples || yes_triples < kMinTriples; ++seed) {
        for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
            const Graph& g = graphs[gi];
            const int opt = brute_pathpartition(g).size;
            auto antd = advanced_decomposition(g, nullptr);
            for (int k = 1; k <= g.vertex_count(); ++k) {
                const bool truth = opt <= k;
                // Enough yes triples come from the first few seeds.
                if (truth && yes_triples >= kMinTriples) continue;
                if (!truth && no_triples >= kMinTriples) continue;
                auto d = decide_partition(g, antd, k, kReps, derive_seed(gi * 64 + k, static_cast<std::uint64_t>(seed)));
                if (truth) {
                    ++yes_triples;
                    hits += d.per_run_hits;
                    misses += !d.yes;
                } else {
                    ++no_triples;
                    false_yes += d.yes;
                }
            }
        }
    }
    const double rate = static_cast<double>(hits) / (static_cast<double>(yes_triples) * kReps);
    if (false_yes) o.fail(std::to_string(false_yes) + " false positives");
    if (rate < kMinHitRate) o.fail("single-run hit rate too low");
    if (misses) o.fail(std::to_string(misses) + " misses at r=" + std::to_string(kReps));
    o.detail << no_triples << " no-triples with " << false_yes << " false yes, " << yes_triples
             << " yes-triples with single-run hit rate " << rate << " (bound " << kMinHitRate << ") and " << misses
             << " misses at r=" << kReps << ' ';
    report(6, o, start);
}

void criterion7() {
    const auto start = Clock::now();
    Outcome o;
    for (int k = 2; k <= 8; ++k) {
        Graph g = star(k);
        const int cover = (k + 1) / 2, part = k - 1;
        const std::string name = "K1," + std::to_string(k);
        if (solve_tree(g).size() != cover) o.fail(name + " tree");
        if (solve_pathcover(g).size != cover) o.fail(name + " cover-dp");
        if (brute_pathcover(g).size != cover) o.fail(name + " cover oracle");
        if (solve_partition_dp(g).size != part) o.fail(name + " partition-dp");
        if (min_partition_cc(g) != part) o.fail(name + " partition-cc");
        if (brute_pathpartition(g).size != part) o.fail(name + " partition oracle");
    }
    o.detail << "stars K1,k for k=2..8: cover ceil(k/2), partition k-1 ";
    report(7, o, start);
}

// Figure 2 instrumentation.

using Mask = std::uint64_t;

std::vector<Mask> simple_path_masks(const Graph& g) {
    std::unordered_set<Mask> seen;
    std::vector<Mask> out;
    auto dfs = [&](auto&& self, Vertex v, Mask used) -> void {
        if (seen.insert(used).second) out.push_back(used);
        for (Vertex w : g.neighbors(v))
            if (!(used >> w & 1)) self(self, w, used | Mask{1} << w);
    };
    for (Vertex v = 0; v < g.vertex_count(); ++v) dfs(dfs, v, Mask{1} << v);
    return out;
}

std::vector<Mask> maximal(std::vector<Mask> masks) {
    std::sort(masks.begin(), masks.end(), [](Mask a, Mask b) { return std::popcount(a) > std::popcount(b); });
    std::vector<Mask> kept;
    for (Mask m : masks)
        if (std::none_of(kept.begin(), kept.end(), [&](Mask k) { return (m & ~k) == 0; })) kept.push_back(m);
    return kept;
}

// Fewest paths meeting `bag` over all covers with `size` paths. Touching
// paths may be replaced by any superset path, non-touching paths by any
// superset that still avoids the bag, so maximal ones suffice.
int min_touching(const Graph& g, Mask bag, int size) {
    const auto all = simple_path_masks(g);
    std::vector<Mask> touching, avoiding;
    for (Mask m : all) (m & bag ? touching : avoiding).push_back(m);
    std::vector<Mask> candidates = maximal(all);
    std::erase_if(candidates, [&](Mask m) { return !(m & bag); });
    const std::size_t touching_count = candidates.size();
    for (Mask m : maximal(avoiding)) candidates.push_back(m);

    const int n = g.vertex_count();
    const Mask full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    std::vector<std::vector<int>> containing(n);
    for (int i = 0; i < static_cast<int>(candidates.size()); ++i)
        for (Vertex v = 0; v < n; ++v)
            if (candidates[i] >> v & 1) containing[v].push_back(i);

    for (int limit = 0; limit <= size; ++limit) {
        std::unordered_map<Mask, int> failed;  // covered -> largest failing (paths left) * 64 + touching left
        auto search = [&](auto&& self, Mask covered, int left, int touch_left) -> bool {
            if (covered == full) return true;
            if (left == 0) return false;
            auto it = failed.find(covered);
            const int key = left * 64 + touch_left;
            if (it != failed.end() && it->second == key) return false;
            const Vertex u = std::countr_zero(~covered);
            for (int i : containing[u]) {
                const bool touches = static_cast<std::size_t>(i) < touching_count;
                if (touches && touch_left == 0) continue;
                if (self(self, covered | candidates[i], left - 1, touch_left - touches)) return true;
            }
            failed[covered] = key;
            return false;
        };
        if (search(search, 0, size, limit)) return limit;
    }
    return -1;
}

int touching(const PathSystem& ps, Mask bag) {
    int t = 0;
    for (const Path& p : ps.paths)
        t += std::any_of(p.begin(), p.end(), [&](Vertex v) { return bag >> v & 1; });
    return t;
}

void criterion8() {
    const auto start = Clock::now();
    Outcome o;
    struct Row {
        int dp, oracle, witness_dp, witness_oracle, exhaustive;
    };
    std::vector<Row> rows;
    for (int s : {2, 3}) {
        Instance inst = figure2(s);
        const Graph& g = inst.graph;
        if (inst.decomposition->width() != 2) o.fail("figure2 decomposition is not width 2");
        Mask bag = 0;
        for (Vertex v : inst.decomposition->bags[inst.central_bag]) bag |= Mask{1} << v;
        SolveOptions opt;
        opt.decomposition = &*inst.decomposition;
        auto dp = solve_pathcover(g, opt);
        auto oracle = brute_pathcover(g, {}, {g.vertex_count(), 5'000'000});
        if (!validate_system(g, dp.witness).ok()) o.fail("invalid DP witness");
        Row r{dp.size, oracle.size, touching(dp.witness, bag), touching(oracle.witness, bag),
              min_touching(g, bag, oracle.size)};
        if (r.dp != r.oracle) o.fail("DP and oracle optima differ for s=" + std::to_string(s));
        rows.push_back(r);
        o.detail << "s=" << s << ": n=" << g.vertex_count() << " opt=" << r.dp << "/" << r.oracle
                 << " paths through central bag: dp witness " << r.witness_dp << ", oracle witness "
                 << r.witness_oracle << ", minimum over optimal covers " << r.exhaustive << "; ";
    }
    if (!(rows[0].witness_dp < rows[1].witness_dp)) o.fail("DP witness count does not grow");
    if (!(rows[0].witness_oracle < rows[1].witness_oracle)) o.fail("oracle witness count does not grow");
    if (!(rows[0].exhaustive < rows[1].exhaustive)) o.fail("minimum count does not grow");
    report(8, o, start);
}

}  // namespace

int main(int argc, char** argv) {
    // Optional list of criteria to run, e.g. "acceptance 1 7".
    std::vector<std::function<void()>> all{criterion1, criterion2, criterion3, criterion4,
                                           criterion5, criterion6, criterion7, criterion8};
    std::vector<int> chosen;
    for (int i = 1; i < argc; ++i) chosen.push_back(std::atoi(argv[i]));
    if (chosen.empty())
        for (int i = 1; i <= 8; ++i) chosen.push_back(i);
    for (int id : chosen) {
        if (id < 1 || id > 8) {
            std::fprintf(stderr, "unknown criterion %d\n", id);
            return 2;
        }
        all[id - 1]();
    }
    std::printf("%d of %zu criteria failed\n", failures, chosen.size());
    return failures == 0 ? 0 : 1;
}
