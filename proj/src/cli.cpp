#include "pathcover/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pathcover/cover_dp.hpp"
#include "pathcover/decomposition.hpp"
#include "pathcover/generators.hpp"
#include "pathcover/oracle.hpp"
#include "pathcover/pace_io.hpp"
#include "pathcover/partition.hpp"
#include "pathcover/random.hpp"
#include "pathcover/tree_solver.hpp"

namespace pathcover::cli {

namespace {

using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Config {
    std::string graph, td, paths, out, td_out;
    std::string kind = "random_tree", format = "json", bench_format = "csv", mode = "cover", suite = "empty";
    bool induced = false, edge_disjoint = false, timing = false, dump_tables = false;
    int kappa = 0, k = 0, reps = 20, max_vertices = 10;
    int n = 10, t = 2, s = 2, blocks = 0;
    double density = 0.5;
    std::uint64_t seed = 0;
    std::vector<int> sizes;
    CLI::Option* kappa_opt = nullptr;
    CLI::Option* k_opt = nullptr;
    CLI::Option* sizes_opt = nullptr;
};

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t default_seed() {
    const char* env = std::getenv("PATHCOVER_SEED");
    if (!env || !*env) return 0;
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(env, &used);
        if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw InputError(std::string("PATHCOVER_SEED is not an unsigned integer: ") + env);
}

Variant variant_of(const Config& c) { return Variant{c.induced, c.edge_disjoint}; }

Json variant_json(Variant v) { return Json{{"induced", v.induced}, {"edge_disjoint", v.edge_disjoint}}; }

Json paths_json(const PathSystem& ps) {
    PathSystem copy = ps;
    normalize(copy);
    return Json(copy.paths);
}

std::optional<TreeDecomposition> load_td(const Config& c) {
    if (c.td.empty()) return std::nullopt;
    return read_td_file(c.td);
}

// Widest heuristic decomposition over the components, as the solvers build it.
int heuristic_width(const Graph& g) {
    int width = -1;
    for (const auto& comp : connected_components(g))
        width = std::max(width, heuristic_decomposition(induced_subgraph(g, comp)).width());
    return width;
}

void add_width(Json& report, const SolveResult& r) {
    report["width"] = r.width;
    report["width_source"] = r.width_from_input ? "input" : "heuristic";
}

void note_heuristic(std::ostream& err, bool from_input, int width) {
    if (!from_input) err << "note: no --td given; using heuristic decomposition of width " << width << "\n";
}

std::string csv_value(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void emit(const Config& c, const Json& report, std::ostream& out) {
    if (c.format == "csv") {
        std::string header, row;
        for (auto it = report.begin(); it != report.end(); ++it) {
            if (it.value().is_structured()) continue;
            header += (header.empty() ? "" : ",") + it.key();
            row += (row.empty() ? "" : ",") + csv_value(it.value());
        }
        out << header << "\n" << row << "\n";
    } else {
        out << report.dump(2) << "\n";
    }
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

int cmd_tree(const Config& c, std::ostream& out) {
    Graph g = read_gr_file(c.graph);
    const auto start = Clock::now();
    PathSystem ps = solve_tree(g);
    const double ms = elapsed_ms(start);
    Json report{{"solver", "tree"}, {"n", g.vertex_count()}, {"size", ps.size()}, {"witness", paths_json(ps)}};
    if (c.timing) report["time_ms"] = ms;
    emit(c, report, out);
    return kOk;
}

Json dump_cover_tables(const Graph& g, const Config& c, const TreeDecomposition* td, Mode mode) {
    Json tables = Json::array();
    auto components = connected_components(g);
    const int others = static_cast<int>(components.size()) - 1;
    for (const auto& comp : components) {
        Graph sub = induced_subgraph(g, comp);
        NiceTreeDecomposition ntd = to_nice(td ? restrict_decomposition(*td, comp) : heuristic_decomposition(sub));
        DpOptions dp{mode, variant_of(c), sub.vertex_count()};
        if (mode == Mode::partition) dp.variant.edge_disjoint = false;
        if (mode == Mode::cover && c.kappa_opt->count()) dp.bound = std::min(dp.bound, c.kappa - others);
        if (dp.bound < 1) break;
        CoverDp solver(sub, ntd, dp);
        solver.run();
        tables.push_back(Json{{"vertices", comp}, {"tables", Json(solver.dump_tables())}});
    }
    return tables;
}

int cmd_dp(const Config& c, Mode mode, std::ostream& out, std::ostream& err) {
    Graph g = read_gr_file(c.graph);
    auto td = load_td(c);
    SolveOptions options;
    options.variant = variant_of(c);
    if (mode == Mode::partition) options.variant.edge_disjoint = false;
    if (c.kappa_opt && c.kappa_opt->count()) options.kappa = c.kappa;
    options.decomposition = td ? &*td : nullptr;
    const auto start = Clock::now();
    SolveResult r = solve_by_components(g, mode, options);
    const double ms = elapsed_ms(start);
    note_heuristic(err, r.width_from_input, r.width);

    Json report{{"solver", mode == Mode::cover ? "cover-dp" : "partition-dp"},
                {"mode", to_string(mode)},
                {"variant", variant_json(options.variant)},
                {"n", g.vertex_count()}};
    if (mode == Mode::cover) report["kappa"] = options.kappa.value_or(g.vertex_count());
    report["feasible"] = r.feasible;
    if (r.feasible) {
        report["size"] = r.size;
        report["witness"] = paths_json(r.witness);
    }
    add_width(report, r);
    report["peak_states"] = r.stats.peak_states;
    report["stats"] = Json(to_json(r.stats));
    if (c.timing) report["time_ms"] = ms;
    if (c.dump_tables) report["tables"] = dump_cover_tables(g, c, options.decomposition, mode);
    emit(c, report, out);
    if (!r.feasible) {
        err << "infeasible: no path cover with at most " << options.kappa.value_or(g.vertex_count()) << " paths\n";
        return kInfeasible;
    }
    return kOk;
}

int cmd_partition_cc(const Config& c, std::ostream& out, std::ostream& err) {
    Graph g = read_gr_file(c.graph);
    auto td = load_td(c);
    if (c.reps < 1) throw InputError("--reps must be at least 1");
    const int width = td ? td->width() : heuristic_width(g);
    if (td) {
        if (auto check = check_decomposition(g, *td); !check) throw InputError("invalid decomposition: " + check.reason);
    }
    note_heuristic(err, td.has_value(), width);
    const auto start = Clock::now();
    Json report;
    if (c.k_opt->count()) {
        auto antd = advanced_decomposition(g, td ? &*td : nullptr);
        DecideResult d = decide_partition(g, antd, c.k, c.reps, c.seed);
        report = Json{{"answer", d.yes ? "yes" : "no"}, {"k", d.k}, {"reps", d.reps}, {"per_run_hits", d.per_run_hits}};
    } else {
        CcOptions options{c.reps, c.seed, td ? &*td : nullptr};
        report = Json{{"solver", "partition-cc"}, {"size", min_partition_cc(g, options)}, {"reps", c.reps}};
    }
    report["seed"] = c.seed;
    report["width"] = width;
    report["width_source"] = td ? "input" : "heuristic";
    if (c.timing) report["time_ms"] = elapsed_ms(start);
    emit(c, report, out);
    return kOk;
}

int cmd_oracle(const Config& c, std::ostream& out) {
    Graph g = read_gr_file(c.graph);
    OracleBudget budget;
    budget.max_vertices = c.max_vertices;
    const auto start = Clock::now();
    const bool cover = c.mode == "cover";
    OracleResult r = cover ? brute_pathcover(g, variant_of(c), budget) : brute_pathpartition(g, variant_of(c), budget);
    Json report{{"solver", "oracle"}, {"mode", c.mode}, {"variant", variant_json(variant_of(c))},
                {"n", g.vertex_count()}, {"size", r.size}, {"witness", paths_json(r.witness)}};
    if (c.timing) report["time_ms"] = elapsed_ms(start);
    emit(c, report, out);
    return kOk;
}

Instance generate(const Config& c) {
    if (c.kind == "star") return {star(c.n), std::nullopt, -1};
    if (c.kind == "path") return {path_graph(c.n), std::nullopt, -1};
    if (c.kind == "cycle") return {cycle_graph(c.n), std::nullopt, -1};
    if (c.kind == "complete") return {complete_graph(c.n), std::nullopt, -1};
    if (c.kind == "random_tree") return {random_tree(c.n, c.seed), std::nullopt, -1};
    if (c.kind == "random_tw_graph") return random_tw_graph(c.n, c.t, c.density, c.seed);
    if (c.kind == "figure2") return figure2(c.s, c.blocks);
    throw InputError("unknown generator kind: " + c.kind);
}

int cmd_gen(const Config& c, std::ostream& out) {
    Instance inst = generate(c);
    const std::string gr = write_gr(inst.graph);
    if (!c.td_out.empty()) {
        const TreeDecomposition td = inst.decomposition ? *inst.decomposition : heuristic_decomposition(inst.graph);
        write_file(c.td_out, write_td(td));
    }
    if (c.out.empty()) {
        out << gr;
        return kOk;
    }
    write_file(c.out, gr);
    Json report{{"kind", c.kind}, {"n", inst.graph.vertex_count()}, {"m", inst.graph.edge_count()}};
    if (inst.decomposition) report["width"] = inst.decomposition->width();
    if (inst.central_bag >= 0) report["central_bag"] = inst.central_bag + 1;  // 1-based, as in .td
    emit(c, report, out);
    return kOk;
}

struct BenchRow {
    std::string instance, solver;
    int size;
    double time_ms;
    long long peak_states;
};

int cmd_bench(const Config& c, std::ostream& out) {
    std::vector<BenchRow> rows;
    auto timed = [&](const std::string& instance, const std::string& solver, auto&& fn) {
        const auto start = Clock::now();
        auto [size, peak] = fn();
        rows.push_back({instance, solver, size, elapsed_ms(start), peak});
    };
    auto dp_run = [](const Graph& g, Mode mode, const TreeDecomposition* td) {
        SolveOptions o;
        o.decomposition = td;
        SolveResult r = solve_by_components(g, mode, o);
        return std::pair<int, long long>{r.size, r.stats.peak_states};
    };
    auto sizes = [&](std::vector<int> fallback) { return c.sizes_opt->count() ? c.sizes : fallback; };

    if (c.suite == "tree") {
        for (int n : sizes({10000, 100000, 1000000})) {
            Graph g = random_tree(n, derive_seed(c.seed, static_cast<std::uint64_t>(n)));
            timed("tree-" + std::to_string(n), "tree", [&] {
                return std::pair<int, long long>{solve_tree(g).size(), 0};
            });
        }
    } else if (c.suite == "figure2") {
        for (int s : sizes({2, 3, 4})) {
            Instance inst = figure2(s);
            const std::string name = "figure2-" + std::to_string(s);
            timed(name, "cover-dp", [&] { return dp_run(inst.graph, Mode::cover, &*inst.decomposition); });
            timed(name, "partition-dp", [&] { return dp_run(inst.graph, Mode::partition, &*inst.decomposition); });
        }
    } else if (c.suite == "random-tw") {
        for (int n : sizes({8, 10, 12})) {
            Instance inst = random_tw_graph(n, 3, c.density, derive_seed(c.seed, static_cast<std::uint64_t>(n)));
            const std::string name = "tw3-" + std::to_string(n);
            timed(name, "cover-dp", [&] { return dp_run(inst.graph, Mode::cover, &*inst.decomposition); });
            timed(name, "partition-dp", [&] { return dp_run(inst.graph, Mode::partition, &*inst.decomposition); });
            timed(name, "partition-cc", [&] {
                CcOptions o{c.reps, c.seed, &*inst.decomposition};
                return std::pair<int, long long>{min_partition_cc(inst.graph, o), 0};
            });
        }
    } else if (c.suite != "empty") {
        throw InputError("unknown bench suite: " + c.suite);
    }

    if (c.bench_format == "json") {
        Json all = Json::array();
        for (const auto& r : rows)
            all.push_back(Json{{"instance", r.instance}, {"solver", r.solver}, {"size", r.size},
                               {"time_ms", r.time_ms}, {"peak_states", r.peak_states}});
        out << all.dump(2) << "\n";
        return kOk;
    }
    out << "instance,solver,size,time_ms,peak_states\n";
    for (const auto& r : rows) {
        std::ostringstream time;
        time.setf(std::ios::fixed);
        time.precision(3);
        time << r.time_ms;
        out << r.instance << "," << r.solver << "," << r.size << "," << time.str() << "," << r.peak_states << "\n";
    }
    return kOk;
}

PathSystem read_paths(const std::string& path, Variant variant) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    PathSystem ps;
    ps.variant = variant;
    const nlohmann::json* list = &j;
    if (j.is_object()) {
        if (!j.contains("paths")) throw InputError(path + ": missing \"paths\"");
        list = &j["paths"];
        const std::string mode = j.value("mode", "cover");
        if (mode == "partition") ps.mode = Mode::partition;
        else if (mode != "cover") throw InputError(path + ": unknown mode " + mode);
    }
    try {
        ps.paths = list->get<std::vector<Path>>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": paths must be arrays of vertex ids");
    }
    return ps;
}

int cmd_validate(const Config& c, std::ostream& out) {
    Graph g = read_gr_file(c.graph);
    Json report{{"graph", Json{{"n", g.vertex_count()}, {"m", g.edge_count()}}}};
    bool ok = true;
    if (auto td = load_td(c)) {
        auto check = check_decomposition(g, *td);
        Json d{{"valid", check.ok}, {"width", td->width()}};
        if (!check.ok) d["reason"] = check.reason;
        report["decomposition"] = d;
        ok = ok && check.ok;
    }
    if (!c.paths.empty()) {
        PathSystem ps = read_paths(c.paths, variant_of(c));
        auto v = validate_system(g, ps);
        Json p{{"valid", v.violation == Violation::none}, {"mode", to_string(ps.mode)}, {"size", ps.size()}};
        if (v.violation != Violation::none) {
            p["violation"] = to_string(v.violation);
            p["detail"] = v.detail;
        }
        report["paths"] = p;
        ok = ok && v.violation == Violation::none;
    }
    report["valid"] = ok;
    emit(c, report, out);
    return ok ? kOk : kInvalid;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Minimum path cover and path partition solvers"};
    app.name(args.empty() ? "pathcover" : args[0]);
    app.require_subcommand(1);

    try {
        c.seed = default_seed();
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    auto format = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    };
    auto graph = [&](CLI::App* sub, bool required) {
        auto* o = sub->add_option("--graph", c.graph, "Input graph (.gr)");
        if (required) o->required();
    };
    auto variants = [&](CLI::App* sub) {
        sub->add_flag("--induced", c.induced, "Only induced paths");
        sub->add_flag("--edge-disjoint", c.edge_disjoint, "Paths must not share edges");
    };
    auto timing = [&](CLI::App* sub) { sub->add_flag("--timing", c.timing, "Report wall time"); };

    auto* tree = app.add_subcommand("tree", "Linear-time cover of a tree");
    graph(tree, true);
    format(tree);
    timing(tree);

    auto* cover = app.add_subcommand("cover", "Minimum path cover by tree-decomposition DP");
    graph(cover, true);
    cover->add_option("--td", c.td, "Tree decomposition (.td)");
    variants(cover);
    c.kappa_opt = cover->add_option("--kappa", c.kappa, "Largest acceptable number of paths");
    cover->add_flag("--dump-tables", c.dump_tables, "Include every DP table in the report");
    format(cover);
    timing(cover);

    auto* partition = app.add_subcommand("partition", "Minimum path partition by tree-decomposition DP");
    graph(partition, true);
    partition->add_option("--td", c.td, "Tree decomposition (.td)");
    partition->add_flag("--induced", c.induced, "Only induced paths");
    partition->add_flag("--dump-tables", c.dump_tables, "Include every DP table in the report");
    format(partition);
    timing(partition);

    auto* cc = app.add_subcommand("partition-cc", "Randomized path partition test (Cut&Count)");
    graph(cc, true);
    cc->add_option("--td", c.td, "Tree decomposition (.td)");
    c.k_opt = cc->add_option("--k", c.k, "Decide whether at most k paths suffice");
    cc->add_option("--reps", c.reps, "Independent repetitions");
    cc->add_option("--seed", c.seed, "Random seed (default: PATHCOVER_SEED or 0)");
    format(cc);
    timing(cc);

    auto* oracle = app.add_subcommand("oracle", "Exhaustive reference solver");
    graph(oracle, true);
    oracle->add_option("--mode", c.mode, "Problem")->check(CLI::IsMember({"cover", "partition"}));
    variants(oracle);
    oracle->add_option("--max-vertices", c.max_vertices, "Refuse larger graphs");
    format(oracle);
    timing(oracle);

    auto* gen = app.add_subcommand("gen", "Generate an instance");
    gen->add_option("--kind", c.kind, "Instance family")
        ->check(CLI::IsMember({"random_tree", "random_tw_graph", "star", "path", "cycle", "complete", "figure2"}));
    gen->add_option("--n", c.n, "Vertices (leaves for star)");
    gen->add_option("--t", c.t, "Width of the underlying t-tree");
    gen->add_option("--density", c.density, "Probability of keeping a non-tree edge");
    gen->add_option("--s", c.s, "Strands per block (figure2)");
    gen->add_option("--blocks", c.blocks, "Blocks (figure2; 0 means max(s, 5))");
    gen->add_option("--seed", c.seed, "Random seed (default: PATHCOVER_SEED or 0)");
    gen->add_option("--out", c.out, "Write the graph here instead of stdout");
    gen->add_option("--td-out", c.td_out, "Write a decomposition here");
    format(gen);

    auto* bench = app.add_subcommand("bench", "Run a benchmark suite and print CSV");
    bench->add_option("--suite", c.suite, "Suite")->check(CLI::IsMember({"empty", "tree", "figure2", "random-tw"}));
    c.sizes_opt = bench->add_option("--sizes", c.sizes, "Instance sizes (n, or s for figure2)");
    bench->add_option("--seed", c.seed, "Random seed (default: PATHCOVER_SEED or 0)");
    bench->add_option("--reps", c.reps, "Repetitions for partition-cc");
    bench->add_option("--density", c.density, "Edge density for random-tw");
    bench->add_option("--format", c.bench_format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    auto* validate = app.add_subcommand("validate", "Check a graph, decomposition, or path system");
    graph(validate, true);
    validate->add_option("--td", c.td, "Tree decomposition (.td)");
    validate->add_option("--paths", c.paths, "Path system (JSON)");
    variants(validate);
    format(validate);

    try {
        std::vector<std::string> rest(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (tree->parsed()) return cmd_tree(c, out);
        if (cover->parsed()) return cmd_dp(c, Mode::cover, out, err);
        if (partition->parsed()) return cmd_dp(c, Mode::partition, out, err);
        if (cc->parsed()) return cmd_partition_cc(c, out, err);
        if (oracle->parsed()) return cmd_oracle(c, out);
        if (gen->parsed()) return cmd_gen(c, out);
        if (bench->parsed()) return cmd_bench(c, out);
        if (validate->parsed()) return cmd_validate(c, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const StructuralError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const OracleRefusal& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}

}  // namespace pathcover::cli
