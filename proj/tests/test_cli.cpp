#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pathcover/cli.hpp"
#include "pathcover/cover_dp.hpp"
#include "pathcover/generators.hpp"
#include "pathcover/pace_io.hpp"

using namespace pathcover;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "pathcover");
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("pathcover_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write(const std::string& name, const std::string& text) {
    fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("cover and tree on a star") {
        const std::string gr = write("star5.gr", write_gr(star(5)));
        auto cover = run_cli({"cover", "--graph", gr});
        REQUIRE(cover.code == cli::kOk);
        auto j = parse(cover);
        CHECK(j["size"] == 3);
        CHECK(j["feasible"] == true);
        CHECK(j["width_source"] == "heuristic");
        CHECK(cover.err.find("heuristic") != std::string::npos);
        CHECK_FALSE(j.contains("time_ms"));

        auto tree = run_cli({"tree", "--graph", gr});
        REQUIRE(tree.code == cli::kOk);
        CHECK(parse(tree)["size"] == 3);

        auto part = run_cli({"partition", "--graph", gr});
        CHECK(parse(part)["size"] == 4);

        auto csv = run_cli({"cover", "--graph", gr, "--format", "csv"});
        CHECK(csv.out.rfind("solver,mode,n,kappa,feasible,size,width,width_source,peak_states\n", 0) == 0);

        auto timed = run_cli({"cover", "--graph", gr, "--timing"});
        CHECK(parse(timed).contains("time_ms"));
        auto tables = run_cli({"cover", "--graph", gr, "--dump-tables"});
        CHECK(parse(tables)["tables"].size() == 1);
    }

    TEST_CASE("validate") {
        const std::string gr = write("p4.gr", write_gr(path_graph(4)));
        const std::string good = write("good.json", R"({"mode": "partition", "paths": [[0, 1, 2, 3]]})");
        const std::string bad = write("bad.json", "[[0, 2], [1, 3]]");
        const std::string td = write("p4.td", "s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n");
        const std::string broken_td = write("bad.td", "s td 2 2 4\nb 1 1 2\nb 2 3 4\n1 2\n");
        CHECK(run_cli({"validate", "--graph", gr}).code == cli::kOk);
        CHECK(run_cli({"validate", "--graph", gr, "--paths", good, "--td", td}).code == cli::kOk);
        auto r = run_cli({"validate", "--graph", gr, "--paths", bad});
        CHECK(r.code == cli::kInvalid);
        CHECK(parse(r)["paths"]["violation"] == "missing_edge");
        CHECK(run_cli({"validate", "--graph", gr, "--td", broken_td}).code == cli::kInvalid);
        const std::string junk = write("junk.json", "{not json");
        CHECK(run_cli({"validate", "--graph", gr, "--paths", junk}).code == cli::kInputError);
    }

    TEST_CASE("partition-cc is deterministic") {
        const std::string gr = write("c6.gr", write_gr(cycle_graph(6)));
        auto a = run_cli({"partition-cc", "--graph", gr, "--seed", "5"});
        auto b = run_cli({"partition-cc", "--graph", gr, "--seed", "5"});
        REQUIRE(a.code == cli::kOk);
        CHECK(a.out == b.out);
        CHECK(parse(a)["size"] == 1);
        auto decide = run_cli({"partition-cc", "--graph", gr, "--k", "1", "--seed", "5"});
        CHECK(parse(decide)["answer"] == "yes");
        CHECK(parse(decide)["reps"] == 20);
    }

    TEST_CASE("exit codes") {
        const std::string gr = write("c5.gr", write_gr(cycle_graph(5)));
        const std::string star_gr = write("star4.gr", write_gr(star(4)));
        CHECK(run_cli({"cover", "--graph", gr, "--k", "2"}).code == cli::kInputError);
        CHECK(run_cli({"cover", "--graph", write("bad.gr", "p tw 2 1\n1 5\n")}).code == cli::kInputError);
        CHECK(run_cli({"cover", "--graph", (scratch() / "absent.gr").string()}).code == cli::kInputError);
        CHECK(run_cli({"tree", "--graph", gr}).code == cli::kInputError);
        auto inf = run_cli({"cover", "--graph", star_gr, "--kappa", "1"});
        CHECK(inf.code == cli::kInfeasible);
        CHECK(parse(inf)["feasible"] == false);
        CHECK(run_cli({"cover", "--graph", star_gr, "--kappa", "2"}).code == cli::kOk);
        CHECK(run_cli({"oracle", "--graph", gr, "--max-vertices", "4"}).code == cli::kInputError);
        CHECK(run_cli({"frobnicate"}).code == cli::kInputError);
        CHECK(run_cli({"cover", "--help"}).code == cli::kOk);
    }

    TEST_CASE("oracle") {
        const std::string gr = write("k4.gr", write_gr(complete_graph(4)));
        auto r = run_cli({"oracle", "--graph", gr});
        CHECK(parse(r)["size"] == 1);
        auto induced = run_cli({"oracle", "--graph", gr, "--mode", "partition", "--induced"});
        CHECK(parse(induced)["size"] == 2);
    }

    TEST_CASE("gen") {
        auto r = run_cli({"gen", "--kind", "star", "--n", "5"});
        REQUIRE(r.code == cli::kOk);
        std::istringstream in(r.out);
        CHECK(read_gr(in) == star(5));

        const std::string out = (scratch() / "fig.gr").string(), td = (scratch() / "fig.td").string();
        auto fig = run_cli({"gen", "--kind", "figure2", "--s", "3", "--out", out, "--td-out", td});
        REQUIRE(fig.code == cli::kOk);
        CHECK(parse(fig)["width"] == 2);
        Graph g = read_gr_file(out);
        CHECK(validate_decomposition(g, read_td_file(td)));
        CHECK(run_cli({"gen", "--kind", "star", "--n", "-1"}).code == cli::kInputError);
    }

    TEST_CASE("generators") {
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            Graph t = random_tree(1 + static_cast<int>(seed % 30), seed);
            CHECK(is_tree(t));
        }
        CHECK(random_tree(20, 3) == random_tree(20, 3));
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const int t = 1 + static_cast<int>(seed % 4);
            Instance inst = random_tw_graph(t + 1 + static_cast<int>(seed % 15), t, 0.3, seed);
            CHECK(connected_components(inst.graph).size() == 1);
            REQUIRE(inst.decomposition);
            CHECK(validate_decomposition(inst.graph, *inst.decomposition));
            CHECK(inst.decomposition->width() <= t);
        }
        for (int s = 1; s <= 4; ++s) {
            Instance fig = figure2(s);
            REQUIRE(fig.decomposition);
            CHECK(validate_decomposition(fig.graph, *fig.decomposition));
            CHECK(fig.decomposition->width() == 2);
            CHECK(fig.decomposition->bags[fig.central_bag].size() == 2);
        }
        CHECK_THROWS_AS(figure2(0), InputError);
        CHECK_THROWS_AS(random_tw_graph(5, 0, 0.5, 1), InputError);
    }

    TEST_CASE("bench") {
        auto empty = run_cli({"bench", "--suite", "empty"});
        CHECK(empty.code == cli::kOk);
        CHECK(empty.out == "instance,solver,size,time_ms,peak_states\n");

        auto fig = run_cli({"bench", "--suite", "figure2", "--sizes", "2", "3"});
        REQUIRE(fig.code == cli::kOk);
        std::istringstream in(fig.out);
        std::string line;
        std::getline(in, line);
        std::map<std::string, std::vector<long long>> peaks;
        while (std::getline(in, line)) {
            std::vector<std::string> cells;
            std::stringstream ss(line);
            for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
            REQUIRE(cells.size() == 5);
            peaks[cells[1]].push_back(std::stoll(cells[4]));
        }
        REQUIRE(peaks["cover-dp"].size() == 2);
        CHECK(peaks["cover-dp"][0] < peaks["cover-dp"][1]);
        // Partition tables on width-2 bags never exceed the local state count.
        Graph k3 = complete_graph(3);
        const auto local = enumerate_states(k3, std::vector<Vertex>{0, 1, 2}, 3, {}, Mode::partition).size();
        for (long long p : peaks["partition-dp"]) CHECK(p <= static_cast<long long>(local));
    }

    TEST_CASE("reports are reproducible") {
        const std::string gr = write("tw.gr", write_gr(random_tw_graph(10, 2, 0.5, 9).graph));
        for (const char* sub : {"cover", "partition", "oracle", "tree"}) {
            auto a = run_cli({sub, "--graph", gr});
            auto b = run_cli({sub, "--graph", gr});
            CHECK(a.out == b.out);
            CHECK(a.code == b.code);
        }
    }
}
