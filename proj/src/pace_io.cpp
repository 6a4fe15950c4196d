#include "pathcover/pace_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace pathcover {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw InputError("line " + std::to_string(line) + ": " + what);
}

// Reads one whitespace-separated integer token; rejects trailing junk.
long long parse_int(const std::string& tok, int line) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(tok, &used);
    } catch (const std::exception&) {
        fail(line, "expected integer, got '" + tok + "'");
    }
    if (used != tok.size()) fail(line, "expected integer, got '" + tok + "'");
    return value;
}

std::vector<std::string> tokens(const std::string& text) {
    std::istringstream ss(text);
    std::vector<std::string> out;
    for (std::string t; ss >> t;) out.push_back(std::move(t));
    return out;
}

int to_index(long long one_based, long long limit, int line, const char* what) {
    if (one_based < 1 || one_based > limit)
        fail(line, std::string(what) + " " + std::to_string(one_based) + " out of range 1.." + std::to_string(limit));
    return static_cast<int>(one_based - 1);
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return in;
}

}  // namespace

Graph read_gr(std::istream& in) {
    std::string text;
    int line = 0;
    long long n = -1, m = -1;
    std::vector<Edge> edges;
    while (std::getline(in, text)) {
        ++line;
        auto tok = tokens(text);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (n >= 0) fail(line, "duplicate header");
            if (tok.size() != 4 || tok[1] != "tw") fail(line, "header must be 'p tw <n> <m>'");
            n = parse_int(tok[2], line);
            m = parse_int(tok[3], line);
            if (n < 0 || m < 0 || n > std::numeric_limits<int>::max()) fail(line, "bad header counts");
            edges.reserve(static_cast<std::size_t>(m));
            continue;
        }
        if (n < 0) fail(line, "edge before header");
        if (tok.size() != 2) fail(line, "edge line must have two ids");
        int u = to_index(parse_int(tok[0], line), n, line, "vertex");
        int v = to_index(parse_int(tok[1], line), n, line, "vertex");
        if (static_cast<long long>(edges.size()) == m) fail(line, "more edges than header declares");
        if (u == v) fail(line, "self-loop");
        edges.push_back(make_edge(u, v));
    }
    if (n < 0) throw InputError("missing 'p tw' header");
    if (static_cast<long long>(edges.size()) != m)
        throw InputError("header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    return Graph(static_cast<int>(n), edges);
}

Graph read_gr_file(const std::string& path) {
    auto in = open(path);
    return read_gr(in);
}

std::string write_gr(const Graph& g) {
    std::ostringstream out;
    out << "p tw " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

TreeDecomposition read_td(std::istream& in) {
    std::string text;
    int line = 0;
    long long nb = -1, maxbag = 0, n = 0;
    TreeDecomposition td;
    std::vector<char> seen;
    long long edges_left = 0;
    while (std::getline(in, text)) {
        ++line;
        auto tok = tokens(text);
        if (tok.empty() || tok[0] == "c") continue;
        if (tok[0] == "s") {
            if (nb >= 0) fail(line, "duplicate header");
            if (tok.size() != 5 || tok[1] != "td") fail(line, "header must be 's td <bags> <max_bag> <n>'");
            nb = parse_int(tok[2], line);
            maxbag = parse_int(tok[3], line);
            n = parse_int(tok[4], line);
            if (nb < 0 || maxbag < 0 || n < 0 || n > std::numeric_limits<int>::max() ||
                nb > std::numeric_limits<int>::max())
                fail(line, "bad header counts");
            td.vertex_count = static_cast<int>(n);
            td.bags.resize(static_cast<std::size_t>(nb));
            seen.assign(static_cast<std::size_t>(nb), 0);
            edges_left = nb > 0 ? nb - 1 : 0;
            continue;
        }
        if (nb < 0) fail(line, "content before header");
        if (tok[0] == "b") {
            if (tok.size() < 2) fail(line, "bag line without id");
            int id = to_index(parse_int(tok[1], line), nb, line, "bag");
            if (seen[id]) fail(line, "bag " + std::to_string(id + 1) + " listed twice");
            seen[id] = 1;
            if (static_cast<long long>(tok.size()) - 2 > maxbag)
                fail(line, "bag " + std::to_string(id + 1) + " larger than declared maximum");
            for (std::size_t i = 2; i < tok.size(); ++i)
                td.bags[id].push_back(to_index(parse_int(tok[i], line), n, line, "vertex"));
            continue;
        }
        if (tok.size() != 2) fail(line, "tree edge line must have two bag ids");
        int a = to_index(parse_int(tok[0], line), nb, line, "bag");
        int b = to_index(parse_int(tok[1], line), nb, line, "bag");
        if (edges_left-- <= 0) fail(line, "more tree edges than bags-1");
        td.tree_edges.emplace_back(a, b);
    }
    if (nb < 0) throw InputError("missing 's td' header");
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw InputError("bag " + std::to_string(i + 1) + " missing");
    if (edges_left != 0) throw InputError("tree has " + std::to_string(td.tree_edges.size()) + " edges, expected bags-1");
    std::size_t largest = 0;
    for (auto& bag : td.bags) largest = std::max(largest, bag.size());
    if (static_cast<long long>(largest) != maxbag)
        throw InputError("declared max bag size " + std::to_string(maxbag) + " but largest bag has " +
                         std::to_string(largest));
    return td;
}

TreeDecomposition read_td_file(const std::string& path) {
    auto in = open(path);
    return read_td(in);
}

std::string write_td(const TreeDecomposition& td) {
    std::ostringstream out;
    std::size_t largest = 0;
    for (auto& bag : td.bags) largest = std::max(largest, bag.size());
    out << "s td " << td.bags.size() << ' ' << largest << ' ' << td.vertex_count << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (Vertex v : td.bags[i]) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
    return out.str();
}

}  // namespace pathcover
