#include "pathcover/partition.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "pathcover/random.hpp"

namespace pathcover {

SolveResult solve_partition_dp(const Graph& g, const SolveOptions& options) {
    return solve_by_components(g, Mode::partition, options);
}

WeightAssignment sample_weights(const Graph& g, std::uint64_t seed) {
    WeightAssignment w;
    w.N = 2 * (g.edge_count() + g.vertex_count());
    std::mt19937_64 rng(seed);
    w.vertex.resize(g.vertex_count());
    w.edge.resize(g.edge_count());
    for (int& x : w.vertex) x = static_cast<int>(uniform_int(rng, 1, w.N));
    for (int& x : w.edge) x = static_cast<int>(uniform_int(rng, 1, w.N));
    return w;
}

ParityTable::ParityTable(int max_markers, int max_weight)
    : max_markers_(max_markers), max_weight_(max_weight), words_(max_weight / 64 + 1),
      bits_(static_cast<std::size_t>(max_markers + 1) * words_, 0) {}

bool ParityTable::odd(int markers, int weight) const {
    if (markers < 0 || markers > max_markers_ || weight < 0 || weight > max_weight_) return false;
    return bits_[static_cast<std::size_t>(markers) * words_ + weight / 64] >> (weight % 64) & 1;
}

void ParityTable::flip(int markers, int weight) {
    bits_[static_cast<std::size_t>(markers) * words_ + weight / 64] ^= std::uint64_t{1} << (weight % 64);
}

std::vector<int> ParityTable::odd_weights(int markers) const {
    std::vector<int> out;
    for (int w = 0; w <= max_weight_; ++w)
        if (odd(markers, w)) out.push_back(w);
    return out;
}

namespace {

constexpr int kLabels = 5;

int label_code(int degree, int side) { return degree == 2 ? 4 : degree * 2 + (side - 1); }

// Parities indexed by (bag labelling, markers used, weight); the labelling is
// a base-5 number with one digit per bag position.
class CountTable {
public:
    CountTable(int bag_size, int k, int words) : k_(k), words_(words) {
        codes_ = 1;
        for (int i = 0; i < bag_size; ++i) codes_ *= kLabels;
        bits_.assign(static_cast<std::size_t>(codes_) * (k + 1) * words, 0);
        live_.assign(static_cast<std::size_t>(codes_) * (k + 1), 0);
    }

    int codes() const { return codes_; }
    bool live(int code, int i) const { return live_[index(code, i)]; }
    const std::uint64_t* row(int code, int i) const { return &bits_[index(code, i) * words_]; }
    std::uint64_t* row_mut(int code, int i) {
        live_[index(code, i)] = 1;
        return &bits_[index(code, i) * words_];
    }

    // row(code, i) ^= src << shift, dropping bits past the last word.
    void add_shifted(int code, int i, const std::uint64_t* src, int shift) {
        std::uint64_t* dst = row_mut(code, i);
        const int whole = shift / 64, part = shift % 64;
        for (int w = words_ - 1; w >= whole; --w) {
            std::uint64_t v = src[w - whole] << part;
            if (part && w - whole - 1 >= 0) v |= src[w - whole - 1] >> (64 - part);
            dst[w] ^= v;
        }
    }

    int k() const { return k_; }
    int words() const { return words_; }

private:
    std::size_t index(int code, int i) const { return static_cast<std::size_t>(code) * (k_ + 1) + i; }
    int codes_, k_, words_;
    std::vector<std::uint64_t> bits_;
    std::vector<char> live_;
};

int power5(int e) {
    int p = 1;
    while (e-- > 0) p *= kLabels;
    return p;
}

int digit(int code, int pos) { return code / power5(pos) % kLabels; }

int insert_digit(int code, int pos, int label) {
    int low = code % power5(pos), high = code / power5(pos);
    return low + label * power5(pos) + high * power5(pos + 1);
}

int remove_digit(int code, int pos) {
    int low = code % power5(pos), high = code / power5(pos + 1);
    return low + high * power5(pos);
}

int position(const std::vector<Vertex>& bag, Vertex v) {
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

// Label pairs a join may combine, and the parent label. A degree-0 vertex in
// one child can take either side there with equal counts, so pairing a
// degree-2 vertex with 0_1 alone counts every matching cut exactly once.
struct JoinRule {
    int left, right, parent;
};
constexpr JoinRule kJoinRules[] = {
    {0, 0, 0}, {1, 1, 1},  // 0_s + 0_s
    {0, 2, 2}, {2, 0, 2}, {1, 3, 3}, {3, 1, 3},  // 0_s + 1_s
    {2, 2, 4}, {3, 3, 4},  // 1_s + 1_s
    {4, 0, 4}, {0, 4, 4},  // 2 + 0_1
};

}  // namespace

ParityTable count_parity(const Graph& g, const NiceTreeDecomposition& antd, const WeightAssignment& w, int k) {
    if (k < 0) throw InputError("negative marker count");
    if (static_cast<int>(w.vertex.size()) != g.vertex_count() || static_cast<int>(w.edge.size()) != g.edge_count())
        throw InputError("weight assignment does not match the graph");
    if (g.edge_count() > 0 && !antd.has_edge_nodes()) throw InputError("decomposition lacks introduce-edge nodes");
    if (auto err = check_nice(antd, g, true); !err.empty()) throw InputError("invalid advanced decomposition: " + err);

    const int max_weight = (k + g.vertex_count()) * w.N;
    const int words = max_weight / 64 + 1;
    std::vector<std::unique_ptr<CountTable>> tables(antd.size());
    for (int id = 0; id < antd.size(); ++id) {
        const auto& x = antd.node(id);
        const int b = static_cast<int>(x.bag.size());
        auto out = std::make_unique<CountTable>(b, k, words);
        auto take_child = [&](int c) {
            auto t = std::move(tables[c]);
            return t;
        };
        switch (x.kind) {
            case NodeKind::leaf:
                out->row_mut(0, 0)[0] = 1;
                break;
            case NodeKind::introduce: {
                auto child = take_child(x.children[0]);
                const int pos = position(x.bag, x.vertex);
                for (int c = 0; c < child->codes(); ++c)
                    for (int i = 0; i <= k; ++i) {
                        if (!child->live(c, i)) continue;
                        for (int label : {0, 1}) out->add_shifted(insert_digit(c, pos, label), i, child->row(c, i), 0);
                    }
                break;
            }
            case NodeKind::introduce_edge: {
                auto child = take_child(x.children[0]);
                const int pu = position(x.bag, x.edge.first), pv = position(x.bag, x.edge.second);
                const int weight = w.edge[g.edge_index(x.edge.first, x.edge.second)];
                const int su = power5(pu), sv = power5(pv);
                for (int c = 0; c < child->codes(); ++c) {
                    const int lu = digit(c, pu), lv = digit(c, pv);
                    const bool use = lu != 4 && lv != 4 && lu % 2 == lv % 2;
                    for (int i = 0; i <= k; ++i) {
                        if (!child->live(c, i)) continue;
                        out->add_shifted(c, i, child->row(c, i), 0);
                        if (!use) continue;
                        const int nu = label_code(lu / 2 + 1, lu % 2 + 1), nv = label_code(lv / 2 + 1, lv % 2 + 1);
                        const int parent = c + (nu - lu) * su + (nv - lv) * sv;
                        out->add_shifted(parent, i, child->row(c, i), weight);
                    }
                }
                break;
            }
            case NodeKind::forget: {
                auto child = take_child(x.children[0]);
                const auto& cbag = antd.node(x.children[0]).bag;
                const int pos = position(cbag, x.vertex);
                const int weight = w.vertex[x.vertex];
                for (int c = 0; c < child->codes(); ++c) {
                    const int label = digit(c, pos);
                    const int parent = remove_digit(c, pos);
                    for (int i = 0; i <= k; ++i) {
                        if (!child->live(c, i)) continue;
                        out->add_shifted(parent, i, child->row(c, i), 0);
                        // Marker: side 1, degree 0 or 1.
                        if ((label == 0 || label == 2) && i < k) out->add_shifted(parent, i + 1, child->row(c, i), weight);
                    }
                }
                break;
            }
            case NodeKind::join: {
                auto left = take_child(x.children[0]);
                auto right = take_child(x.children[1]);
                std::vector<int> parent_of;
                std::vector<int> right_code;
                for (int c1 = 0; c1 < left->codes(); ++c1) {
                    bool any = false;
                    for (int i = 0; i <= k && !any; ++i) any = left->live(c1, i);
                    if (!any) continue;
                    // All right labellings compatible with c1, with the parent labelling.
                    right_code.assign(1, 0);
                    parent_of.assign(1, 0);
                    for (int pos = 0; pos < b; ++pos) {
                        const int l = digit(c1, pos), scale = power5(pos);
                        std::vector<int> rc, pc;
                        for (const auto& rule : kJoinRules) {
                            if (rule.left != l) continue;
                            for (std::size_t t = 0; t < right_code.size(); ++t) {
                                rc.push_back(right_code[t] + rule.right * scale);
                                pc.push_back(parent_of[t] + rule.parent * scale);
                            }
                        }
                        right_code = std::move(rc);
                        parent_of = std::move(pc);
                    }
                    for (std::size_t t = 0; t < right_code.size(); ++t) {
                        const int c2 = right_code[t];
                        for (int i1 = 0; i1 <= k; ++i1) {
                            if (!left->live(c1, i1)) continue;
                            const std::uint64_t* a = left->row(c1, i1);
                            for (int i2 = 0; i1 + i2 <= k; ++i2) {
                                if (!right->live(c2, i2)) continue;
                                const std::uint64_t* r = right->row(c2, i2);
                                // GF(2) convolution over the weight axis.
                                for (int word = 0; word < words; ++word)
                                    for (std::uint64_t bits = a[word]; bits; bits &= bits - 1) {
                                        int shift = word * 64 + std::countr_zero(bits);
                                        out->add_shifted(parent_of[t], i1 + i2, r, shift);
                                    }
                            }
                        }
                    }
                }
                break;
            }
        }
        tables[id] = std::move(out);
    }

    ParityTable result(k, max_weight);
    const auto& root = *tables[antd.root()];
    for (int i = 0; i <= k; ++i) {
        if (!root.live(0, i)) continue;
        const std::uint64_t* r = root.row(0, i);
        for (int wgt = 0; wgt <= max_weight; ++wgt)
            if (r[wgt / 64] >> (wgt % 64) & 1) result.flip(i, wgt);
    }
    return result;
}

DecideResult decide_partition(const Graph& g, const NiceTreeDecomposition& antd, int k, int reps, std::uint64_t seed) {
    if (k < 1) throw InputError("k must be at least 1");
    if (reps < 1) throw InputError("reps must be at least 1");
    DecideResult r;
    r.k = k;
    r.reps = reps;
    if (g.vertex_count() == 0) {
        r.yes = true;
        r.per_run_hits = reps;
        return r;
    }
    // A partition with at most k paths exists iff one with at most n does;
    // with exactly k markers on distinct vertices k must not exceed n.
    const int markers = std::min(k, g.vertex_count());
    for (int rep = 0; rep < reps; ++rep) {
        auto w = sample_weights(g, derive_seed(seed, static_cast<std::uint64_t>(rep)));
        auto parity = count_parity(g, antd, w, markers);
        if (!parity.odd_weights(markers).empty()) ++r.per_run_hits;
    }
    r.yes = r.per_run_hits > 0;
    return r;
}

NiceTreeDecomposition advanced_decomposition(const Graph& g, const TreeDecomposition* td) {
    if (td) {
        if (auto check = check_decomposition(g, *td); !check) throw InputError("invalid decomposition: " + check.reason);
        return to_advanced_nice(to_nice(*td), g);
    }
    return to_advanced_nice(to_nice(heuristic_decomposition(g)), g);
}

int min_partition_cc(const Graph& g, const CcOptions& options) {
    if (g.vertex_count() == 0) throw InputError("empty graph");
    int total = 0;
    auto components = connected_components(g);
    for (std::size_t ci = 0; ci < components.size(); ++ci) {
        const auto& comp = components[ci];
        Graph sub = induced_subgraph(g, comp);
        TreeDecomposition td = options.decomposition ? restrict_decomposition(*options.decomposition, comp)
                                                     : heuristic_decomposition(sub);
        auto antd = to_advanced_nice(to_nice(td), sub);
        const std::uint64_t seed = derive_seed(options.seed, ci);
        int k = 1;
        while (k < sub.vertex_count() && !decide_partition(sub, antd, k, options.reps, seed).yes) ++k;
        total += k;
    }
    return total;
}

}  // namespace pathcover
