#include "pathcover/cover_dp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pathcover {

std::string_view to_string(Link link) {
    switch (link) {
        case Link::none: return "none";
        case Link::edge: return "edge";
        case Link::down: return "down";
        case Link::up: return "up";
    }
    return "?";
}

std::string_view to_string(NeighborType type) {
    switch (type) {
        case NeighborType::empty: return "{}";
        case NeighborType::dash: return "{-}";
        case NeighborType::dash_dash: return "{-,-}";
        case NeighborType::up: return "{up}";
        case NeighborType::down: return "{down}";
        case NeighborType::up_up: return "{up,up}";
        case NeighborType::down_down: return "{down,down}";
        case NeighborType::down_up: return "{down,up}";
        case NeighborType::up_dash: return "{up,-}";
        case NeighborType::down_dash: return "{down,-}";
    }
    return "?";
}

NeighborType neighbor_type(Link a, Link b) {
    auto count = [&](Link l) { return (a == l) + (b == l); };
    int dash = count(Link::edge), up = count(Link::up), down = count(Link::down);
    if (dash == 2) return NeighborType::dash_dash;
    if (dash == 1) return up ? NeighborType::up_dash : down ? NeighborType::down_dash : NeighborType::dash;
    if (up == 2) return NeighborType::up_up;
    if (down == 2) return NeighborType::down_down;
    if (up && down) return NeighborType::down_up;
    if (up) return NeighborType::up;
    if (down) return NeighborType::down;
    return NeighborType::empty;
}

NeighborType PartialPath::type_at(int i) const {
    Link before = i == 0 ? head : gaps[i - 1];
    Link after = i == size() - 1 ? tail : gaps[i];
    return neighbor_type(before, after);
}

int PartialPath::up_links() const {
    int ups = (head == Link::up) + (tail == Link::up);
    for (Link l : gaps) ups += l == Link::up;
    return ups;
}

void PartialPath::canonicalize() {
    if (size() >= 2 ? vertices.front() > vertices.back() : head > tail) {
        std::reverse(vertices.begin(), vertices.end());
        std::reverse(gaps.begin(), gaps.end());
        std::swap(head, tail);
    }
}

int copy_count(const DpState& state) {
    int total = 0;
    for (auto& c : state) total += c.count;
    return total;
}

std::size_t DpStateHash::operator()(const DpState& state) const {
    std::size_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
    for (auto& c : state) {
        mix(static_cast<std::size_t>(c.count));
        mix(static_cast<std::size_t>(c.path.head) * 4 + static_cast<std::size_t>(c.path.tail));
        for (Vertex v : c.path.vertices) mix(static_cast<std::size_t>(v));
        for (Link l : c.path.gaps) mix(static_cast<std::size_t>(l) + 1000);
        mix(0xff);
    }
    return h;
}

bool DpTable::relax(DpState state, int value, int child_a, int child_b) {
    auto [it, inserted] = index_.try_emplace(state, size());
    if (inserted) {
        entries_.push_back({std::move(state), value, child_a, child_b});
        return true;
    }
    auto& e = entries_[it->second];
    if (value >= e.value) return false;
    e.value = value;
    e.child_a = child_a;
    e.child_b = child_b;
    return true;
}

int DpTable::find(const DpState& state) const {
    auto it = index_.find(state);
    return it == index_.end() ? -1 : it->second;
}

nlohmann::json to_json(const DpStats& stats) {
    return {{"nodes", stats.nodes}, {"peak_states", stats.peak_states}, {"total_states", stats.total_states}};
}

namespace {

// One copy of the produced state together with the child copies it came from.
struct Slot {
    PartialPath path;
    int from_a = -1;
    int from_b = -1;

    friend auto operator<=>(const Slot&, const Slot&) = default;
};

// A child path after an introduce, and whether it now holds the new vertex.
struct Option {
    PartialPath path;
    bool has_x;

    friend auto operator<=>(const Option&, const Option&) = default;
};

// Sorts the slots; afterwards slot k describes copy k of the returned state.
DpState collapse(std::vector<Slot>& slots) {
    std::sort(slots.begin(), slots.end());
    DpState state;
    for (auto& s : slots) {
        if (!state.empty() && state.back().path == s.path) ++state.back().count;
        else state.push_back({s.path, 1});
    }
    return state;
}

std::optional<Link> merge_links(Link a, Link b) {
    if (a == b && a != Link::down) return a;
    if ((a == Link::down && b == Link::up) || (a == Link::up && b == Link::down)) return Link::down;
    return std::nullopt;
}

}  // namespace

struct CoverDp::Impl {
    struct Future {
        int count = 0;                          // |V \ V_v|
        std::vector<std::vector<int>> comps;    // per bag position: adjacent future components
    };

    const Graph& g;
    const NiceTreeDecomposition& ntd;
    DpOptions opt;
    std::vector<int> forget_at, tin, tout;
    mutable std::vector<std::unique_ptr<Future>> cache;

    Impl(const Graph& graph, const NiceTreeDecomposition& decomposition, DpOptions options)
        : g(graph), ntd(decomposition), opt(options) {
        if (auto err = check_nice(ntd, g, ntd.has_edge_nodes()); !err.empty())
            throw InputError("invalid nice decomposition: " + err);
        forget_at = ntd.forget_nodes(g.vertex_count());
        tin.assign(ntd.size(), 0);
        tout.assign(ntd.size(), 0);
        int clock = 0;
        std::vector<std::pair<int, std::size_t>> stack{{ntd.root(), 0}};
        tin[ntd.root()] = clock++;
        while (!stack.empty()) {
            auto& [x, next] = stack.back();
            const auto& kids = ntd.node(x).children;
            if (next < kids.size()) {
                int c = kids[next++];
                tin[c] = clock++;
                stack.emplace_back(c, 0);
            } else {
                tout[x] = clock;
                stack.pop_back();
            }
        }
        cache.resize(ntd.size());
    }

    int position(int node, Vertex v) const {
        const auto& bag = ntd.node(node).bag;
        return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
    }

    const Future& future(int node) const {
        if (cache[node]) return *cache[node];
        const auto& bag = ntd.node(node).bag;
        const int n = g.vertex_count();
        std::vector<int> comp(n, -2);  // -2: not future, -1: future and unlabelled
        auto f = std::make_unique<Future>();
        for (Vertex y = 0; y < n; ++y) {
            if (std::binary_search(bag.begin(), bag.end(), y)) continue;
            int at = forget_at[y];
            bool below = at >= 0 && tin[node] <= tin[at] && tin[at] < tout[node];
            if (!below) {
                comp[y] = -1;
                ++f->count;
            }
        }
        int label = 0;
        std::vector<Vertex> queue;
        for (Vertex s = 0; s < n; ++s) {
            if (comp[s] != -1) continue;
            comp[s] = label;
            queue.assign(1, s);
            for (std::size_t h = 0; h < queue.size(); ++h)
                for (Vertex w : g.neighbors(queue[h]))
                    if (comp[w] == -1) {
                        comp[w] = label;
                        queue.push_back(w);
                    }
            ++label;
        }
        f->comps.resize(bag.size());
        for (std::size_t i = 0; i < bag.size(); ++i) {
            auto& c = f->comps[i];
            for (Vertex w : g.neighbors(bag[i]))
                if (comp[w] >= 0) c.push_back(comp[w]);
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
        }
        cache[node] = std::move(f);
        return *cache[node];
    }

    // Per-path admissibility: no chord for the induced variant, and every up
    // link can still be completed through not-yet-introduced vertices.
    bool path_ok(const PartialPath& p, int node, const Future& fu) const {
        const int len = p.size();
        if (opt.variant.induced)
            for (int i = 0; i < len; ++i)
                for (int j = i + 1; j < len; ++j)
                    if (g.has_edge(p.vertices[i], p.vertices[j]) && !(j == i + 1 && p.gaps[i] == Link::edge))
                        return false;
        int ups = p.up_links();
        if (ups == 0) return true;
        if (ups > fu.count) return false;
        auto comps = [&](Vertex v) -> const std::vector<int>& { return fu.comps[position(node, v)]; };
        if (p.head == Link::up && comps(p.vertices.front()).empty()) return false;
        if (p.tail == Link::up && comps(p.vertices.back()).empty()) return false;
        for (int i = 0; i + 1 < len; ++i) {
            if (p.gaps[i] != Link::up) continue;
            const auto& a = comps(p.vertices[i]);
            const auto& b = comps(p.vertices[i + 1]);
            bool shared = false;
            for (std::size_t x = 0, y = 0; x < a.size() && y < b.size() && !shared;) {
                if (a[x] == b[y]) shared = true;
                else if (a[x] < b[y]) ++x;
                else ++y;
            }
            if (!shared) return false;
        }
        return true;
    }

    bool state_ok(const DpState& state, int node, const Future* fu) const {
        if (copy_count(state) > opt.bound) return false;
        const auto& bag = ntd.node(node).bag;
        std::vector<int> hits(bag.size(), 0);
        const bool partition = opt.mode == Mode::partition;
        int ups = 0;
        std::vector<Edge> used;
        for (auto& c : state) {
            if (partition && c.count > 1) return false;
            for (Vertex v : c.path.vertices) hits[position(node, v)] += c.count;
            ups += c.path.up_links();
            if (opt.variant.edge_disjoint && !partition)
                for (int i = 0; i + 1 < c.path.size(); ++i)
                    if (c.path.gaps[i] == Link::edge) {
                        if (c.count > 1) return false;
                        used.push_back(make_edge(c.path.vertices[i], c.path.vertices[i + 1]));
                    }
        }
        for (int h : hits)
            if (h == 0 || (partition && h > 1)) return false;
        // An end vertex that another path also covers can be trimmed off, so
        // some optimal cover has every path end covered by its own path only.
        if (!partition)
            for (auto& c : state) {
                if (c.path.head == Link::none && hits[position(node, c.path.vertices.front())] > 1) return false;
                if (c.path.tail == Link::none && hits[position(node, c.path.vertices.back())] > 1) return false;
            }
        // Vertex-disjoint paths need distinct future vertices for their up links.
        if (partition && fu && ups > fu->count) return false;
        std::sort(used.begin(), used.end());
        return std::adjacent_find(used.begin(), used.end()) == used.end();
    }

    // Calls emit(slots, added) for every way to place the introduced vertex;
    // `added` counts the new copies holding only that vertex. emit returns
    // true to stop.
    template <class Emit>
    void introduce(int node, const DpState& child, int max_new, Emit&& emit) const {
        const Vertex x = ntd.node(node).vertex;
        const Future& fu = future(node);
        const bool partition = opt.mode == Mode::partition;
        std::vector<std::vector<Option>> options(child.size());
        std::vector<int> base(child.size() + 1, 0);
        const Link sides[2] = {Link::edge, Link::up};
        for (std::size_t i = 0; i < child.size(); ++i) {
            base[i + 1] = base[i] + child[i].count;
            const PartialPath& p = child[i].path;
            auto& opts = options[i];
            if (path_ok(p, node, fu)) opts.push_back({p, false});
            auto offer = [&](PartialPath q) {
                q.canonicalize();
                if (path_ok(q, node, fu)) opts.push_back({std::move(q), true});
            };
            const int len = p.size();
            for (int k = 0; k + 1 < len; ++k) {
                if (p.gaps[k] != Link::up) continue;
                for (Link l : sides) {
                    if (l == Link::edge && !g.has_edge(p.vertices[k], x)) continue;
                    for (Link r : sides) {
                        if (r == Link::edge && !g.has_edge(x, p.vertices[k + 1])) continue;
                        PartialPath q = p;
                        q.vertices.insert(q.vertices.begin() + k + 1, x);
                        q.gaps[k] = l;
                        q.gaps.insert(q.gaps.begin() + k + 1, r);
                        offer(std::move(q));
                    }
                }
            }
            for (Link l : sides)
                for (Link end : {Link::none, Link::up}) {
                    if (p.head == Link::up && (l == Link::up || g.has_edge(x, p.vertices.front()))) {
                        PartialPath q = p;
                        q.vertices.insert(q.vertices.begin(), x);
                        q.gaps.insert(q.gaps.begin(), l);
                        q.head = end;
                        offer(std::move(q));
                    }
                    if (p.tail == Link::up && (l == Link::up || g.has_edge(x, p.vertices.back()))) {
                        PartialPath q = p;
                        q.vertices.push_back(x);
                        q.gaps.push_back(l);
                        q.tail = end;
                        offer(std::move(q));
                    }
                }
            std::sort(opts.begin(), opts.end());
            opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
            if (opts.empty()) return;
        }

        // Copies that consist of x alone: a singleton path, a path starting at x,
        // and a path passing through x.
        const PartialPath alone{{x}, {}, Link::none, Link::none};
        const PartialPath start{{x}, {}, Link::none, Link::up};
        const PartialPath through{{x}, {}, Link::up, Link::up};
        const bool alone_ok = path_ok(alone, node, fu);
        const bool start_ok = path_ok(start, node, fu);
        const bool through_ok = path_ok(through, node, fu);

        std::vector<Slot> slots;
        int inserted = 0;
        bool stop = false;

        auto push_new = [&](const PartialPath& p, int times) {
            for (int t = 0; t < times; ++t) slots.push_back({p, -1, -1});
        };
        auto finish = [&] {
            if (partition) {
                if (inserted == 1) {
                    stop = emit(slots, 0);
                    return;
                }
                if (max_new < 1) return;
                const std::pair<const PartialPath*, bool> fresh[] = {
                    {&alone, alone_ok}, {&start, start_ok}, {&through, through_ok}};
                for (auto [p, usable] : fresh) {
                    if (!usable || stop) continue;
                    slots.push_back({*p, -1, -1});
                    stop = emit(slots, 1);
                    slots.pop_back();
                }
                return;
            }
            for (int a = 0; a <= max_new && !stop; ++a) {
                if (a > 0 && !start_ok) break;
                for (int b = 0; a + b <= max_new && !stop; ++b) {
                    if (b > 0 && !through_ok) break;
                    if (inserted + a + b == 0) {
                        if (alone_ok && max_new >= 1) {
                            slots.push_back({alone, -1, -1});
                            stop = emit(slots, 1);
                            slots.pop_back();
                        }
                        continue;
                    }
                    push_new(start, a);
                    push_new(through, b);
                    stop = emit(slots, a + b);
                    slots.resize(slots.size() - a - b);
                }
            }
        };

        // Distribute the copies of class i over its options, then recurse.
        auto distribute = [&](auto&& self, std::size_t i, std::size_t o, int remaining) -> void {
            if (stop) return;
            if (i == child.size()) {
                finish();
                return;
            }
            const auto& opts = options[i];
            const int first_copy = base[i + 1] - remaining;
            const bool last = o + 1 == opts.size();
            for (int c = last ? remaining : 0; c <= remaining && !stop; ++c) {
                if (opts[o].has_x && partition && inserted + c > 1) break;
                for (int t = 0; t < c; ++t) slots.push_back({opts[o].path, first_copy + t, -1});
                if (opts[o].has_x) inserted += c;
                if (last) self(self, i + 1, 0, i + 1 < child.size() ? child[i + 1].count : 0);
                else self(self, i, o + 1, remaining - c);
                if (opts[o].has_x) inserted -= c;
                slots.resize(slots.size() - c);
            }
        };
        distribute(distribute, 0, 0, child.empty() ? 0 : child[0].count);
    }

    // Slots of the parent state, or nullopt when the forgotten vertex still
    // needs an up link. Copies that become complete paths get no slot.
    std::optional<std::vector<Slot>> forget(int node, const DpState& child) const {
        const Vertex x = ntd.node(node).vertex;
        std::vector<Slot> slots;
        int copy = 0;
        for (auto& c : child) {
            const PartialPath& p = c.path;
            auto it = std::find(p.vertices.begin(), p.vertices.end(), x);
            if (it == p.vertices.end()) {
                for (int t = 0; t < c.count; ++t) slots.push_back({p, copy++, -1});
                continue;
            }
            const int pos = static_cast<int>(it - p.vertices.begin());
            const int len = p.size();
            Link before = pos == 0 ? p.head : p.gaps[pos - 1];
            Link after = pos == len - 1 ? p.tail : p.gaps[pos];
            if (before == Link::up || after == Link::up) return std::nullopt;
            if (len == 1) {
                copy += c.count;
                continue;
            }
            PartialPath q = p;
            if (pos == 0) {
                q.vertices.erase(q.vertices.begin());
                q.gaps.erase(q.gaps.begin());
                q.head = Link::down;
            } else if (pos == len - 1) {
                q.vertices.pop_back();
                q.gaps.pop_back();
                q.tail = Link::down;
            } else {
                q.vertices.erase(q.vertices.begin() + pos);
                q.gaps[pos - 1] = Link::down;
                q.gaps.erase(q.gaps.begin() + pos);
            }
            q.canonicalize();
            for (int t = 0; t < c.count; ++t) slots.push_back({q, copy++, -1});
        }
        return slots;
    }

    std::vector<PartialPath> combine(const PartialPath& a, const PartialPath& b, int node, const Future& fu) const {
        std::vector<PartialPath> out;
        auto attempt = [&](Link head, Link tail) {
            PartialPath q;
            q.vertices = a.vertices;
            for (std::size_t k = 0; k < a.gaps.size(); ++k) {
                auto m = merge_links(a.gaps[k], b.gaps[k]);
                if (!m || *m == Link::none) return;
                q.gaps.push_back(*m);
            }
            auto h = merge_links(a.head, head);
            auto t = merge_links(a.tail, tail);
            if (!h || !t || *h == Link::edge || *t == Link::edge) return;
            q.head = *h;
            q.tail = *t;
            q.canonicalize();
            if (path_ok(q, node, fu)) out.push_back(std::move(q));
        };
        attempt(b.head, b.tail);
        if (a.size() == 1 && b.head != b.tail) attempt(b.tail, b.head);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Every pairing of left and right copies with equal vertex sequences.
    template <class Emit>
    void join(int node, const DpState& left, const DpState& right, Emit&& emit) const {
        const Future& fu = future(node);
        // Classes with the same vertex sequence are contiguous in both states.
        std::vector<std::pair<std::size_t, std::size_t>> group_right(left.size());
        std::size_t r = 0;
        for (std::size_t l = 0; l < left.size();) {
            std::size_t l_end = l;
            while (l_end < left.size() && left[l_end].path.vertices == left[l].path.vertices) ++l_end;
            if (r >= right.size() || right[r].path.vertices != left[l].path.vertices) return;
            std::size_t r_end = r;
            while (r_end < right.size() && right[r_end].path.vertices == right[r].path.vertices) ++r_end;
            for (std::size_t i = l; i < l_end; ++i) group_right[i] = {r, r_end};
            l = l_end;
            r = r_end;
        }
        if (r != right.size()) return;

        struct Option {
            std::size_t j;
            PartialPath path;
        };
        std::vector<std::vector<Option>> options(left.size());
        for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = group_right[i].first; j < group_right[i].second; ++j)
                for (auto& q : combine(left[i].path, right[j].path, node, fu)) options[i].push_back({j, std::move(q)});

        std::vector<int> base_left(left.size() + 1, 0), next_right(right.size(), 0), capacity(right.size());
        for (std::size_t i = 0; i < left.size(); ++i) base_left[i + 1] = base_left[i] + left[i].count;
        for (std::size_t j = 0, acc = 0; j < right.size(); ++j) {
            next_right[j] = static_cast<int>(acc);
            capacity[j] = right[j].count;
            acc += right[j].count;
        }
        std::vector<Slot> slots;
        bool stop = false;
        auto distribute = [&](auto&& self, std::size_t i, std::size_t o, int remaining) -> void {
            if (stop) return;
            if (i == left.size()) {
                stop = emit(slots);
                return;
            }
            if (remaining == 0) {
                self(self, i + 1, 0, i + 1 < left.size() ? left[i + 1].count : 0);
                return;
            }
            if (o == options[i].size()) return;
            const Option& op = options[i][o];
            const int most = std::min(remaining, capacity[op.j]);
            for (int c = most; c >= 0 && !stop; --c) {
                int first_left = base_left[i + 1] - remaining;
                for (int t = 0; t < c; ++t) slots.push_back({op.path, first_left + t, next_right[op.j] + t});
                capacity[op.j] -= c;
                next_right[op.j] += c;
                self(self, i, o + 1, remaining - c);
                next_right[op.j] -= c;
                capacity[op.j] += c;
                slots.resize(slots.size() - c);
            }
        };
        distribute(distribute, 0, 0, left.empty() ? 0 : left[0].count);
    }
};

CoverDp::CoverDp(const Graph& g, const NiceTreeDecomposition& ntd, DpOptions options)
    : impl_(std::make_unique<Impl>(g, ntd, options)) {
    if (options.bound < 0) throw InputError("negative bound");
}

CoverDp::~CoverDp() = default;

DpTable CoverDp::process_leaf(int node) const {
    if (!impl_->ntd.node(node).bag.empty()) throw InputError("leaf with nonempty bag");
    DpTable t;
    t.relax({}, 0, -1, -1);
    return t;
}

DpTable CoverDp::process_introduce(int node, const DpTable& child) const {
    const auto& im = *impl_;
    const auto& fu = im.future(node);
    DpTable out;
    for (int ci = 0; ci < child.size(); ++ci) {
        const DpEntry& e = child.entries()[ci];
        int max_new = std::min(im.opt.bound - copy_count(e.state), im.opt.bound - e.value);
        if (max_new < 0) continue;
        im.introduce(node, e.state, max_new, [&](const std::vector<Slot>& slots, int added) {
            std::vector<Slot> copy = slots;
            DpState s = collapse(copy);
            if (im.state_ok(s, node, &fu)) out.relax(std::move(s), e.value + added, ci, -1);
            return false;
        });
    }
    return out;
}

DpTable CoverDp::process_forget(int node, const DpTable& child) const {
    DpTable out;
    for (int ci = 0; ci < child.size(); ++ci) {
        const DpEntry& e = child.entries()[ci];
        auto slots = impl_->forget(node, e.state);
        if (!slots) continue;
        out.relax(collapse(*slots), e.value, ci, -1);
    }
    return out;
}

namespace {

// Right-hand links a join partner may carry opposite a left link.
std::vector<Link> partner_links(Link l) {
    switch (l) {
        case Link::up: return {Link::up, Link::down};
        case Link::down: return {Link::up};
        default: return {l};
    }
}

// Every right path that merges with p.
std::vector<PartialPath> partners(const PartialPath& p) {
    std::vector<PartialPath> out;
    PartialPath q = p;
    auto fill_gaps = [&](auto&& self, std::size_t k) -> void {
        if (k == p.gaps.size()) {
            for (Link h : partner_links(p.head))
                for (Link t : partner_links(p.tail)) {
                    PartialPath r = q;
                    r.head = h;
                    r.tail = t;
                    r.canonicalize();
                    out.push_back(r);
                    if (p.size() == 1) {
                        std::swap(r.head, r.tail);
                        r.canonicalize();
                        out.push_back(std::move(r));
                    }
                }
            return;
        }
        for (Link l : partner_links(p.gaps[k])) {
            q.gaps[k] = l;
            self(self, k + 1);
        }
    };
    fill_gaps(fill_gaps, 0);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Calls visit(state) for every state a join partner of `left` could have:
// each class picks a multiset of partner paths of its size.
template <class Visit>
void partner_states(const DpState& left, Visit&& visit) {
    std::vector<std::vector<PartialPath>> options;
    for (const auto& c : left) options.push_back(partners(c.path));
    std::vector<PathClass> picked;
    auto rec = [&](auto&& self, std::size_t i, std::size_t o, int remaining) -> void {
        if (i == left.size()) {
            DpState s = picked;
            std::sort(s.begin(), s.end(), [](const PathClass& a, const PathClass& b) { return a.path < b.path; });
            DpState merged;
            for (auto& c : s) {
                if (!merged.empty() && merged.back().path == c.path) merged.back().count += c.count;
                else merged.push_back(c);
            }
            visit(merged);
            return;
        }
        if (remaining == 0) {
            self(self, i + 1, 0, i + 1 < left.size() ? left[i + 1].count : 0);
            return;
        }
        if (o == options[i].size()) return;
        const bool last = o + 1 == options[i].size();
        for (int c = remaining; c >= (last ? remaining : 0); --c) {
            if (c > 0) picked.push_back({options[i][o], c});
            self(self, i, o + 1, remaining - c);
            if (c > 0) picked.pop_back();
        }
    };
    rec(rec, 0, 0, left.empty() ? 0 : left[0].count);
}

}  // namespace

DpTable CoverDp::process_join(int node, const DpTable& left, const DpTable& right) const {
    const auto& im = *impl_;
    const auto& fu = im.future(node);
    DpTable out;
    std::vector<int> found;
    for (int li = 0; li < left.size(); ++li) {
        const DpEntry& a = left.entries()[li];
        const int copies = copy_count(a.state);
        found.clear();
        partner_states(a.state, [&](const DpState& candidate) {
            if (int ri = right.find(candidate); ri >= 0) found.push_back(ri);
        });
        std::sort(found.begin(), found.end());
        found.erase(std::unique(found.begin(), found.end()), found.end());
        for (int ri : found) {
            const DpEntry& b = right.entries()[ri];
            const int value = a.value + b.value - copies;
            if (value > im.opt.bound) continue;
            im.join(node, a.state, b.state, [&](const std::vector<Slot>& slots) {
                std::vector<Slot> copy = slots;
                DpState s = collapse(copy);
                if (im.state_ok(s, node, &fu)) out.relax(std::move(s), value, li, ri);
                return false;
            });
        }
    }
    return out;
}

void CoverDp::run() {
    const auto& ntd = impl_->ntd;
    tables_.assign(ntd.size(), DpTable{});
    for (int i = 0; i < ntd.size(); ++i) {
        const auto& x = ntd.node(i);
        switch (x.kind) {
            case NodeKind::leaf: tables_[i] = process_leaf(i); break;
            case NodeKind::introduce: tables_[i] = process_introduce(i, tables_[x.children[0]]); break;
            case NodeKind::forget: tables_[i] = process_forget(i, tables_[x.children[0]]); break;
            case NodeKind::join: tables_[i] = process_join(i, tables_[x.children[0]], tables_[x.children[1]]); break;
            case NodeKind::introduce_edge: {
                DpTable t;
                const auto& child = tables_[x.children[0]];
                for (int ci = 0; ci < child.size(); ++ci) t.relax(child.entries()[ci].state, child.entries()[ci].value, ci, -1);
                tables_[i] = std::move(t);
                break;
            }
        }
    }
}

std::optional<int> CoverDp::optimum() const {
    if (tables_.empty()) return std::nullopt;
    const auto& root = tables_[impl_->ntd.root()];
    int idx = root.find({});
    if (idx < 0) return std::nullopt;
    return root.entries()[idx].value;
}

PathSystem CoverDp::witness() const {
    const auto& im = *impl_;
    const auto& ntd = im.ntd;
    int root_entry = tables_.empty() ? -1 : tables_[ntd.root()].find({});
    if (root_entry < 0) throw std::logic_error("witness requested without a feasible root state");

    std::vector<std::vector<Vertex>> vertices;
    std::vector<std::vector<Edge>> edges;
    auto fresh = [&] {
        vertices.emplace_back();
        edges.emplace_back();
        return static_cast<int>(vertices.size()) - 1;
    };
    struct Task {
        int node, entry;
        std::vector<int> ids;
    };
    std::vector<Task> stack{{ntd.root(), root_entry, {}}};
    while (!stack.empty()) {
        Task task = std::move(stack.back());
        stack.pop_back();
        const auto& x = ntd.node(task.node);
        const DpEntry& entry = tables_[task.node].entries()[task.entry];
        const DpState& target = entry.state;
        if (x.kind == NodeKind::leaf) continue;
        const int ca = x.children[0];
        const DpEntry& child = tables_[ca].entries()[entry.child_a];
        std::vector<int> ids_a(copy_count(child.state), -1), ids_b;

        std::vector<Slot> found;
        bool ok = false;
        auto match = [&](const std::vector<Slot>& slots) {
            std::vector<Slot> copy = slots;
            if (collapse(copy) != target) return false;
            found = std::move(copy);
            ok = true;
            return true;
        };
        switch (x.kind) {
            case NodeKind::introduce: {
                int max_new = std::min(im.opt.bound - copy_count(child.state), im.opt.bound - child.value);
                im.introduce(task.node, child.state, max_new, [&](const std::vector<Slot>& s, int) { return match(s); });
                break;
            }
            case NodeKind::forget:
                if (auto s = im.forget(task.node, child.state)) match(*s);
                break;
            case NodeKind::join: {
                const DpEntry& right = tables_[x.children[1]].entries()[entry.child_b];
                ids_b.assign(copy_count(right.state), -1);
                im.join(task.node, child.state, right.state, match);
                break;
            }
            case NodeKind::introduce_edge:
                found.clear();
                for (std::size_t k = 0; k < task.ids.size(); ++k) found.push_back({{}, static_cast<int>(k), -1});
                ok = true;
                break;
            case NodeKind::leaf: break;
        }
        if (!ok) throw std::logic_error("witness reconstruction lost its transition");
        for (std::size_t k = 0; k < found.size(); ++k) {
            const int id = task.ids[k];
            if (found[k].from_a >= 0) ids_a[found[k].from_a] = id;
            if (found[k].from_b >= 0) ids_b[found[k].from_b] = id;
            if (x.kind != NodeKind::introduce) continue;
            const PartialPath& p = found[k].path;
            auto it = std::find(p.vertices.begin(), p.vertices.end(), x.vertex);
            if (it == p.vertices.end()) continue;
            const int pos = static_cast<int>(it - p.vertices.begin());
            vertices[id].push_back(x.vertex);
            if (pos > 0 && p.gaps[pos - 1] == Link::edge) edges[id].push_back(make_edge(p.vertices[pos - 1], x.vertex));
            if (pos + 1 < p.size() && p.gaps[pos] == Link::edge) edges[id].push_back(make_edge(x.vertex, p.vertices[pos + 1]));
        }
        for (int& id : ids_a)
            if (id < 0) id = fresh();  // complete below this forget node
        stack.push_back({ca, entry.child_a, std::move(ids_a)});
        if (x.kind == NodeKind::join) stack.push_back({x.children[1], entry.child_b, std::move(ids_b)});
    }

    PathSystem out;
    out.mode = im.opt.mode;
    out.variant = im.opt.variant;
    for (std::size_t id = 0; id < vertices.size(); ++id) {
        auto& vs = vertices[id];
        auto& es = edges[id];
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        std::sort(es.begin(), es.end());
        es.erase(std::unique(es.begin(), es.end()), es.end());
        if (vs.empty() || es.size() + 1 != vs.size()) throw std::logic_error("reconstructed path is not a path");
        std::map<Vertex, std::vector<Vertex>> adj;
        for (auto [a, b] : es) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        Vertex start = vs.front();
        for (auto& [v, nb] : adj)
            if (nb.size() == 1) {
                start = v;
                break;
            }
        Path p{start};
        Vertex prev = -1, cur = start;
        while (true) {
            Vertex next = -1;
            for (Vertex w : adj[cur])
                if (w != prev) next = w;
            if (next < 0) break;
            prev = cur;
            cur = next;
            p.push_back(cur);
            if (p.size() > vs.size()) throw std::logic_error("reconstructed path has a cycle");
        }
        if (p.size() != vs.size()) throw std::logic_error("reconstructed path is disconnected");
        out.paths.push_back(std::move(p));
    }
    return out;
}

DpStats CoverDp::stats() const {
    DpStats s;
    s.nodes = static_cast<int>(tables_.size());
    for (auto& t : tables_) {
        s.peak_states = std::max(s.peak_states, t.size());
        s.total_states += t.size();
    }
    return s;
}

nlohmann::json CoverDp::dump_tables() const {
    static const char* kinds[] = {"leaf", "introduce", "forget", "join", "introduce_edge"};
    auto out = nlohmann::json::array();
    for (int i = 0; i < static_cast<int>(tables_.size()); ++i) {
        const auto& x = impl_->ntd.node(i);
        nlohmann::json node{{"node", i}, {"kind", kinds[static_cast<int>(x.kind)]}, {"bag", x.bag}};
        auto states = nlohmann::json::array();
        for (const auto& e : tables_[i].entries()) {
            auto paths = nlohmann::json::array();
            for (const auto& c : e.state) {
                std::vector<std::string> types;
                for (int k = 0; k < c.path.size(); ++k) types.emplace_back(to_string(c.path.type_at(k)));
                std::vector<std::string> gaps;
                for (Link l : c.path.gaps) gaps.emplace_back(to_string(l));
                paths.push_back({{"vertices", c.path.vertices},
                                 {"gaps", gaps},
                                 {"head", to_string(c.path.head)},
                                 {"tail", to_string(c.path.tail)},
                                 {"types", types},
                                 {"count", c.count}});
            }
            states.push_back({{"value", e.value}, {"paths", paths}});
        }
        node["states"] = std::move(states);
        out.push_back(std::move(node));
    }
    return out;
}

std::vector<DpState> enumerate_states(const Graph& g, std::span<const Vertex> bag_in, int max_copies, Variant variant,
                                      Mode mode) {
    std::vector<Vertex> bag(bag_in.begin(), bag_in.end());
    std::sort(bag.begin(), bag.end());
    const int b = static_cast<int>(bag.size());
    const Link ends[] = {Link::none, Link::down, Link::up};
    const Link inner[] = {Link::edge, Link::down, Link::up};

    // All canonical partial paths over the bag.
    std::vector<PartialPath> classes;
    for (int mask = 1; mask < (1 << b); ++mask) {
        std::vector<Vertex> chosen;
        for (int i = 0; i < b; ++i)
            if (mask >> i & 1) chosen.push_back(bag[i]);
        do {
            if (chosen.size() >= 2 && chosen.front() > chosen.back()) continue;
            const int len = static_cast<int>(chosen.size());
            int gap_choices = 1;
            for (int k = 0; k + 1 < len; ++k) gap_choices *= 3;
            for (int code = 0; code < gap_choices; ++code) {
                PartialPath p;
                p.vertices = chosen;
                bool ok = true;
                for (int k = 0, c = code; k + 1 < len; ++k, c /= 3) {
                    Link l = inner[c % 3];
                    if (l == Link::edge && !g.has_edge(chosen[k], chosen[k + 1])) ok = false;
                    p.gaps.push_back(l);
                }
                if (!ok) continue;
                if (variant.induced)
                    for (int i = 0; i < len && ok; ++i)
                        for (int j = i + 1; j < len && ok; ++j)
                            if (g.has_edge(chosen[i], chosen[j]) && !(j == i + 1 && p.gaps[i] == Link::edge)) ok = false;
                if (!ok) continue;
                for (Link h : ends)
                    for (Link t : ends) {
                        if (len == 1 && h > t) continue;
                        p.head = h;
                        p.tail = t;
                        classes.push_back(p);
                    }
            }
        } while (std::next_permutation(chosen.begin(), chosen.end()));
    }
    std::sort(classes.begin(), classes.end());

    std::vector<DpState> out;
    DpState current;
    auto accept = [&] {
        std::vector<int> hits(b, 0);
        std::vector<Edge> used;
        for (auto& c : current) {
            for (Vertex v : c.path.vertices) hits[std::lower_bound(bag.begin(), bag.end(), v) - bag.begin()] += c.count;
            for (int k = 0; k + 1 < c.path.size(); ++k)
                if (c.path.gaps[k] == Link::edge)
                    for (int t = 0; t < c.count; ++t) used.push_back(make_edge(c.path.vertices[k], c.path.vertices[k + 1]));
        }
        for (int h : hits)
            if (h == 0 || (mode == Mode::partition && h != 1)) return false;
        if (variant.edge_disjoint || mode == Mode::partition) {
            std::sort(used.begin(), used.end());
            if (std::adjacent_find(used.begin(), used.end()) != used.end()) return false;
        }
        return true;
    };
    const int per_class_cap = mode == Mode::partition ? 1 : max_copies;
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == classes.size()) {
            if (accept()) out.push_back(current);
            return;
        }
        self(self, i + 1, left);
        for (int c = 1; c <= std::min(left, per_class_cap); ++c) {
            current.push_back({classes[i], c});
            self(self, i + 1, left - c);
            current.pop_back();
        }
    };
    rec(rec, 0, max_copies);
    std::sort(out.begin(), out.end());
    return out;
}

SolveResult solve_on_decomposition(const Graph& g, const NiceTreeDecomposition& ntd, DpOptions options) {
    CoverDp dp(g, ntd, options);
    dp.run();
    SolveResult r;
    r.width = ntd.width();
    r.stats = dp.stats();
    if (auto opt = dp.optimum()) {
        r.feasible = true;
        r.size = *opt;
        r.witness = dp.witness();
    } else {
        r.witness.mode = options.mode;
        r.witness.variant = options.variant;
    }
    return r;
}

SolveResult solve_by_components(const Graph& g, Mode mode, const SolveOptions& options) {
    const int n = g.vertex_count();
    SolveResult total;
    total.witness.mode = mode;
    total.witness.variant = options.variant;
    const int kappa = options.kappa.value_or(n);
    if (n > 0 && kappa < 1) throw InputError("kappa must be at least 1");
    if (options.decomposition) {
        if (auto check = check_decomposition(g, *options.decomposition); !check)
            throw InputError("invalid decomposition: " + check.reason);
        total.width = options.decomposition->width();
        total.width_from_input = true;
    }
    total.feasible = true;
    auto components = connected_components(g);
    const int others = static_cast<int>(components.size()) - 1;
    for (const auto& comp : components) {
        Graph sub = induced_subgraph(g, comp);
        TreeDecomposition td = options.decomposition ? restrict_decomposition(*options.decomposition, comp)
                                                     : heuristic_decomposition(sub);
        if (!options.decomposition) total.width = std::max(total.width, td.width());
        NiceTreeDecomposition ntd = to_nice(td);

        DpOptions dp;
        dp.mode = mode;
        dp.variant = options.variant;
        SolveResult part;
        auto absorb = [&](const SolveResult& r) {
            total.stats.nodes += r.stats.nodes;
            total.stats.peak_states = std::max(total.stats.peak_states, r.stats.peak_states);
            total.stats.total_states += r.stats.total_states;
        };
        if (mode == Mode::partition) {
            dp.variant.edge_disjoint = false;
            dp.bound = sub.vertex_count();
            part = solve_on_decomposition(sub, ntd, dp);
            absorb(part);
        } else {
            const int cap = std::min(kappa - others, sub.vertex_count());
            // A partition is also a cover (vertex-disjoint paths share no
            // edge), so its optimum caps the search and its witness stands in
            // when no smaller bound works.
            std::optional<SolveResult> fallback;
            if (options.partition_bound) {
                DpOptions pb{Mode::partition, Variant{options.variant.induced, false}, sub.vertex_count()};
                fallback = solve_on_decomposition(sub, ntd, pb);
                absorb(*fallback);
            }
            // The state space grows steeply with the bound, and every state of
            // a solution with at most b paths has value at most b, so raise the
            // bound one step at a time.
            const int last = fallback ? std::min(cap, fallback->size - 1) : cap;
            for (int b = 1; b <= last && !part.feasible; ++b) {
                dp.bound = b;
                part = solve_on_decomposition(sub, ntd, dp);
                absorb(part);
            }
            if (!part.feasible && fallback && fallback->size <= cap) {
                part = std::move(*fallback);
                part.witness.mode = Mode::cover;
                part.witness.variant = options.variant;
            }
        }
        if (!part.feasible) {
            total.feasible = false;
            break;
        }
        total.size += part.size;
        for (auto& p : part.witness.paths) {
            for (Vertex& v : p) v = comp[v];
            total.witness.paths.push_back(std::move(p));
        }
    }
    if (mode == Mode::cover && total.size > kappa) total.feasible = false;
    if (!total.feasible) {
        total.size = 0;
        total.witness.paths.clear();
    }
    return total;
}

SolveResult solve_pathcover(const Graph& g, const SolveOptions& options) {
    return solve_by_components(g, Mode::cover, options);
}

}  // namespace pathcover
