#include "gch/configurations.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace gch {

MultiIndex::MultiIndex(std::vector<int> p, int b_) : parts(std::move(p)), b(b_) {
    std::sort(parts.begin(), parts.end(), std::greater<>());
    for (int a : parts)
        if (a < 2) throw input_error("multiindex parts must be >= 2");
    if (b < 0) throw input_error("b must be >= 0");
}

int MultiIndex::size() const {
    int s = 0;
    for (int a : parts) s += a;
    return s;
}

int complexity(const MultiIndex& a) { return a.size() - a.group_count() + a.b; }

int stickiness(const AConfiguration& j) {
    // all points distinct, so rho = |A|
    return 2 * complexity(j.a) - j.a.size();
}

MultiIndex ACollection::multi_index() const {
    std::vector<int> parts;
    for (const auto& g : groups) parts.push_back(static_cast<int>(g.size()));
    return MultiIndex(parts, 0);
}

TwoColorGraph two_color_graph(const ACollection& c) {
    TwoColorGraph out;
    // node ids in group-major order
    std::vector<std::pair<int, int>> node_of; // (group, index within group)
    std::vector<int> first_node_of_group;
    for (size_t g = 0; g < c.groups.size(); ++g) {
        const auto& pts = c.groups[g];
        if (pts.size() < 2) throw input_error("group of size < 2");
        if (pts.size() > 2)
            for (size_t s = 0; s + 1 < pts.size(); ++s)
                if (pts[s] == pts[s + 1])
                    throw input_error("points inside a group of cardinality > 2 must be distinct");
        if (!std::is_sorted(pts.begin(), pts.end()))
            throw input_error("group points must be sorted");
        first_node_of_group.push_back(out.nodes);
        for (size_t s = 0; s < pts.size(); ++s) node_of.emplace_back(static_cast<int>(g), static_cast<int>(s));
        out.nodes += static_cast<int>(pts.size());
    }
    // black edges: all pairs within a group
    for (size_t g = 0; g < c.groups.size(); ++g) {
        int base = first_node_of_group[g];
        int sz = static_cast<int>(c.groups[g].size());
        for (int s = 0; s < sz; ++s)
            for (int t = s + 1; t < sz; ++t) out.black.emplace_back(base + s, base + t);
    }
    // White edges identify coincident points of different groups. Each
    // coincidence class is glued by a path (one identification per extra
    // slot), not a clique: a point shared by three groups imposes two
    // identifications, and a third white edge would fake a dependency cycle.
    // A degenerate (x,x) pair exposes only its first node.
    auto carries_white = [&](int g, int idx) {
        const auto& pts = c.groups[g];
        return !(pts.size() == 2 && pts[0] == pts[1] && idx == 1);
    };
    std::map<int, std::vector<int>> slots_of_value; // value -> node ids, group-major
    for (size_t g = 0; g < c.groups.size(); ++g)
        for (size_t s = 0; s < c.groups[g].size(); ++s)
            if (carries_white(static_cast<int>(g), static_cast<int>(s)))
                slots_of_value[c.groups[g][s]].push_back(first_node_of_group[g] +
                                                         static_cast<int>(s));
    for (const auto& [value, slots] : slots_of_value)
        for (size_t t = 0; t + 1 < slots.size(); ++t)
            out.white.emplace_back(slots[t], slots[t + 1]);
    return out;
}

namespace {

bool reachable_without(const TwoColorGraph& g, int from, int to, size_t skip_white) {
    std::vector<std::vector<int>> adj(g.nodes);
    for (const auto& [u, v] : g.black) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (size_t w = 0; w < g.white.size(); ++w) {
        if (w == skip_white) continue;
        adj[g.white[w].first].push_back(g.white[w].second);
        adj[g.white[w].second].push_back(g.white[w].first);
    }
    std::vector<char> seen(g.nodes, 0);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == to) return true;
        for (int w : adj[v])
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return false;
}

} // namespace

bool is_A_set(const ACollection& c) {
    // Two fully coincident groups name the same vertex of the pair space and
    // impose the same conditions twice; the white-cycle test cannot see the
    // case of two equal degenerate pairs, so reject duplicates up front.
    for (size_t g1 = 0; g1 < c.groups.size(); ++g1)
        for (size_t g2 = g1 + 1; g2 < c.groups.size(); ++g2)
            if (c.groups[g1] == c.groups[g2]) return false;
    TwoColorGraph g = two_color_graph(c);
    for (size_t w = 0; w < g.white.size(); ++w)
        if (reachable_without(g, g.white[w].first, g.white[w].second, w)) return false;
    return true;
}

namespace {

void enumerate_patterns(const std::multiset<int>& remaining_sizes, std::vector<int>& group_of,
                        std::vector<int>& open_size, std::vector<int>& open_fill, int pos, int total,
                        std::vector<AConfiguration>& out, const MultiIndex& a) {
    if (pos == total) {
        AConfiguration cfg;
        cfg.a = a;
        cfg.group_of = group_of;
        out.push_back(cfg);
        return;
    }
    // continue an open group (groups gain members in position order, so this
    // produces first-appearance-canonical labels exactly once each)
    for (size_t g = 0; g < open_size.size(); ++g) {
        if (open_fill[g] == open_size[g]) continue;
        group_of[pos] = static_cast<int>(g);
        open_fill[g]++;
        enumerate_patterns(remaining_sizes, group_of, open_size, open_fill, pos + 1, total, out, a);
        open_fill[g]--;
    }
    // open a new group: one candidate per distinct remaining size
    std::set<int> tried;
    for (int sz : remaining_sizes) {
        if (tried.count(sz)) continue;
        tried.insert(sz);
        auto rem = remaining_sizes;
        rem.erase(rem.find(sz));
        group_of[pos] = static_cast<int>(open_size.size());
        open_size.push_back(sz);
        open_fill.push_back(1);
        enumerate_patterns(rem, group_of, open_size, open_fill, pos + 1, total, out, a);
        open_size.pop_back();
        open_fill.pop_back();
    }
}

std::vector<int> canonical_labels(const std::vector<int>& group_of) {
    std::map<int, int> relabel;
    std::vector<int> out(group_of.size());
    for (size_t p = 0; p < group_of.size(); ++p) {
        auto [it, inserted] = relabel.emplace(group_of[p], static_cast<int>(relabel.size()));
        out[p] = it->second;
    }
    return out;
}

} // namespace

std::vector<AConfiguration> enumerate_configuration_classes(const MultiIndex& a, bool cyclic) {
    if (a.b != 0) throw input_error("configuration classes require b = 0");
    std::vector<AConfiguration> out;
    int total = a.size();
    if (total == 0) return out;
    std::multiset<int> sizes(a.parts.begin(), a.parts.end());
    std::vector<int> group_of(total, -1), open_size, open_fill;
    enumerate_patterns(sizes, group_of, open_size, open_fill, 0, total, out, a);
    if (!cyclic) return out;

    // keep one representative per cyclic-rotation orbit of the pattern
    std::set<std::vector<int>> seen;
    std::vector<AConfiguration> reps;
    for (const auto& cfg : out) {
        std::vector<int> best;
        for (int r = 0; r < total; ++r) {
            std::vector<int> rot(total);
            for (int p = 0; p < total; ++p) rot[p] = cfg.group_of[(p + r) % total];
            rot = canonical_labels(rot);
            if (best.empty() || rot < best) best = rot;
        }
        if (seen.insert(best).second) reps.push_back(cfg);
    }
    return reps;
}

std::optional<SimpleType> is_simple_configuration(const MultiIndex& a) {
    bool all_two = std::all_of(a.parts.begin(), a.parts.end(), [](int p) { return p == 2; });
    if (a.b == 0 && all_two && !a.parts.empty()) return SimpleType::I;
    if (a.b == 1 && all_two) return SimpleType::II;
    if (a.b == 0 && !a.parts.empty() && a.parts[0] == 3 &&
        std::all_of(a.parts.begin() + 1, a.parts.end(), [](int p) { return p == 2; }))
        return SimpleType::III;
    return std::nullopt;
}

std::string format_configuration(const AConfiguration& c) {
    std::string out;
    for (int g : c.group_of) {
        if (g > 25) throw capacity_error("more than 26 groups");
        out += static_cast<char>('a' + g);
    }
    return out;
}

AConfiguration parse_configuration(const std::string& text) {
    std::vector<int> raw;
    for (char ch : text) {
        if (ch < 'a' || ch > 'z') throw input_error("configuration letters must be a-z");
        raw.push_back(ch - 'a');
    }
    std::vector<int> labels = canonical_labels(raw);
    if (labels != raw) throw input_error("labels must appear in first-appearance order: " + text);
    int groups = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<int> sizes(groups, 0);
    for (int g : labels) sizes[g]++;
    AConfiguration cfg;
    cfg.a = MultiIndex(sizes, 0);
    cfg.group_of = labels;
    return cfg;
}

} // namespace gch
