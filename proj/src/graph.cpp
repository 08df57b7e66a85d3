#include "gch/graph.hpp"

#include <array>
#include <atomic>
#include <sstream>

namespace gch {

int64_t binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    if (r > n - r) r = n - r;
    int64_t v = 1;
    for (int t = 1; t <= r; ++t) v = v * (n - r + t) / t;
    return v;
}

namespace {
std::atomic<int64_t> g_exact_limit{limits::max_exact_nonzeros};
}

int64_t exact_nonzero_limit() { return g_exact_limit.load(); }

void set_exact_nonzero_limit(int64_t n) {
    g_exact_limit.store(n > 0 ? n : limits::max_exact_nonzeros);
}

void check_node_count(int k) {
    if (k < 1 || k > limits::max_nodes)
        throw input_error("node count must be in 1.." + std::to_string(limits::max_nodes) +
                          ", got " + std::to_string(k));
}

int slot_count(int k) { return k * (k - 1) / 2; }

int lex_slot(const Edge& e, int k) {
    check_node_count(k);
    if (e.i < 1 || e.i >= e.j || e.j > k)
        throw input_error("invalid edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                          ") for k=" + std::to_string(k));
    // slots before row i: (i-1)k - i(i-1)/2
    return (e.i - 1) * k - e.i * (e.i - 1) / 2 + (e.j - e.i - 1);
}

Edge slot_edge(int slot, int k) {
    check_node_count(k);
    if (slot < 0 || slot >= slot_count(k)) throw input_error("slot out of range");
    int i = 1;
    while (slot >= k - i) {
        slot -= k - i;
        ++i;
    }
    return Edge(i, i + 1 + slot);
}

bool LabeledGraph::has_edge(const Edge& e) const {
    return (edges >> lex_slot(e, k)) & 1;
}

GraphFamily GraphFamily::l_connected(int l) {
    if (l < 2) throw input_error("l-connected requires l >= 2");
    return {Kind::LConnected, l};
}

std::string GraphFamily::name() const {
    switch (kind) {
        case Kind::All: return "all";
        case Kind::Connected: return "connected";
        case Kind::LConnected:
            return l == 2 ? "2-connected" : "l-connected:" + std::to_string(l);
    }
    return "?";
}

namespace {

// Adjacency bitmasks for the nodes present in `alive`; node v occupies bit v.
std::array<uint16_t, limits::max_nodes + 1> adjacency(const LabeledGraph& g, uint16_t alive) {
    std::array<uint16_t, limits::max_nodes + 1> adj{};
    EdgeMask m = g.edges;
    int slot = 0;
    for (int i = 1; i <= g.k; ++i)
        for (int j = i + 1; j <= g.k; ++j, ++slot)
            if ((m >> slot) & 1 && (alive >> i) & 1 && (alive >> j) & 1) {
                adj[i] |= uint16_t(1) << j;
                adj[j] |= uint16_t(1) << i;
            }
    return adj;
}

bool connected_on(const LabeledGraph& g, uint16_t alive) {
    if (alive == 0) return true;
    auto adj = adjacency(g, alive);
    int start = __builtin_ctz(alive);
    uint16_t seen = uint16_t(1) << start;
    uint16_t frontier = seen;
    while (frontier) {
        uint16_t next = 0;
        uint16_t f = frontier;
        while (f) {
            int v = __builtin_ctz(f);
            f &= f - 1;
            next |= adj[v];
        }
        next &= ~seen;
        seen |= next;
        frontier = next;
    }
    return seen == alive;
}

} // namespace

bool is_connected(const LabeledGraph& g) {
    check_node_count(g.k);
    uint16_t all = uint16_t(((1u << g.k) - 1) << 1);
    return connected_on(g, all);
}

bool is_l_connected(const LabeledGraph& g, int l) {
    check_node_count(g.k);
    if (l < 2) throw input_error("is_l_connected requires l >= 2");
    if (g.k - l + 1 < 1) throw input_error("l too large for k");
    if (g.k <= 1) return true;
    if (!is_connected(g)) return false;
    // every removal of l-1 nodes must leave a connected graph on k-l+1 nodes
    int r = l - 1;
    uint16_t all = uint16_t(((1u << g.k) - 1) << 1);
    // iterate r-subsets of {1..k} as bitmasks
    std::vector<int> idx(r);
    for (int t = 0; t < r; ++t) idx[t] = t + 1;
    while (true) {
        uint16_t drop = 0;
        for (int t = 0; t < r; ++t) drop |= uint16_t(1) << idx[t];
        if (!connected_on(g, uint16_t(all & ~drop))) return false;
        int t = r - 1;
        while (t >= 0 && idx[t] == g.k - (r - 1 - t)) --t;
        if (t < 0) break;
        ++idx[t];
        for (int s = t + 1; s < r; ++s) idx[s] = idx[s - 1] + 1;
    }
    return true;
}

bool GraphFamily::contains(const LabeledGraph& g) const {
    switch (kind) {
        case Kind::All: return true;
        case Kind::Connected: return is_connected(g);
        case Kind::LConnected: return is_l_connected(g, l);
    }
    return false;
}

LabeledGraph remove_edge(const LabeledGraph& g, const Edge& e) {
    int s = lex_slot(e, g.k);
    if (!((g.edges >> s) & 1)) throw input_error("edge not present: " + format_graph(g));
    return LabeledGraph(g.k, g.edges & ~(EdgeMask(1) << s));
}

LabeledGraph add_edge(const LabeledGraph& g, const Edge& e) {
    return LabeledGraph(g.k, g.edges | (EdgeMask(1) << lex_slot(e, g.k)));
}

std::vector<Edge> edge_list(const LabeledGraph& g) {
    std::vector<Edge> out;
    out.reserve(g.edge_count());
    EdgeMask m = g.edges;
    while (m) {
        int slot = (static_cast<uint64_t>(m) != 0)
                       ? __builtin_ctzll(static_cast<uint64_t>(m))
                       : 64 + __builtin_ctzll(static_cast<uint64_t>(m >> 64));
        out.push_back(slot_edge(slot, g.k));
        m &= m - 1;
    }
    return out;
}

std::pair<LabeledGraph, int> relabel(const LabeledGraph& g, const std::vector<int>& perm) {
    check_node_count(g.k);
    if (static_cast<int>(perm.size()) != g.k + 1) throw input_error("permutation size mismatch");
    uint16_t seen = 0;
    for (int v = 1; v <= g.k; ++v) {
        if (perm[v] < 1 || perm[v] > g.k) throw input_error("permutation value out of range");
        seen |= uint16_t(1) << perm[v];
    }
    if (popcount(EdgeMask(seen)) != g.k) throw input_error("not a permutation");

    // image slots in source slot order; sign = parity of the sorting permutation
    std::vector<int> image_slots;
    image_slots.reserve(g.edge_count());
    for (const Edge& e : edge_list(g)) {
        int a = perm[e.i], b = perm[e.j];
        if (a > b) std::swap(a, b);
        image_slots.push_back(lex_slot(Edge(a, b), g.k));
    }
    int inversions = 0;
    EdgeMask out = 0;
    for (size_t p = 0; p < image_slots.size(); ++p) {
        for (size_t q = p + 1; q < image_slots.size(); ++q)
            if (image_slots[p] > image_slots[q]) ++inversions;
        out |= EdgeMask(1) << image_slots[p];
    }
    return {LabeledGraph(g.k, out), (inversions % 2 == 0) ? 1 : -1};
}

std::vector<LabeledGraph> enumerate_graphs(int k, const GraphFamily& family, int edge_count) {
    check_node_count(k);
    int n = slot_count(k);
    if (edge_count < 0 || edge_count > n) throw input_error("edge count out of range");
    std::vector<LabeledGraph> out;
    if (edge_count == 0) {
        LabeledGraph empty(k, 0);
        if (family.contains(empty)) out.push_back(empty);
        return out;
    }
    // Gosper's hack enumerates fixed-popcount masks in ascending order.
    EdgeMask v = (EdgeMask(1) << edge_count) - 1;
    EdgeMask last = v << (n - edge_count);
    while (true) {
        LabeledGraph g(k, v);
        if (family.contains(g)) out.push_back(g);
        if (v == last) break;
        EdgeMask c = v & -v;
        EdgeMask r = v + c;
        v = r | (((v ^ r) >> 2) / c);
    }
    return out;
}

std::string format_graph(const LabeledGraph& g) {
    std::string out = std::to_string(g.k) + ":";
    bool first = true;
    for (const Edge& e : edge_list(g)) {
        if (!first) out += ";";
        first = false;
        out += std::to_string(e.i) + "-" + std::to_string(e.j);
    }
    return out;
}

LabeledGraph parse_graph(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw input_error("graph encoding missing ':': " + text);
    int k = 0;
    try {
        k = std::stoi(text.substr(0, colon));
    } catch (const std::exception&) {
        throw input_error("bad node count in graph encoding: " + text);
    }
    check_node_count(k);
    LabeledGraph g(k, 0);
    std::string rest = text.substr(colon + 1);
    if (rest.empty()) return g;
    std::stringstream ss(rest);
    std::string item;
    int prev_slot = -1;
    while (std::getline(ss, item, ';')) {
        auto dash = item.find('-');
        if (dash == std::string::npos) throw input_error("bad edge in graph encoding: " + item);
        int i = 0, j = 0;
        try {
            i = std::stoi(item.substr(0, dash));
            j = std::stoi(item.substr(dash + 1));
        } catch (const std::exception&) {
            throw input_error("bad edge in graph encoding: " + item);
        }
        if (i >= j) throw input_error("edge endpoints must satisfy i<j: " + item);
        int slot = lex_slot(Edge(i, j), k);
        if (slot <= prev_slot) throw input_error("edges must be lex-sorted and distinct: " + text);
        prev_slot = slot;
        g = add_edge(g, Edge(i, j));
    }
    return g;
}

} // namespace gch
