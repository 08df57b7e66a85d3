#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gch/common.hpp"

namespace gch {

// Edge-set mask over lexicographically indexed slots. C(12,2) = 66 slots,
// so 64 bits are not enough and we use a 128-bit word.
using EdgeMask = unsigned __int128;

inline int popcount(EdgeMask m) {
    return __builtin_popcountll(static_cast<uint64_t>(m)) +
           __builtin_popcountll(static_cast<uint64_t>(m >> 64));
}

// Nodes are labelled 1..k.
struct Edge {
    int i = 0;
    int j = 0;
    Edge() = default;
    Edge(int a, int b) : i(a), j(b) {}
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple graph on k labelled nodes: no loops, no multiple edges, isolated
// nodes permitted.
struct LabeledGraph {
    int k = 0;
    EdgeMask edges = 0;
    LabeledGraph() = default;
    LabeledGraph(int k_, EdgeMask e) : k(k_), edges(e) {}
    int edge_count() const { return popcount(edges); }
    bool has_edge(const Edge& e) const;
    friend bool operator==(const LabeledGraph&, const LabeledGraph&) = default;
    friend bool operator<(const LabeledGraph& a, const LabeledGraph& b) {
        return a.k != b.k ? a.k < b.k : a.edges < b.edges;
    }
};

struct GraphFamily {
    enum class Kind { All, Connected, LConnected };
    Kind kind = Kind::All;
    int l = 0; // only for LConnected; 2 <= l <= k is accepted (l = k is the
               // vacuous case that makes K2 two-connected)

    static GraphFamily all() { return {Kind::All, 0}; }
    static GraphFamily connected() { return {Kind::Connected, 0}; }
    static GraphFamily l_connected(int l);

    bool contains(const LabeledGraph& g) const;
    std::string name() const; // "all" | "connected" | "2-connected" | "l-connected:<l>"
    friend bool operator==(const GraphFamily&, const GraphFamily&) = default;
};

void check_node_count(int k);

// Bijection between edges of the complete graph and 0..C(k,2)-1,
// (i,j) < (i',j') iff i<i' or (i=i' and j<j').
int lex_slot(const Edge& e, int k);
Edge slot_edge(int slot, int k);
int slot_count(int k);

bool is_connected(const LabeledGraph& g);

// Connected, and removal of any l-1 nodes (with incident edges) leaves a
// connected graph. Graphs on <= 1 remaining nodes count as connected.
bool is_l_connected(const LabeledGraph& g, int l);

LabeledGraph remove_edge(const LabeledGraph& g, const Edge& e);
LabeledGraph add_edge(const LabeledGraph& g, const Edge& e);

// Image graph under a node permutation together with the sign of the induced
// permutation on the lex-sorted edge slots of g. perm[v] is the image of node
// v, 1-based (perm[0] unused).
std::pair<LabeledGraph, int> relabel(const LabeledGraph& g, const std::vector<int>& perm);

// All graphs of a family with the given edge count, ascending by mask value.
std::vector<LabeledGraph> enumerate_graphs(int k, const GraphFamily& family, int edge_count);

// Text encoding "k:i-j;i-j;..." with lex-sorted 1-based endpoints; "k:" when empty.
std::string format_graph(const LabeledGraph& g);
LabeledGraph parse_graph(const std::string& text);

std::vector<Edge> edge_list(const LabeledGraph& g); // sorted by lex slot

} // namespace gch
