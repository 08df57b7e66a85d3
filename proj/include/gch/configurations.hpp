#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gch/common.hpp"

namespace gch {

// Multiset of group sizes a1 >= a2 >= ... >= a_n, each >= 2, plus the count b
// of derivative-zero points (0 unless stated).
struct MultiIndex {
    std::vector<int> parts; // sorted descending
    int b = 0;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> p, int b_ = 0);
    int size() const; // |A|
    int group_count() const { return static_cast<int>(parts.size()); }
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

int complexity(const MultiIndex& a); // |A| - #A + b

// Grouping pattern of |A| distinct ordered points on the line; group labels
// are assigned in order of first appearance.
struct AConfiguration {
    MultiIndex a;                // b = 0
    std::vector<int> group_of;   // per position 0..|A|-1, label 0..#A-1

    friend bool operator==(const AConfiguration&, const AConfiguration&) = default;
};

int stickiness(const AConfiguration& j); // 2i - rho = i - #A for distinct points

// Points on the line with possible coincidences across groups; inside a group
// of size > 2 points are pairwise distinct, a group of size 2 may be a
// degenerate pair (x,x). Values are abstract coordinates: only coincidence
// and order matter.
struct ACollection {
    std::vector<std::vector<int>> groups; // each sorted ascending
    MultiIndex multi_index() const;
};

// Nodes are the |A| collection points; black edges join points of one group,
// white edges glue geometrically coincident points of different groups (a
// path per coincidence class, one identification per extra slot). For a
// degenerate pair (x,x) only the first node carries white edges.
struct TwoColorGraph {
    int nodes = 0;
    std::vector<std::pair<int, int>> black;
    std::vector<std::pair<int, int>> white;
};

TwoColorGraph two_color_graph(const ACollection& c);

// True iff no simple cycle of the two-color graph contains a white edge,
// i.e. every white edge is a bridge.
bool is_A_set(const ACollection& c);

// All grouping patterns on positions 1..|A| with the given size multiset,
// groups of equal size unordered; deterministic order. With `cyclic` set,
// patterns equivalent under cyclic rotation of positions are merged.
std::vector<AConfiguration> enumerate_configuration_classes(const MultiIndex& a,
                                                            bool cyclic = false);

enum class SimpleType { I, II, III };

// Classification per the three simple-shape clauses; nullopt otherwise.
// I: (2^i, b=0)   II: (2^(i-1), b=1)   III: (3, 2^(i-2), b=0)
std::optional<SimpleType> is_simple_configuration(const MultiIndex& a);

// Pattern encoding: group label letters by position, e.g. "aabab".
std::string format_configuration(const AConfiguration& c);
AConfiguration parse_configuration(const std::string& text);

} // namespace gch
