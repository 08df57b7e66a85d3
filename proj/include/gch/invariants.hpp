#pragma once

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gch/chain.hpp"
#include "gch/configurations.hpp"
#include "gch/homology.hpp"

namespace gch {

// Perfect matching on ordered points 1..2i; chords stored as (p,q) with p<q,
// sorted by first endpoint.
struct ChordDiagram {
    int order = 0;
    std::vector<std::pair<int, int>> chords;

    ChordDiagram() = default;
    ChordDiagram(int i, std::vector<std::pair<int, int>> c);
    friend bool operator==(const ChordDiagram&, const ChordDiagram&) = default;
    friend bool operator<(const ChordDiagram& a, const ChordDiagram& b) {
        return a.order != b.order ? a.order < b.order : a.chords < b.chords;
    }
};

// <i>-configuration shape (3, 2^(i-2)): a triple plus i-2 disjoint chords on
// positions 1..2i-1.
struct TripleConfiguration {
    int order = 0;
    std::array<int, 3> triple{};                // t1 < t2 < t3
    std::vector<std::pair<int, int>> chords;    // on the remaining positions
};

std::vector<ChordDiagram> enumerate_diagrams(int order); // (2i-1)!! diagrams, deterministic
const std::vector<ChordDiagram>& diagram_table(int order);
int64_t diagram_index(const ChordDiagram& d);

bool has_uncrossed_chord(const ChordDiagram& d);

std::vector<TripleConfiguration> enumerate_triple_configurations(int order);

// One constraint per row over the order-i diagram index set: 4T rows from all
// triple configurations plus unit 1T rows on uncrossed-chord diagrams.
struct RelationSystem {
    int order = 0;
    SparseIntMatrix rows;
    int64_t four_term_count = 0; // leading rows; the rest are 1T rows
};

RelationSystem four_term_rows(int order);

// Rational function on the order-i diagrams satisfying 1T + 4T by
// construction (member of the relation-system null space).
struct WeightSystem {
    int order = 0;
    std::vector<mpq_class> values; // indexed like diagram_table(order)
    mpq_class operator()(const ChordDiagram& d) const { return values.at(diagram_index(d)); }
};

struct WeightSpace {
    int64_t dimension = 0;
    std::vector<WeightSystem> basis;
};

WeightSpace weight_space(int order);
int64_t weight_space_dim_modular(int order, uint32_t p1 = limits::cert_prime_1,
                                 uint32_t p2 = limits::cert_prime_2);

// Kontsevich decomposition: sum of w1(t')*w2(t'') over ordered chord-subset
// decompositions of t.
mpq_class evaluate_product(const WeightSystem& w1, const WeightSystem& w2, const ChordDiagram& t);
// Whether the product function of two relation-satisfying systems satisfies
// the order-(i1+i2) relation system.
bool product_in_span(const WeightSystem& w1, const WeightSystem& w2);

// rank of the Xi group: prod (a_j - 2)!
mpz_class xi_rank(const MultiIndex& a);

// Homology of the join/tensor of the two-connected complexes of the parts;
// reported degrees carry the join shift #A-1.
HomologySummary lambda_homology(const MultiIndex& a);
int lambda_expected_degree(const MultiIndex& a); // 2|A| - 3#A - 1

// One tensor factor: a group's points on the line and a graph on 1..|points|
// whose node v is the v-th smallest point.
struct TensorFactor {
    std::vector<int> points;
    LabeledGraph graph;
    friend bool operator==(const TensorFactor&, const TensorFactor&) = default;
    friend bool operator<(const TensorFactor& a, const TensorFactor& b) {
        if (a.points != b.points) return a.points < b.points;
        return a.graph < b.graph;
    }
};

struct TensorTerm {
    std::vector<TensorFactor> factors; // explicit group order, never normalized
    friend bool operator==(const TensorTerm&, const TensorTerm&) = default;
    friend bool operator<(const TensorTerm& a, const TensorTerm& b) {
        return std::lexicographical_compare(a.factors.begin(), a.factors.end(),
                                            b.factors.begin(), b.factors.end());
    }
};

using XiElement = std::map<TensorTerm, mpz_class>;

void xi_add(XiElement& e, const TensorTerm& t, const mpz_class& c);

// A group carrying a top-degree cycle of its two-connected complex.
struct XiGroup {
    std::vector<int> points;
    Chain chain; // cycle in the 2-connected complex on |points| nodes
};

struct XiClass {
    std::vector<XiGroup> groups;
};

XiClass make_xi_class(std::vector<XiGroup> groups); // validates cycles at top degree
XiElement expand(const XiClass& c);

// Concatenates the groups of c1 and c2 into the requested order over the
// combined list (indices 0..n1+n2-1, c2's groups shifted by n1). Swapping two
// adjacent groups of degrees d', d'' contributes (-1)^((d'+1)(d''+1)).
std::pair<XiClass, int> join_chain(const XiClass& c1, const XiClass& c2,
                                   const std::vector<int>& group_order);
int swap_sign(int degree1, int degree2);

// STU extraction: the part of the full-complex boundary of c whose group-m
// graph is not two-connected and splits at node tau into components on the
// two designated blocks, reinterpreted as an element for the split
// multiindex. Blocks are point sets partitioning group m minus tau.
XiElement stu_boundary(const XiClass& c, int group, int tau, const std::vector<int>& block1,
                       const std::vector<int>& block2);

// Rebuilds the contracted group's graph from a term produced by stu_boundary
// (factors `group` and `group`+1 merged at tau); test support.
LabeledGraph merge_split_factors(const TensorTerm& term, int group,
                                 const std::vector<int>& contracted_points);

// Dimension of the rotation-invariant subspace of the top homology of the
// two-connected complex on i+1 nodes (signed action through relabel).
int64_t invariant_subspace_dim(int order);

// Cohomological dimensions of the nontrivial order-i classes of the space of
// long knots in R^n; supported for i in {1,2,3}.
std::vector<int> class_dimensions(int order, int ambient_dim);

// Diagram encoding "i:p-q;p-q;..." with lex-sorted pairs.
std::string format_diagram(const ChordDiagram& d);
ChordDiagram parse_diagram(const std::string& text);

} // namespace gch
