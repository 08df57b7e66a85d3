#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gch/graph.hpp"
#include "gch/sparse_matrix.hpp"

namespace gch {

// A face with e edges has simplicial dimension d = e - 1. The empty face
// (d = -1) is excluded from every complex.

// Formal integer combination of graphs of one family and degree.
struct Chain {
    int k = 0;
    GraphFamily family;
    int degree = -1; // edge_count - 1
    std::map<LabeledGraph, mpz_class> coefficients;

    Chain() = default;
    Chain(int k_, GraphFamily fam, int degree_) : k(k_), family(fam), degree(degree_) {}

    bool is_zero() const { return coefficients.empty(); }
    void add(const LabeledGraph& g, const mpz_class& c);
    Chain& operator+=(const Chain& other);
    Chain operator*(const mpz_class& s) const;
    friend bool operator==(const Chain&, const Chain&) = default;
};

// Quotient chain complex of a graph family: only family members are
// generators, out-of-family faces map to zero.
class FamilyComplex {
public:
    FamilyComplex(int k, GraphFamily family, int min_edges, int max_edges);

    int k() const { return k_; }
    const GraphFamily& family() const { return family_; }
    int max_degree() const { return slot_count(k_) - 1; }
    int min_built_degree() const { return min_edges_ - 1; }
    int max_built_degree() const { return max_edges_ - 1; }
    bool degree_built(int d) const { return d >= min_edges_ - 1 && d <= max_edges_ - 1; }

    const std::vector<LabeledGraph>& generators(int d) const;
    int64_t generator_count(int d) const;
    // index of g among generators(d), or nullopt when not a generator
    std::optional<int64_t> generator_index(const LabeledGraph& g) const;

    // Boundary matrix C_d -> C_{d-1}, shape |generators(d-1)| x |generators(d)|.
    // Built on first use; cached.
    const SparseIntMatrix& boundary_matrix(int d) const;

    int64_t euler_characteristic() const;

private:
    int k_;
    GraphFamily family_;
    int min_edges_, max_edges_;
    std::vector<std::vector<LabeledGraph>> gens_; // index = degree
    mutable std::vector<std::optional<SparseIntMatrix>> boundaries_;
};

// All degrees of the family on k nodes.
FamilyComplex build_complex(int k, const GraphFamily& family);
// Only edge counts in [min_edges, max_edges]; boundary matrices are available
// for degrees whose row and column generators were both built.
FamilyComplex build_complex_window(int k, const GraphFamily& family, int min_edges, int max_edges);

// Alternating sum of edge removals, terms leaving the family dropped.
Chain boundary_graph(const LabeledGraph& g, const GraphFamily& family);
Chain boundary_chain(const Chain& c);

// Chain encoding "c*GRAPH ± c*GRAPH ..."; the zero chain encodes as "0".
std::string format_chain(const Chain& c);
Chain parse_chain(const std::string& text, const GraphFamily& family);

} // namespace gch
