#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gch/chain.hpp"
#include "gch/exact.hpp"
#include "gch/modp.hpp"

namespace gch {

struct RankMode {
    enum class Kind { ExactInt, ModPrime, RationalCertified };
    Kind kind = Kind::ExactInt;
    uint32_t p1 = 0, p2 = 0;

    static RankMode exact() { return {Kind::ExactInt, 0, 0}; }
    static RankMode mod_prime(uint32_t p);
    static RankMode certified(uint32_t a = limits::cert_prime_1, uint32_t b = limits::cert_prime_2);
    std::string name() const; // "exact" | "modp:<p>" | "certified:<p1>,<p2>"
    friend bool operator==(const RankMode&, const RankMode&) = default;
};

int64_t rank_matrix(const SparseIntMatrix& m, const RankMode& mode);

// Degree-indexed chain complex: boundaries[d] maps C_d -> C_{d-1}.
struct ChainComplexData {
    std::vector<int64_t> counts;
    std::vector<SparseIntMatrix> boundaries;
    int max_degree() const { return static_cast<int>(counts.size()) - 1; }
    int64_t euler_characteristic() const;
};

ChainComplexData complex_data(const FamilyComplex& x);

struct HomologySummary {
    std::map<int, int64_t> betti;                    // nonzero entries only
    std::map<int, std::vector<mpz_class>> torsion;   // invariant factors > 1
    RankMode mode;
    bool certified = false;
    int64_t elapsed_ms = 0;

    int64_t betti_at(int d) const {
        auto it = betti.find(d);
        return it == betti.end() ? 0 : it->second;
    }
};

HomologySummary homology_data(const ChainComplexData& x, const RankMode& mode);
HomologySummary homology(const FamilyComplex& x, const RankMode& mode);

// Betti number of a single degree; works on window-built complexes that cover
// edge counts d..d+2. Torsion (exact mode) reported for the same degree.
struct DegreeHomology {
    int64_t betti = 0;
    std::vector<mpz_class> torsion;
};
DegreeHomology homology_degree(const FamilyComplex& x, int d, const RankMode& mode);

bool is_cycle(const Chain& c);

// Solvability of  boundary(x) = c  over Z (or Q). Fills *witness when a
// witness chain is requested and one exists.
bool is_boundary(const FamilyComplex& x, const Chain& c, bool over_integers,
                 Chain* witness = nullptr);

// True iff the candidates are cycles, exactly betti_d many, and their classes
// are linearly independent modulo boundaries over Q.
bool verify_basis(const FamilyComplex& x, const std::vector<Chain>& candidates, int d);

// betti_d integer cycles forming a Q-basis of H_d; kernel vectors reduced
// against the image, no minimality guarantee.
std::vector<Chain> cycle_representatives(const FamilyComplex& x, int d);

// JSON result document with the fixed field layout.
std::string homology_json(int k, const GraphFamily& family, const HomologySummary& s);

} // namespace gch
