#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "gch/sparse_matrix.hpp"

namespace gch {

struct SmithResult {
    std::vector<mpz_class> invariant_factors; // divisibility chain d1 | d2 | ...
    int64_t rank() const { return static_cast<int64_t>(invariant_factors.size()); }
};

// Invariant factors over the integers. Sparse elimination with unit pivots
// first; whatever survives goes through a dense big-integer reduction, so no
// intermediate overflow is possible.
SmithResult smith_normal_form(const SparseIntMatrix& m);

int64_t rank_exact(const SparseIntMatrix& m);

// Row-reduced echelon data over Q for an integer matrix.
struct RationalEchelon {
    int64_t rows = 0, cols = 0;
    // echelon rows as sparse (col, value) lists, each starting at its pivot
    std::vector<std::vector<std::pair<int64_t, mpq_class>>> echelon;
    std::vector<int64_t> pivot_cols;
    int64_t rank() const { return static_cast<int64_t>(pivot_cols.size()); }
};

RationalEchelon rational_echelon(const SparseIntMatrix& m);

// Null space basis of m (as column vectors), deterministic order.
std::vector<std::vector<mpq_class>> kernel_basis(const SparseIntMatrix& m);

// Solve m x = c over Q; nullopt when inconsistent.
std::optional<std::vector<mpq_class>> solve_rational(const SparseIntMatrix& m,
                                                     const std::vector<mpq_class>& c);

// Solve m x = c over Z via dense Smith form with transforms; nullopt when no
// integer solution exists. Dense: guarded by limits::max_dense_solve_dim.
std::optional<std::vector<mpz_class>> solve_integer(const SparseIntMatrix& m,
                                                    const std::vector<mpz_class>& c);

} // namespace gch
