#pragma once

#include <cstdint>
#include <vector>

#include "gch/sparse_matrix.hpp"

namespace gch {

struct ModPReduction {
    int64_t rank = 0;
    // "low" row index of each stored reduced column; feeds clearing in the
    // next lower boundary matrix
    std::vector<int64_t> pivot_rows;
};

// Column reduction over F_p with largest-row-index pivots. Columns flagged in
// `cleared` are skipped: they are known to reduce to zero because their index
// was a pivot row one degree up.
ModPReduction reduce_mod_p(const SparseIntMatrix& m, uint32_t p,
                           const std::vector<uint8_t>* cleared = nullptr);

inline int64_t rank_mod_p(const SparseIntMatrix& m, uint32_t p) {
    return reduce_mod_p(m, p).rank;
}

bool is_prime_u32(uint32_t n);

} // namespace gch
