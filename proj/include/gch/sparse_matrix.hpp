#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gch/common.hpp"

namespace gch {

// Column-major sparse integer matrix; rows within a column are sorted.
struct SparseIntMatrix {
    int64_t rows = 0;
    int64_t cols = 0;
    std::vector<int64_t> col_start; // size cols+1
    std::vector<int32_t> row_idx;
    std::vector<int32_t> value;

    SparseIntMatrix() : col_start(1, 0) {}
    SparseIntMatrix(int64_t r, int64_t c) : rows(r), cols(c), col_start(c + 1, 0) {}

    int64_t nonzeros() const { return static_cast<int64_t>(row_idx.size()); }

    struct Builder {
        int64_t rows, cols;
        std::vector<std::vector<std::pair<int32_t, int32_t>>> columns;
        Builder(int64_t r, int64_t c) : rows(r), cols(c), columns(c) {}
        void add(int64_t r, int64_t c, int32_t v) {
            columns[c].emplace_back(static_cast<int32_t>(r), v);
        }
        SparseIntMatrix build() const;
    };
};

SparseIntMatrix transpose(const SparseIntMatrix& m);

// Text form "rows cols\nr c v\n..." with 0-based indices, column-major order.
std::string format_triplets(const SparseIntMatrix& m);
SparseIntMatrix parse_triplets(const std::string& text);

} // namespace gch
