#include "gch/sparse_matrix.hpp"

#include <algorithm>
#include <sstream>

namespace gch {

SparseIntMatrix SparseIntMatrix::Builder::build() const {
    SparseIntMatrix m(rows, cols);
    int64_t nnz = 0;
    for (const auto& col : columns) nnz += static_cast<int64_t>(col.size());
    m.row_idx.reserve(nnz);
    m.value.reserve(nnz);
    for (int64_t c = 0; c < cols; ++c) {
        auto col = columns[c];
        std::sort(col.begin(), col.end());
        for (const auto& [r, v] : col) {
            m.row_idx.push_back(r);
            m.value.push_back(v);
        }
        m.col_start[c + 1] = static_cast<int64_t>(m.row_idx.size());
    }
    return m;
}

SparseIntMatrix transpose(const SparseIntMatrix& m) {
    SparseIntMatrix t(m.cols, m.rows);
    std::vector<int64_t> counts(m.rows + 1, 0);
    for (int32_t r : m.row_idx) counts[r + 1]++;
    for (int64_t r = 0; r < m.rows; ++r) counts[r + 1] += counts[r];
    t.col_start = counts;
    t.row_idx.resize(m.nonzeros());
    t.value.resize(m.nonzeros());
    std::vector<int64_t> fill(counts.begin(), counts.end() - 1);
    for (int64_t c = 0; c < m.cols; ++c)
        for (int64_t k = m.col_start[c]; k < m.col_start[c + 1]; ++k) {
            int64_t pos = fill[m.row_idx[k]]++;
            t.row_idx[pos] = static_cast<int32_t>(c);
            t.value[pos] = m.value[k];
        }
    return t;
}

std::string format_triplets(const SparseIntMatrix& m) {
    std::ostringstream out;
    out << m.rows << " " << m.cols << "\n";
    for (int64_t c = 0; c < m.cols; ++c)
        for (int64_t k = m.col_start[c]; k < m.col_start[c + 1]; ++k)
            out << m.row_idx[k] << " " << c << " " << m.value[k] << "\n";
    return out.str();
}

SparseIntMatrix parse_triplets(const std::string& text) {
    std::istringstream in(text);
    int64_t rows = -1, cols = -1;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0)
        throw input_error("bad matrix header");
    SparseIntMatrix::Builder b(rows, cols);
    int64_t r, c;
    int64_t v;
    while (in >> r >> c >> v) {
        if (r < 0 || r >= rows || c < 0 || c >= cols)
            throw input_error("matrix entry out of range");
        b.add(r, c, static_cast<int32_t>(v));
    }
    return b.build();
}

} // namespace gch
