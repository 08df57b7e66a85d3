#include "gch/exact.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace gch {

namespace {

// Dense Smith reduction; factors returned as a divisibility chain.
std::vector<mpz_class> dense_smith(std::vector<std::vector<mpz_class>> a) {
    int64_t m = static_cast<int64_t>(a.size());
    int64_t n = m ? static_cast<int64_t>(a[0].size()) : 0;
    std::vector<mpz_class> diag;
    int64_t t = 0;
    while (t < m && t < n) {
        // locate smallest nonzero by absolute value
        int64_t pr = -1, pc = -1;
        mpz_class best;
        for (int64_t i = t; i < m; ++i)
            for (int64_t j = t; j < n; ++j)
                if (a[i][j] != 0) {
                    mpz_class v = abs(a[i][j]);
                    if (pr < 0 || v < best) {
                        best = v;
                        pr = i;
                        pc = j;
                    }
                }
        if (pr < 0) break;
        std::swap(a[t], a[pr]);
        for (int64_t i = 0; i < m; ++i) std::swap(a[i][t], a[i][pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (int64_t i = t + 1; i < m; ++i)
                if (a[i][t] != 0) {
                    mpz_class q = a[i][t] / a[t][t];
                    for (int64_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
                    if (a[i][t] != 0) { // remainder smaller than pivot: swap up
                        std::swap(a[t], a[i]);
                        clean = false;
                    }
                }
            for (int64_t j = t + 1; j < n; ++j)
                if (a[t][j] != 0) {
                    mpz_class q = a[t][j] / a[t][t];
                    for (int64_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
                    if (a[t][j] != 0) {
                        for (int64_t i = 0; i < m; ++i) std::swap(a[i][t], a[i][j]);
                        clean = false;
                    }
                }
        }
        diag.push_back(abs(a[t][t]));
        ++t;
    }
    // enforce the divisibility chain
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < diag.size(); ++i) {
            if (diag[i + 1] % diag[i] != 0) {
                mpz_class g = gcd(diag[i], diag[i + 1]);
                mpz_class l = diag[i] / g * diag[i + 1];
                diag[i] = g;
                diag[i + 1] = l;
                changed = true;
            }
        }
    }
    return diag;
}

struct SparseElimination {
    int64_t rows, cols;
    std::vector<std::map<int32_t, mpz_class>> row_data; // row -> col -> value
    std::vector<std::set<int32_t>> col_rows;            // col -> rows with nonzero
    std::vector<bool> row_done, col_done;
    int64_t unit_pivots = 0;

    explicit SparseElimination(const SparseIntMatrix& m)
        : rows(m.rows), cols(m.cols), row_data(m.rows), col_rows(m.cols),
          row_done(m.rows, false), col_done(m.cols, false) {
        for (int64_t c = 0; c < m.cols; ++c)
            for (int64_t k = m.col_start[c]; k < m.col_start[c + 1]; ++k) {
                row_data[m.row_idx[k]][static_cast<int32_t>(c)] = m.value[k];
                col_rows[c].insert(m.row_idx[k]);
            }
    }

    // Repeatedly eliminate with +-1 pivots chosen to minimize fill.
    void unit_phase() {
        using Cand = std::tuple<int64_t, int32_t, int32_t>; // cost, row, col
        std::priority_queue<Cand, std::vector<Cand>, std::greater<>> heap;
        auto push_units_of_row = [&](int32_t r) {
            for (const auto& [c, v] : row_data[r])
                if (v == 1 || v == -1)
                    heap.emplace(int64_t(row_data[r].size() - 1) * (col_rows[c].size() - 1), r, c);
        };
        for (int64_t r = 0; r < rows; ++r) push_units_of_row(static_cast<int32_t>(r));

        while (!heap.empty()) {
            auto [cost, r, c] = heap.top();
            heap.pop();
            if (row_done[r] || col_done[c]) continue;
            auto it = row_data[r].find(c);
            if (it == row_data[r].end() || (it->second != 1 && it->second != -1)) continue;
            int64_t now = int64_t(row_data[r].size() - 1) * (col_rows[c].size() - 1);
            if (now > cost) { // stale cost, re-enqueue
                heap.emplace(now, r, c);
                continue;
            }
            mpz_class pivot = it->second;
            // eliminate column c using row r
            std::vector<int32_t> targets(col_rows[c].begin(), col_rows[c].end());
            for (int32_t r2 : targets) {
                if (r2 == r) continue;
                mpz_class f = row_data[r2][c] / pivot; // pivot is a unit
                for (const auto& [c2, v2] : row_data[r]) {
                    auto jt = row_data[r2].find(c2);
                    if (jt == row_data[r2].end()) {
                        mpz_class nv = -f * v2;
                        if (nv != 0) {
                            row_data[r2][c2] = nv;
                            col_rows[c2].insert(r2);
                        }
                    } else {
                        jt->second -= f * v2;
                        if (jt->second == 0) {
                            row_data[r2].erase(jt);
                            col_rows[c2].erase(r2);
                        }
                    }
                }
                push_units_of_row(r2);
            }
            // retire pivot row and column
            for (const auto& [c2, v2] : row_data[r]) col_rows[c2].erase(r);
            row_data[r].clear();
            row_done[r] = true;
            col_done[c] = true;
            ++unit_pivots;
        }
    }

    std::vector<std::vector<mpz_class>> core() const {
        std::vector<int64_t> live_rows, live_cols;
        std::vector<int64_t> col_pos(cols, -1);
        for (int64_t r = 0; r < rows; ++r)
            if (!row_done[r] && !row_data[r].empty()) live_rows.push_back(r);
        std::set<int32_t> used_cols;
        for (int64_t r : live_rows)
            for (const auto& [c, v] : row_data[r]) used_cols.insert(c);
        for (int32_t c : used_cols) {
            col_pos[c] = static_cast<int64_t>(live_cols.size());
            live_cols.push_back(c);
        }
        std::vector<std::vector<mpz_class>> a(live_rows.size(),
                                              std::vector<mpz_class>(live_cols.size()));
        for (size_t i = 0; i < live_rows.size(); ++i)
            for (const auto& [c, v] : row_data[live_rows[i]]) a[i][col_pos[c]] = v;
        return a;
    }
};

} // namespace

SmithResult smith_normal_form(const SparseIntMatrix& m) {
    SparseElimination elim(m);
    elim.unit_phase();
    auto core = elim.core();
    if (!core.empty() && (core.size() > 4096 || core[0].size() > 4096))
        throw capacity_error("smith normal form core too large: " + std::to_string(core.size()) +
                             "x" + std::to_string(core.empty() ? 0 : core[0].size()));
    SmithResult out;
    out.invariant_factors.assign(static_cast<size_t>(elim.unit_pivots), mpz_class(1));
    for (auto& f : dense_smith(std::move(core))) out.invariant_factors.push_back(f);
    return out;
}

int64_t rank_exact(const SparseIntMatrix& m) { return smith_normal_form(m).rank(); }

RationalEchelon rational_echelon(const SparseIntMatrix& m) {
    RationalEchelon out;
    out.rows = m.rows;
    out.cols = m.cols;
    // working rows, sparse maps col -> value
    std::vector<std::map<int64_t, mpq_class>> work(m.rows);
    for (int64_t c = 0; c < m.cols; ++c)
        for (int64_t k = m.col_start[c]; k < m.col_start[c + 1]; ++k)
            work[m.row_idx[k]][c] = mpq_class(m.value[k]);

    std::vector<bool> used(m.rows, false);
    for (int64_t c = 0; c < m.cols; ++c) {
        // pick the unused row with a nonzero at c and fewest entries
        int64_t best = -1;
        for (int64_t r = 0; r < m.rows; ++r) {
            if (used[r]) continue;
            auto it = work[r].find(c);
            if (it == work[r].end() || it->second == 0) continue;
            if (best < 0 || work[r].size() < work[best].size()) best = r;
        }
        if (best < 0) continue;
        used[best] = true;
        mpq_class inv = 1 / work[best].begin()->second;
        // normalize: leading entry must be at c; maps are ordered, but earlier
        // columns were already cleared, so begin() is the pivot
        for (auto& [cc, v] : work[best]) v *= inv;
        for (int64_t r = 0; r < m.rows; ++r) {
            if (r == best || used[r]) continue;
            auto it = work[r].find(c);
            if (it == work[r].end()) continue;
            mpq_class f = it->second;
            for (const auto& [cc, v] : work[best]) {
                auto jt = work[r].find(cc);
                if (jt == work[r].end()) {
                    mpq_class nv = -f * v;
                    if (nv != 0) work[r][cc] = nv;
                } else {
                    jt->second -= f * v;
                    if (jt->second == 0) work[r].erase(jt);
                }
            }
        }
        // also clear previously finished echelon rows at column c
        for (auto& row : out.echelon) {
            mpq_class f = 0;
            for (const auto& [cc, v] : row)
                if (cc == c) {
                    f = v;
                    break;
                }
            if (f == 0) continue;
            std::map<int64_t, mpq_class> merged(row.begin(), row.end());
            for (const auto& [cc, v] : work[best]) {
                auto jt = merged.find(cc);
                if (jt == merged.end()) {
                    mpq_class nv = -f * v;
                    if (nv != 0) merged[cc] = nv;
                } else {
                    jt->second -= f * v;
                    if (jt->second == 0) merged.erase(jt);
                }
            }
            row.assign(merged.begin(), merged.end());
        }
        out.pivot_cols.push_back(c);
        out.echelon.emplace_back(work[best].begin(), work[best].end());
        work[best].clear();
    }
    return out;
}

std::vector<std::vector<mpq_class>> kernel_basis(const SparseIntMatrix& m) {
    RationalEchelon e = rational_echelon(m);
    std::vector<bool> is_pivot(m.cols, false);
    std::vector<int64_t> pivot_row_of(m.cols, -1);
    for (size_t i = 0; i < e.pivot_cols.size(); ++i) {
        is_pivot[e.pivot_cols[i]] = true;
        pivot_row_of[e.pivot_cols[i]] = static_cast<int64_t>(i);
    }
    std::vector<std::vector<mpq_class>> basis;
    for (int64_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<mpq_class> x(m.cols, mpq_class(0));
        x[f] = 1;
        for (size_t i = 0; i < e.echelon.size(); ++i) {
            for (const auto& [c, v] : e.echelon[i])
                if (c == f) {
                    x[e.pivot_cols[i]] = -v; // RREF rows have unit pivots
                    break;
                }
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<std::vector<mpq_class>> solve_rational(const SparseIntMatrix& m,
                                                     const std::vector<mpq_class>& c) {
    if (static_cast<int64_t>(c.size()) != m.rows) throw input_error("rhs size mismatch");
    // eliminate in an augmented system; reuse the echelon and back-substitute
    std::vector<std::map<int64_t, mpq_class>> work(m.rows);
    std::vector<mpq_class> rhs = c;
    for (int64_t col = 0; col < m.cols; ++col)
        for (int64_t k = m.col_start[col]; k < m.col_start[col + 1]; ++k)
            work[m.row_idx[k]][col] = mpq_class(m.value[k]);

    std::vector<int64_t> pivot_col_of_row;
    std::vector<int64_t> pivot_rows;
    std::vector<bool> used(m.rows, false);
    for (int64_t col = 0; col < m.cols; ++col) {
        int64_t best = -1;
        for (int64_t r = 0; r < m.rows; ++r) {
            if (used[r]) continue;
            auto it = work[r].find(col);
            if (it == work[r].end() || it->second == 0) continue;
            if (best < 0 || work[r].size() < work[best].size()) best = r;
        }
        if (best < 0) continue;
        used[best] = true;
        mpq_class inv = 1 / work[best][col];
        for (auto& [cc, v] : work[best]) v *= inv;
        rhs[best] *= inv;
        for (int64_t r = 0; r < m.rows; ++r) {
            if (r == best) continue;
            auto it = work[r].find(col);
            if (it == work[r].end()) continue;
            mpq_class f = it->second;
            for (const auto& [cc, v] : work[best]) {
                auto jt = work[r].find(cc);
                if (jt == work[r].end()) {
                    mpq_class nv = -f * v;
                    if (nv != 0) work[r][cc] = nv;
                } else {
                    jt->second -= f * v;
                    if (jt->second == 0) work[r].erase(jt);
                }
            }
            rhs[r] -= f * rhs[best];
        }
        pivot_col_of_row.push_back(col);
        pivot_rows.push_back(best);
    }
    for (int64_t r = 0; r < m.rows; ++r)
        if (!used[r] && work[r].empty() && rhs[r] != 0) return std::nullopt;
    // rows that never became pivots must have empty work rows now
    for (int64_t r = 0; r < m.rows; ++r)
        if (!used[r] && !work[r].empty())
            return std::nullopt; // cannot happen: nonzero entries imply a pivot existed
    std::vector<mpq_class> x(m.cols, mpq_class(0));
    for (size_t i = 0; i < pivot_rows.size(); ++i) x[pivot_col_of_row[i]] = rhs[pivot_rows[i]];
    // check consistency for non-pivot rows with leftover rhs
    for (int64_t r = 0; r < m.rows; ++r) {
        if (used[r]) continue;
        if (rhs[r] != 0) return std::nullopt;
    }
    return x;
}

std::optional<std::vector<mpz_class>> solve_integer(const SparseIntMatrix& m,
                                                    const std::vector<mpz_class>& c) {
    if (static_cast<int64_t>(c.size()) != m.rows) throw input_error("rhs size mismatch");
    if (m.rows > limits::max_dense_solve_dim || m.cols > limits::max_dense_solve_dim)
        throw capacity_error("integer solve limited to " +
                             std::to_string(limits::max_dense_solve_dim) + " rows/cols");
    int64_t rows = m.rows, cols = m.cols;
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (int64_t col = 0; col < cols; ++col)
        for (int64_t k = m.col_start[col]; k < m.col_start[col + 1]; ++k)
            a[m.row_idx[k]][col] = m.value[k];
    // U (rows x rows) and V (cols x cols) with S = U a V
    std::vector<std::vector<mpz_class>> u(rows, std::vector<mpz_class>(rows));
    std::vector<std::vector<mpz_class>> v(cols, std::vector<mpz_class>(cols));
    for (int64_t i = 0; i < rows; ++i) u[i][i] = 1;
    for (int64_t j = 0; j < cols; ++j) v[j][j] = 1;

    auto row_op = [&](int64_t dst, int64_t src, const mpz_class& f) { // row dst -= f*src
        for (int64_t j = 0; j < cols; ++j) a[dst][j] -= f * a[src][j];
        for (int64_t j = 0; j < rows; ++j) u[dst][j] -= f * u[src][j];
    };
    auto col_op = [&](int64_t dst, int64_t src, const mpz_class& f) { // col dst -= f*src
        for (int64_t i = 0; i < rows; ++i) a[i][dst] -= f * a[i][src];
        for (int64_t i = 0; i < cols; ++i) v[i][dst] -= f * v[i][src];
    };

    int64_t t = 0;
    while (t < rows && t < cols) {
        int64_t pr = -1, pc = -1;
        mpz_class best;
        for (int64_t i = t; i < rows; ++i)
            for (int64_t j = t; j < cols; ++j)
                if (a[i][j] != 0) {
                    mpz_class val = abs(a[i][j]);
                    if (pr < 0 || val < best) {
                        best = val;
                        pr = i;
                        pc = j;
                    }
                }
        if (pr < 0) break;
        std::swap(a[t], a[pr]);
        std::swap(u[t], u[pr]);
        for (int64_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pc]);
        for (int64_t i = 0; i < cols; ++i) std::swap(v[i][t], v[i][pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int64_t i = t + 1; i < rows; ++i)
                if (a[i][t] != 0) {
                    mpz_class q = a[i][t] / a[t][t];
                    row_op(i, t, q);
                    if (a[i][t] != 0) {
                        std::swap(a[t], a[i]);
                        std::swap(u[t], u[i]);
                        clean = false;
                    }
                }
            for (int64_t j = t + 1; j < cols; ++j)
                if (a[t][j] != 0) {
                    mpz_class q = a[t][j] / a[t][t];
                    col_op(j, t, q);
                    if (a[t][j] != 0) {
                        for (int64_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
                        for (int64_t i = 0; i < cols; ++i) std::swap(v[i][t], v[i][j]);
                        clean = false;
                    }
                }
        }
        ++t;
    }
    // y solves S y = U c; x = V y
    std::vector<mpz_class> uc(rows, mpz_class(0));
    for (int64_t i = 0; i < rows; ++i)
        for (int64_t j = 0; j < rows; ++j) uc[i] += u[i][j] * c[j];
    std::vector<mpz_class> y(cols, mpz_class(0));
    for (int64_t i = 0; i < rows; ++i) {
        mpz_class s = (i < cols) ? a[i][i] : mpz_class(0);
        if (s == 0) {
            if (uc[i] != 0) return std::nullopt;
        } else {
            if (uc[i] % s != 0) return std::nullopt;
            y[i] = uc[i] / s;
        }
    }
    std::vector<mpz_class> x(cols, mpz_class(0));
    for (int64_t i = 0; i < cols; ++i)
        for (int64_t j = 0; j < cols; ++j) x[i] += v[i][j] * y[j];
    return x;
}

} // namespace gch
