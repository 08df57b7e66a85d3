#include "gch/modp.hpp"

#include <algorithm>
#include <queue>
#include <unordered_map>

namespace gch {

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

inline uint32_t mul_mod(uint32_t a, uint32_t b, uint32_t p) {
    return static_cast<uint32_t>((uint64_t(a) * b) % p);
}

uint32_t inv_mod(uint32_t a, uint32_t p) { // p prime
    // binary exponentiation a^(p-2)
    uint64_t base = a % p, acc = 1, e = p - 2;
    while (e) {
        if (e & 1) acc = (acc * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(acc);
}

using Entry = std::pair<int64_t, uint32_t>; // row, value (row-major max-heap)

} // namespace

ModPReduction reduce_mod_p(const SparseIntMatrix& m, uint32_t p,
                           const std::vector<uint8_t>* cleared) {
    if (!is_prime_u32(p)) throw input_error("modulus must be prime: " + std::to_string(p));
    ModPReduction out;
    // pivot row -> reduced column, entries sorted by descending row, unit leading value
    std::unordered_map<int64_t, std::vector<Entry>> pivots;
    pivots.reserve(static_cast<size_t>(std::min(m.rows, m.cols)));

    std::priority_queue<Entry> heap;
    std::vector<Entry> scratch;

    for (int64_t c = 0; c < m.cols; ++c) {
        if (cleared && (*cleared)[c]) continue;
        for (int64_t k = m.col_start[c]; k < m.col_start[c + 1]; ++k) {
            int64_t v = m.value[k] % static_cast<int64_t>(p);
            if (v < 0) v += p;
            if (v) heap.emplace(m.row_idx[k], static_cast<uint32_t>(v));
        }
        int64_t pivot_row = -1;
        while (!heap.empty()) {
            int64_t r = heap.top().first;
            uint64_t acc = 0;
            while (!heap.empty() && heap.top().first == r) {
                acc += heap.top().second;
                if (acc >= (uint64_t(1) << 62)) acc %= p;
                heap.pop();
            }
            uint32_t v = static_cast<uint32_t>(acc % p);
            if (v == 0) continue;
            auto it = pivots.find(r);
            if (it == pivots.end()) {
                pivot_row = r;
                // drain the rest of the working column
                scratch.clear();
                scratch.emplace_back(r, v);
                while (!heap.empty()) {
                    int64_t r2 = heap.top().first;
                    uint64_t a2 = 0;
                    while (!heap.empty() && heap.top().first == r2) {
                        a2 += heap.top().second;
                        if (a2 >= (uint64_t(1) << 62)) a2 %= p;
                        heap.pop();
                    }
                    uint32_t v2 = static_cast<uint32_t>(a2 % p);
                    if (v2) scratch.emplace_back(r2, v2);
                }
                // normalize to unit leading value
                uint32_t inv = inv_mod(v, p);
                for (auto& e : scratch) e.second = mul_mod(e.second, inv, p);
                pivots.emplace(r, scratch);
                break;
            }
            // subtract v * pivot column (its leading value is 1)
            uint32_t f = p - v;
            for (const auto& e : it->second)
                if (e.first != r) heap.emplace(e.first, mul_mod(e.second, f, p));
        }
        if (pivot_row >= 0) {
            ++out.rank;
            out.pivot_rows.push_back(pivot_row);
        }
    }
    std::sort(out.pivot_rows.begin(), out.pivot_rows.end());
    return out;
}

} // namespace gch
