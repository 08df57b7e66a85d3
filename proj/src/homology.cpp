#include "gch/homology.hpp"

#include <algorithm>
#include <chrono>

#include <json.hpp>

#include "gch/threads.hpp"

namespace gch {

namespace {
int64_t now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}
} // namespace

RankMode RankMode::mod_prime(uint32_t p) {
    if (!is_prime_u32(p)) throw input_error("modulus must be prime: " + std::to_string(p));
    return {Kind::ModPrime, p, 0};
}

RankMode RankMode::certified(uint32_t a, uint32_t b) {
    if (!is_prime_u32(a) || !is_prime_u32(b) || a == b)
        throw input_error("certified mode needs two distinct primes");
    return {Kind::RationalCertified, a, b};
}

std::string RankMode::name() const {
    switch (kind) {
        case Kind::ExactInt: return "exact";
        case Kind::ModPrime: return "modp:" + std::to_string(p1);
        case Kind::RationalCertified:
            return "certified:" + std::to_string(p1) + "," + std::to_string(p2);
    }
    return "?";
}

int64_t rank_matrix(const SparseIntMatrix& m, const RankMode& mode) {
    switch (mode.kind) {
        case RankMode::Kind::ExactInt:
            if (m.nonzeros() > exact_nonzero_limit())
                throw capacity_error("ExactInt refuses matrix with " +
                                     std::to_string(m.nonzeros()) + " nonzeros (limit " +
                                     std::to_string(exact_nonzero_limit()) + ")");
            return rank_exact(m);
        case RankMode::Kind::ModPrime: return rank_mod_p(m, mode.p1);
        case RankMode::Kind::RationalCertified: {
            int64_t r1 = rank_mod_p(m, mode.p1);
            int64_t r2 = rank_mod_p(m, mode.p2);
            if (r1 != r2)
                throw certification_error("rank certification failed: " + std::to_string(r1) +
                                          " mod " + std::to_string(mode.p1) + " vs " +
                                          std::to_string(r2) + " mod " + std::to_string(mode.p2));
            return r1;
        }
    }
    return 0;
}

int64_t ChainComplexData::euler_characteristic() const {
    int64_t chi = 0;
    for (size_t d = 0; d < counts.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * counts[d];
    return chi;
}

ChainComplexData complex_data(const FamilyComplex& x) {
    ChainComplexData out;
    int top = x.max_degree();
    out.counts.resize(top + 1);
    out.boundaries.resize(top + 1);
    for (int d = 0; d <= top; ++d) out.counts[d] = x.generator_count(d);
    for (int d = 1; d <= top; ++d) {
        if (out.counts[d] > 0 && out.counts[d - 1] > 0 && x.degree_built(d) && x.degree_built(d - 1))
            out.boundaries[d] = x.boundary_matrix(d);
        else
            out.boundaries[d] = SparseIntMatrix(d >= 1 ? out.counts[d - 1] : 0, out.counts[d]);
    }
    out.boundaries[0] = SparseIntMatrix(0, out.counts[0]);
    return out;
}

namespace {

// ranks[d] = rank of boundaries[d] over F_p, reduced top-down with clearing
std::vector<int64_t> sweep_ranks_mod_p(const ChainComplexData& x, uint32_t p) {
    int top = x.max_degree();
    std::vector<int64_t> ranks(top + 2, 0);
    std::vector<uint8_t> cleared; // for degree d: flags over columns of boundaries[d]
    bool have_cleared = false;
    for (int d = top; d >= 1; --d) {
        const SparseIntMatrix& m = x.boundaries[d];
        if (m.rows == 0 || m.cols == 0) {
            ranks[d] = 0;
            have_cleared = false;
            continue;
        }
        ModPReduction red = reduce_mod_p(m, p, have_cleared ? &cleared : nullptr);
        ranks[d] = red.rank;
        cleared.assign(static_cast<size_t>(m.rows), 0);
        for (int64_t r : red.pivot_rows) cleared[static_cast<size_t>(r)] = 1;
        have_cleared = true;
    }
    return ranks;
}

} // namespace

HomologySummary homology_data(const ChainComplexData& x, const RankMode& mode) {
    int64_t t0 = now_ms();
    HomologySummary out;
    out.mode = mode;
    int top = x.max_degree();
    std::vector<int64_t> ranks(top + 2, 0);

    switch (mode.kind) {
        case RankMode::Kind::ExactInt: {
            std::vector<SmithResult> snf(top + 1);
            parallel_for(1, top + 1, [&](int64_t d) {
                const SparseIntMatrix& m = x.boundaries[d];
                if (m.rows == 0 || m.cols == 0) return;
                if (m.nonzeros() > exact_nonzero_limit())
                    throw capacity_error("ExactInt refuses boundary at degree " +
                                         std::to_string(d) + " with " +
                                         std::to_string(m.nonzeros()) + " nonzeros");
                snf[d] = smith_normal_form(m);
                ranks[d] = snf[d].rank();
            });
            for (int d = 0; d <= top; ++d) {
                if (d + 1 <= top) {
                    std::vector<mpz_class> tor;
                    for (const auto& f : snf[d + 1].invariant_factors)
                        if (f > 1) tor.push_back(f);
                    if (!tor.empty()) out.torsion[d] = tor;
                }
            }
            out.certified = true;
            break;
        }
        case RankMode::Kind::ModPrime: {
            ranks = sweep_ranks_mod_p(x, mode.p1);
            out.certified = false;
            break;
        }
        case RankMode::Kind::RationalCertified: {
            ranks = sweep_ranks_mod_p(x, mode.p1);
            std::vector<int64_t> ranks2 = sweep_ranks_mod_p(x, mode.p2);
            if (ranks != ranks2)
                throw certification_error("modular rank sweeps disagree between primes " +
                                          std::to_string(mode.p1) + " and " +
                                          std::to_string(mode.p2));
            out.certified = true;
            break;
        }
    }

    for (int d = 0; d <= top; ++d) {
        int64_t b = x.counts[d] - ranks[d] - (d + 1 <= top ? ranks[d + 1] : 0);
        if (b != 0) out.betti[d] = b;
    }
    out.elapsed_ms = now_ms() - t0;
    return out;
}

HomologySummary homology(const FamilyComplex& x, const RankMode& mode) {
    return homology_data(complex_data(x), mode);
}

DegreeHomology homology_degree(const FamilyComplex& x, int d, const RankMode& mode) {
    DegreeHomology out;
    int64_t n = x.generator_count(d);
    if (n == 0) return out;

    auto matrix_at = [&](int dd) -> const SparseIntMatrix* {
        if (dd < 1 || dd > x.max_degree()) return nullptr;
        if (x.generator_count(dd) == 0 || x.generator_count(dd - 1) == 0) return nullptr;
        return &x.boundary_matrix(dd);
    };
    const SparseIntMatrix* up = matrix_at(d + 1);
    const SparseIntMatrix* down = matrix_at(d);

    int64_t rank_up = 0, rank_down = 0;
    switch (mode.kind) {
        case RankMode::Kind::ExactInt: {
            if (up) {
                if (up->nonzeros() > exact_nonzero_limit())
                    throw capacity_error("ExactInt refuses boundary at degree " +
                                         std::to_string(d + 1));
                SmithResult s = smith_normal_form(*up);
                rank_up = s.rank();
                for (const auto& f : s.invariant_factors)
                    if (f > 1) out.torsion.push_back(f);
            }
            if (down) {
                if (down->nonzeros() > exact_nonzero_limit())
                    throw capacity_error("ExactInt refuses boundary at degree " +
                                         std::to_string(d));
                rank_down = rank_exact(*down);
            }
            break;
        }
        case RankMode::Kind::ModPrime:
        case RankMode::Kind::RationalCertified: {
            std::vector<uint32_t> primes{mode.p1};
            if (mode.kind == RankMode::Kind::RationalCertified) primes.push_back(mode.p2);
            std::vector<std::pair<int64_t, int64_t>> results;
            for (uint32_t p : primes) {
                int64_t ru = 0, rd = 0;
                std::vector<uint8_t> cleared;
                if (up) {
                    ModPReduction red = reduce_mod_p(*up, p);
                    ru = red.rank;
                    cleared.assign(static_cast<size_t>(up->rows), 0);
                    for (int64_t r : red.pivot_rows) cleared[static_cast<size_t>(r)] = 1;
                }
                if (down) {
                    ModPReduction red =
                        reduce_mod_p(*down, p, cleared.empty() ? nullptr : &cleared);
                    rd = red.rank;
                }
                results.emplace_back(ru, rd);
            }
            if (results.size() == 2 && results[0] != results[1])
                throw certification_error("modular ranks disagree at degree " + std::to_string(d));
            rank_up = results[0].first;
            rank_down = results[0].second;
            break;
        }
    }
    out.betti = n - rank_up - rank_down;
    return out;
}

bool is_cycle(const Chain& c) { return boundary_chain(c).is_zero(); }

namespace {

std::vector<int64_t> chain_vector_indices(const FamilyComplex& x, const Chain& c,
                                          std::vector<mpz_class>& values) {
    std::vector<int64_t> idx;
    for (const auto& [g, coef] : c.coefficients) {
        auto i = x.generator_index(g);
        if (!i) throw input_error("chain term is not a generator: " + format_graph(g));
        idx.push_back(*i);
        values.push_back(coef);
    }
    return idx;
}

int32_t to_i32(const mpz_class& v) {
    if (v > 2147483647 || v < -2147483647)
        throw capacity_error("coefficient exceeds 32-bit matrix entry range");
    return static_cast<int32_t>(v.get_si());
}

} // namespace

bool is_boundary(const FamilyComplex& x, const Chain& c, bool over_integers, Chain* witness) {
    if (!is_cycle(c)) throw input_error("is_boundary requires a cycle");
    int d = c.degree;
    if (c.is_zero()) {
        if (witness) *witness = Chain(x.k(), x.family(), d + 1);
        return true;
    }
    int64_t n = x.generator_count(d);
    std::vector<mpz_class> rhs_z(n, mpz_class(0));
    {
        std::vector<mpz_class> vals;
        auto idx = chain_vector_indices(x, c, vals);
        for (size_t t = 0; t < idx.size(); ++t) rhs_z[idx[t]] = vals[t];
    }
    if (x.generator_count(d + 1) == 0) return false; // nonzero cycle, empty image

    const SparseIntMatrix& m = x.boundary_matrix(d + 1);
    if (over_integers) {
        auto sol = solve_integer(m, rhs_z);
        if (!sol) return false;
        if (witness) {
            Chain w(x.k(), x.family(), d + 1);
            const auto& gens = x.generators(d + 1);
            for (int64_t j = 0; j < static_cast<int64_t>(sol->size()); ++j)
                if ((*sol)[j] != 0) w.add(gens[j], (*sol)[j]);
            *witness = w;
        }
        return true;
    }
    std::vector<mpq_class> rhs_q(rhs_z.begin(), rhs_z.end());
    return solve_rational(m, rhs_q).has_value();
}

bool verify_basis(const FamilyComplex& x, const std::vector<Chain>& candidates, int d) {
    for (const Chain& c : candidates) {
        if (c.degree != d) throw input_error("candidate degree mismatch");
        if (!is_cycle(c)) return false;
    }
    bool small = true;
    if (x.generator_count(d + 1) > 0 && x.generator_count(d) > 0)
        small = x.boundary_matrix(d + 1).nonzeros() <= exact_nonzero_limit() / 2;
    RankMode mode = small ? RankMode::exact() : RankMode::certified();
    DegreeHomology h = homology_degree(x, d, mode);
    if (static_cast<int64_t>(candidates.size()) != h.betti) return false;
    if (candidates.empty()) return true;

    // stacked system: image columns followed by candidate columns
    int64_t rows = x.generator_count(d);
    const SparseIntMatrix* up = nullptr;
    if (x.generator_count(d + 1) > 0) up = &x.boundary_matrix(d + 1);
    int64_t image_cols = up ? up->cols : 0;
    SparseIntMatrix::Builder b(rows, image_cols + static_cast<int64_t>(candidates.size()));
    if (up)
        for (int64_t c = 0; c < up->cols; ++c)
            for (int64_t k = up->col_start[c]; k < up->col_start[c + 1]; ++k)
                b.add(up->row_idx[k], c, up->value[k]);
    for (size_t t = 0; t < candidates.size(); ++t) {
        std::vector<mpz_class> vals;
        auto idx = chain_vector_indices(x, candidates[t], vals);
        for (size_t s = 0; s < idx.size(); ++s)
            b.add(idx[s], image_cols + static_cast<int64_t>(t), to_i32(vals[s]));
    }
    SparseIntMatrix stacked = b.build();
    RankMode rmode =
        stacked.nonzeros() <= exact_nonzero_limit() ? RankMode::exact() : RankMode::certified();
    int64_t rank_image = up ? rank_matrix(*up, rmode) : 0;
    int64_t rank_stacked = rank_matrix(stacked, rmode);
    return rank_stacked == rank_image + static_cast<int64_t>(candidates.size());
}

std::vector<Chain> cycle_representatives(const FamilyComplex& x, int d) {
    int64_t n = x.generator_count(d);
    std::vector<Chain> out;
    if (n == 0) return out;
    if (n > 20000) throw capacity_error("cycle representatives limited to 20000 generators");

    // integer kernel basis of the degree-d boundary
    std::vector<std::vector<mpz_class>> kernel;
    if (d >= 1 && x.generator_count(d - 1) > 0) {
        for (const auto& v : kernel_basis(x.boundary_matrix(d))) {
            mpz_class scale = 1;
            for (const auto& q : v) scale = lcm(scale, q.get_den());
            std::vector<mpz_class> w(v.size());
            mpz_class g = 0;
            for (size_t t = 0; t < v.size(); ++t) {
                w[t] = mpq_class(v[t] * scale).get_num();
                g = gcd(g, w[t]);
            }
            if (g > 1)
                for (auto& val : w) val /= g;
            kernel.push_back(std::move(w));
        }
    } else {
        for (int64_t j = 0; j < n; ++j) {
            std::vector<mpz_class> w(n, mpz_class(0));
            w[j] = 1;
            kernel.push_back(std::move(w));
        }
    }

    // greedy selection of kernel vectors independent modulo the image,
    // via incremental rational elimination seeded with the image columns
    std::vector<std::vector<mpq_class>> span; // reduced vectors, unit leading entry
    std::vector<int64_t> leads;
    auto reduce_into = [&](std::vector<mpq_class> v, bool insert) -> bool {
        for (size_t s = 0; s < span.size(); ++s) {
            if (v[leads[s]] == 0) continue;
            mpq_class f = v[leads[s]];
            for (int64_t t = 0; t < n; ++t) v[t] -= f * span[s][t];
        }
        int64_t lead = -1;
        for (int64_t t = 0; t < n; ++t)
            if (v[t] != 0) {
                lead = t;
                break;
            }
        if (lead < 0) return false;
        if (insert) {
            mpq_class inv = 1 / v[lead];
            for (auto& val : v) val *= inv;
            span.push_back(std::move(v));
            leads.push_back(lead);
        }
        return true;
    };

    int64_t rank_image = 0;
    if (d + 1 <= x.max_degree() && x.generator_count(d + 1) > 0) {
        const SparseIntMatrix& up = x.boundary_matrix(d + 1);
        for (int64_t c = 0; c < up.cols; ++c) {
            std::vector<mpq_class> v(n, mpq_class(0));
            for (int64_t k = up.col_start[c]; k < up.col_start[c + 1]; ++k)
                v[up.row_idx[k]] = up.value[k];
            if (reduce_into(std::move(v), true)) ++rank_image;
        }
    }
    int64_t betti = static_cast<int64_t>(kernel.size()) - rank_image;

    const auto& gens = x.generators(d);
    for (const auto& w : kernel) {
        if (static_cast<int64_t>(out.size()) == betti) break;
        std::vector<mpq_class> v(w.begin(), w.end());
        if (!reduce_into(std::move(v), true)) continue;
        Chain c(x.k(), x.family(), d);
        for (int64_t t = 0; t < n; ++t)
            if (w[t] != 0) c.add(gens[t], w[t]);
        out.push_back(std::move(c));
    }
    if (static_cast<int64_t>(out.size()) != betti)
        throw std::logic_error("kernel did not yield a homology basis");
    return out;
}

std::string homology_json(int k, const GraphFamily& family, const HomologySummary& s) {
    nlohmann::ordered_json j;
    j["k"] = k;
    j["family"] = family.name();
    j["mode"] = s.mode.name();
    nlohmann::ordered_json betti(nlohmann::json::value_t::object);
    for (const auto& [d, b] : s.betti) betti[std::to_string(d)] = b;
    j["betti"] = betti;
    nlohmann::ordered_json torsion(nlohmann::json::value_t::object);
    for (const auto& [d, tor] : s.torsion) {
        std::vector<int64_t> vals;
        for (const auto& f : tor) {
            if (!f.fits_slong_p()) throw capacity_error("torsion factor exceeds 64 bits");
            vals.push_back(f.get_si());
        }
        torsion[std::to_string(d)] = vals;
    }
    j["torsion"] = torsion;
    j["certified"] = s.certified;
    j["elapsed_ms"] = s.elapsed_ms;
    return j.dump();
}

} // namespace gch
