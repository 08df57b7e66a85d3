#include "gch/invariants.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "gch/threads.hpp"

namespace gch {

ChordDiagram::ChordDiagram(int i, std::vector<std::pair<int, int>> c)
    : order(i), chords(std::move(c)) {
    if (static_cast<int>(chords.size()) != i) throw input_error("diagram needs i chords");
    std::vector<char> used(2 * i + 1, 0);
    for (auto& [p, q] : chords) {
        if (p > q) std::swap(p, q);
        if (p < 1 || q > 2 * i || p == q) throw input_error("chord endpoint out of range");
        if (used[p] || used[q]) throw input_error("chord endpoints must be disjoint");
        used[p] = used[q] = 1;
    }
    std::sort(chords.begin(), chords.end());
}

namespace {

void enumerate_matchings(std::vector<int>& free_points, std::vector<std::pair<int, int>>& acc,
                         std::vector<std::vector<std::pair<int, int>>>& out) {
    if (free_points.empty()) {
        out.push_back(acc);
        return;
    }
    int p = free_points.front();
    for (size_t t = 1; t < free_points.size(); ++t) {
        int q = free_points[t];
        std::vector<int> rest;
        for (size_t s = 1; s < free_points.size(); ++s)
            if (s != t) rest.push_back(free_points[s]);
        acc.emplace_back(p, q);
        enumerate_matchings(rest, acc, out);
        acc.pop_back();
    }
}

std::mutex g_table_mutex;
std::map<int, std::vector<ChordDiagram>> g_tables;
std::map<int, std::map<std::vector<std::pair<int, int>>, int64_t>> g_indexes;

} // namespace

std::vector<ChordDiagram> enumerate_diagrams(int order) {
    if (order < 0) throw input_error("order must be >= 0");
    std::vector<ChordDiagram> out;
    if (order == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> points(2 * order);
    std::iota(points.begin(), points.end(), 1);
    std::vector<std::pair<int, int>> acc;
    std::vector<std::vector<std::pair<int, int>>> raw;
    enumerate_matchings(points, acc, raw);
    out.reserve(raw.size());
    for (auto& m : raw) out.emplace_back(order, std::move(m));
    return out;
}

const std::vector<ChordDiagram>& diagram_table(int order) {
    std::lock_guard<std::mutex> lock(g_table_mutex);
    auto it = g_tables.find(order);
    if (it == g_tables.end()) {
        it = g_tables.emplace(order, enumerate_diagrams(order)).first;
        auto& index = g_indexes[order];
        for (size_t t = 0; t < it->second.size(); ++t)
            index.emplace(it->second[t].chords, static_cast<int64_t>(t));
    }
    return it->second;
}

int64_t diagram_index(const ChordDiagram& d) {
    diagram_table(d.order);
    std::lock_guard<std::mutex> lock(g_table_mutex);
    const auto& index = g_indexes[d.order];
    auto it = index.find(d.chords);
    if (it == index.end()) throw input_error("not a diagram of order " + std::to_string(d.order));
    return it->second;
}

bool has_uncrossed_chord(const ChordDiagram& d) {
    for (const auto& [p, q] : d.chords) {
        bool crossed = false;
        for (const auto& [a, b] : d.chords) {
            if (a == p && b == q) continue;
            bool a_in = p < a && a < q;
            bool b_in = p < b && b < q;
            if (a_in != b_in) {
                crossed = true;
                break;
            }
        }
        if (!crossed) return true;
    }
    return false;
}

std::vector<TripleConfiguration> enumerate_triple_configurations(int order) {
    std::vector<TripleConfiguration> out;
    if (order < 2) return out;
    int pts = 2 * order - 1;
    for (int t1 = 1; t1 <= pts; ++t1)
        for (int t2 = t1 + 1; t2 <= pts; ++t2)
            for (int t3 = t2 + 1; t3 <= pts; ++t3) {
                std::vector<int> rest;
                for (int p = 1; p <= pts; ++p)
                    if (p != t1 && p != t2 && p != t3) rest.push_back(p);
                std::vector<std::pair<int, int>> acc;
                std::vector<std::vector<std::pair<int, int>>> matchings;
                enumerate_matchings(rest, acc, matchings);
                for (auto& m : matchings) {
                    TripleConfiguration cfg;
                    cfg.order = order;
                    cfg.triple = {t1, t2, t3};
                    cfg.chords = std::move(m);
                    out.push_back(std::move(cfg));
                }
            }
    return out;
}

namespace {

// Splits `center` of the triple into adjacent copies and returns the diagram
// with the remaining triangle chords attached (a -> left copy when
// a_to_left). Positions renormalize to 1..2i.
ChordDiagram split_diagram(const TripleConfiguration& cfg, int center, int a, int b,
                           bool a_to_left) {
    auto renorm = [&](int x) { return x + (x > center ? 1 : 0); };
    std::vector<std::pair<int, int>> chords;
    chords.reserve(cfg.order);
    for (const auto& [p, q] : cfg.chords) chords.emplace_back(renorm(p), renorm(q));
    int left = center, right = center + 1;
    chords.emplace_back(renorm(a), a_to_left ? left : right);
    chords.emplace_back(renorm(b), a_to_left ? right : left);
    return ChordDiagram(cfg.order, std::move(chords));
}

// delta for one erased triangle edge, as diagram-index -> coefficient. The
// relative orientation flips when the shared endpoint is the middle point of
// the triple; with a uniform orientation the three differences of Eq.-style
// splittings would be inconsistent already at order 2.
void accumulate_delta(const TripleConfiguration& cfg, int center, int sign,
                      std::map<int64_t, int>& row) {
    int a = 0, b = 0;
    if (center == cfg.triple[0]) {
        a = cfg.triple[1];
        b = cfg.triple[2];
    } else if (center == cfg.triple[1]) {
        a = cfg.triple[0];
        b = cfg.triple[2];
        sign = -sign;
    } else {
        a = cfg.triple[0];
        b = cfg.triple[1];
    }
    ChordDiagram alpha = split_diagram(cfg, center, a, b, true);
    ChordDiagram beta = split_diagram(cfg, center, a, b, false);
    row[diagram_index(alpha)] += sign;
    row[diagram_index(beta)] -= sign;
}

} // namespace

RelationSystem four_term_rows(int order) {
    if (order < 1) throw input_error("four_term_rows requires order >= 1");
    const auto& table = diagram_table(order);
    auto configs = enumerate_triple_configurations(order);

    std::vector<std::array<std::map<int64_t, int>, 2>> per_config(configs.size());
    parallel_for(0, static_cast<int64_t>(configs.size()), [&](int64_t t) {
        const auto& cfg = configs[t];
        for (int pair = 0; pair < 2; ++pair) {
            // delta(t_pair) - delta(t_pair+1)
            std::map<int64_t, int> row;
            accumulate_delta(cfg, cfg.triple[pair], +1, row);
            accumulate_delta(cfg, cfg.triple[pair + 1], -1, row);
            std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
            per_config[t][pair] = std::move(row);
        }
    });
    std::vector<std::map<int64_t, int>> rows;
    for (auto& pair_rows : per_config)
        for (auto& row : pair_rows)
            if (!row.empty()) rows.push_back(std::move(row));
    RelationSystem out;
    out.order = order;
    out.four_term_count = static_cast<int64_t>(rows.size());
    for (size_t t = 0; t < table.size(); ++t)
        if (has_uncrossed_chord(table[t])) {
            std::map<int64_t, int> row;
            row[static_cast<int64_t>(t)] = 1;
            rows.push_back(std::move(row));
        }
    SparseIntMatrix::Builder b(static_cast<int64_t>(rows.size()),
                               static_cast<int64_t>(table.size()));
    for (size_t r = 0; r < rows.size(); ++r)
        for (const auto& [c, v] : rows[r]) b.add(static_cast<int64_t>(r), c, v);
    out.rows = b.build();
    return out;
}

WeightSpace weight_space(int order) {
    if (order < 0) throw input_error("order must be >= 0");
    if (order > 6) throw capacity_error("weight_space supports order <= 6");
    WeightSpace out;
    const auto& table = diagram_table(order);
    if (order == 0) {
        out.dimension = 1;
        WeightSystem w;
        w.order = 0;
        w.values = {mpq_class(1)};
        out.basis.push_back(std::move(w));
        return out;
    }
    RelationSystem rel = four_term_rows(order);
    auto kernel = kernel_basis(rel.rows);
    out.dimension = static_cast<int64_t>(kernel.size());
    for (auto& v : kernel) {
        WeightSystem w;
        w.order = order;
        w.values = std::move(v);
        out.basis.push_back(std::move(w));
    }
    (void)table;
    return out;
}

int64_t weight_space_dim_modular(int order, uint32_t p1, uint32_t p2) {
    if (order == 0) return 1;
    RelationSystem rel = four_term_rows(order);
    int64_t r1 = rank_mod_p(rel.rows, p1);
    int64_t r2 = rank_mod_p(rel.rows, p2);
    if (r1 != r2) throw certification_error("relation ranks disagree between primes");
    return rel.rows.cols - r1;
}

mpq_class evaluate_product(const WeightSystem& w1, const WeightSystem& w2,
                           const ChordDiagram& t) {
    if (t.order != w1.order + w2.order)
        throw input_error("product needs order(t) = order(w1) + order(w2)");
    int i = t.order, i1 = w1.order;
    mpq_class acc(0);

    auto renormalized = [&](const std::vector<std::pair<int, int>>& chords) {
        std::vector<int> pts;
        for (auto& [p, q] : chords) {
            pts.push_back(p);
            pts.push_back(q);
        }
        std::sort(pts.begin(), pts.end());
        std::vector<std::pair<int, int>> out;
        for (auto& [p, q] : chords) {
            int np = static_cast<int>(std::lower_bound(pts.begin(), pts.end(), p) - pts.begin()) + 1;
            int nq = static_cast<int>(std::lower_bound(pts.begin(), pts.end(), q) - pts.begin()) + 1;
            out.emplace_back(np, nq);
        }
        return ChordDiagram(static_cast<int>(chords.size()), std::move(out));
    };

    // ordered decompositions = chord subsets of size i1
    std::vector<int> pick(i1);
    std::iota(pick.begin(), pick.end(), 0);
    bool done = (i1 > i);
    while (!done) {
        std::vector<std::pair<int, int>> part1, part2;
        std::vector<char> in1(i, 0);
        for (int s : pick) in1[s] = 1;
        for (int s = 0; s < i; ++s) (in1[s] ? part1 : part2).push_back(t.chords[s]);
        ChordDiagram t1 = renormalized(part1);
        ChordDiagram t2 = renormalized(part2);
        acc += w1.values.at(diagram_index(t1)) * w2.values.at(diagram_index(t2));
        if (i1 == 0) break;
        int s = i1 - 1;
        while (s >= 0 && pick[s] == i - (i1 - s)) --s;
        if (s < 0) break;
        ++pick[s];
        for (int u = s + 1; u < i1; ++u) pick[u] = pick[u - 1] + 1;
    }
    return acc;
}

bool product_in_span(const WeightSystem& w1, const WeightSystem& w2) {
    int order = w1.order + w2.order;
    const auto& table = diagram_table(order);
    std::vector<mpq_class> f(table.size());
    for (size_t t = 0; t < table.size(); ++t) f[t] = evaluate_product(w1, w2, table[t]);
    RelationSystem rel = four_term_rows(order);
    const SparseIntMatrix& m = rel.rows;
    std::vector<mpq_class> acc(m.rows, mpq_class(0));
    for (int64_t c = 0; c < m.cols; ++c)
        for (int64_t k = m.col_start[c]; k < m.col_start[c + 1]; ++k)
            acc[m.row_idx[k]] += mpq_class(m.value[k]) * f[c];
    for (const auto& v : acc)
        if (v != 0) return false;
    return true;
}

mpz_class xi_rank(const MultiIndex& a) {
    if (a.b != 0) throw input_error("xi_rank requires b = 0");
    mpz_class r(1);
    for (int part : a.parts) {
        mpz_class f(1);
        for (int t = 2; t <= part - 2; ++t) f *= t;
        r *= f;
    }
    return r;
}

int lambda_expected_degree(const MultiIndex& a) {
    return 2 * a.size() - 3 * a.group_count() - 1;
}

namespace {

const ChainComplexData& two_connected_data(int part) {
    static std::mutex mutex;
    static std::map<int, ChainComplexData> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(part);
    if (it == cache.end()) {
        FamilyComplex x = build_complex(part, GraphFamily::l_connected(2));
        it = cache.emplace(part, complex_data(x)).first;
    }
    return it->second;
}

ChainComplexData tensor_complex(const std::vector<const ChainComplexData*>& fs) {
    int n = static_cast<int>(fs.size());
    int top = 0;
    for (const auto* f : fs) top += f->max_degree();

    // per total degree: contributing degree tuples with base offsets
    struct Block {
        std::vector<int> degs;
        int64_t offset;
        std::vector<int64_t> radix; // counts per factor
    };
    std::vector<std::vector<Block>> blocks(top + 1);
    std::vector<std::map<std::vector<int>, int64_t>> block_of(top + 1); // degs -> block idx

    std::vector<int> degs(n, 0);
    auto emit = [&](auto&& self, int factor, int total) -> void {
        if (factor == n) {
            auto& list = blocks[total];
            Block blk;
            blk.degs = degs;
            blk.offset = list.empty() ? 0 : list.back().offset + [&] {
                int64_t sz = 1;
                for (int j = 0; j < n; ++j) sz *= fs[j]->counts[list.back().degs[j]];
                return sz;
            }();
            for (int j = 0; j < n; ++j) blk.radix.push_back(fs[j]->counts[degs[j]]);
            block_of[total].emplace(degs, static_cast<int64_t>(list.size()));
            list.push_back(std::move(blk));
            return;
        }
        for (int d = 0; d <= fs[factor]->max_degree(); ++d) {
            if (fs[factor]->counts[d] == 0) continue;
            degs[factor] = d;
            self(self, factor + 1, total + d);
        }
    };
    emit(emit, 0, 0);

    ChainComplexData out;
    out.counts.assign(top + 1, 0);
    for (int t = 0; t <= top; ++t) {
        int64_t c = 0;
        for (const auto& blk : blocks[t]) {
            int64_t sz = 1;
            for (int64_t r : blk.radix) sz *= r;
            c += sz;
        }
        out.counts[t] = c;
        if (c > limits::max_generators_per_degree)
            throw capacity_error("tensor complex degree " + std::to_string(t) + " too large");
    }

    auto column_index = [&](int total, const std::vector<int>& dtuple,
                            const std::vector<int64_t>& idx) -> int64_t {
        const auto& map = block_of[total];
        auto it = map.find(dtuple);
        const Block& blk = blocks[total][it->second];
        int64_t pos = 0;
        for (int j = 0; j < n; ++j) pos = pos * blk.radix[j] + idx[j];
        return blk.offset + pos;
    };

    out.boundaries.resize(top + 1);
    out.boundaries[0] = SparseIntMatrix(0, out.counts[0]);
    for (int t = 1; t <= top; ++t) {
        SparseIntMatrix::Builder b(out.counts[t - 1], out.counts[t]);
        for (const auto& blk : blocks[t]) {
            int64_t sz = 1;
            for (int64_t r : blk.radix) sz *= r;
            std::vector<int64_t> idx(n, 0);
            for (int64_t flat = 0; flat < sz; ++flat) {
                int64_t col = blk.offset + flat;
                int sign_prefix = 1;
                for (int m = 0; m < n; ++m) {
                    int dm = blk.degs[m];
                    if (dm >= 1) {
                        const SparseIntMatrix& fb = fs[m]->boundaries[dm];
                        if (fb.rows > 0) {
                            std::vector<int> dt = blk.degs;
                            dt[m] = dm - 1;
                            for (int64_t k = fb.col_start[idx[m]]; k < fb.col_start[idx[m] + 1];
                                 ++k) {
                                std::vector<int64_t> ridx = idx;
                                ridx[m] = fb.row_idx[k];
                                b.add(column_index(t - 1, dt, ridx), col,
                                      sign_prefix * fb.value[k]);
                            }
                        }
                    }
                    if (blk.degs[m] % 2 == 1) sign_prefix = -sign_prefix;
                }
                // advance mixed-radix index, last factor fastest
                for (int j = n - 1; j >= 0; --j) {
                    if (++idx[j] < blk.radix[j]) break;
                    idx[j] = 0;
                }
            }
        }
        out.boundaries[t] = b.build();
    }
    return out;
}

} // namespace

HomologySummary lambda_homology(const MultiIndex& a) {
    if (a.b != 0) throw input_error("lambda_homology requires b = 0");
    if (a.parts.empty()) throw input_error("lambda_homology requires at least one group");
    for (int part : a.parts)
        if (part > limits::lambda_max_part)
            throw capacity_error("lambda factor " + std::to_string(part) + " exceeds capacity " +
                                 std::to_string(limits::lambda_max_part));
    int n = a.group_count();
    if (n == 1) {
        int k = a.parts[0];
        RankMode mode = (k <= 6) ? RankMode::exact() : RankMode::certified();
        FamilyComplex x = build_complex(k, GraphFamily::l_connected(2));
        return homology(x, mode); // join shift #A-1 = 0
    }
    if (std::any_of(a.parts.begin(), a.parts.end(), [](int p) { return p > 6; }))
        throw capacity_error("tensor factors above 6 nodes are out of capacity");
    std::vector<const ChainComplexData*> fs;
    for (int part : a.parts) fs.push_back(&two_connected_data(part));
    ChainComplexData tensor = tensor_complex(fs);
    int64_t nnz = 0;
    for (const auto& m : tensor.boundaries) nnz = std::max(nnz, m.nonzeros());
    RankMode mode = nnz <= exact_nonzero_limit() ? RankMode::exact() : RankMode::certified();
    HomologySummary h = homology_data(tensor, mode);
    // apply the join grading shift #A-1
    HomologySummary shifted;
    shifted.mode = h.mode;
    shifted.certified = h.certified;
    shifted.elapsed_ms = h.elapsed_ms;
    for (const auto& [d, bv] : h.betti) shifted.betti[d + n - 1] = bv;
    for (const auto& [d, tv] : h.torsion) shifted.torsion[d + n - 1] = tv;
    return shifted;
}

void xi_add(XiElement& e, const TensorTerm& t, const mpz_class& c) {
    if (c == 0) return;
    auto it = e.find(t);
    if (it == e.end()) {
        e.emplace(t, c);
    } else {
        it->second += c;
        if (it->second == 0) e.erase(it);
    }
}

XiClass make_xi_class(std::vector<XiGroup> groups) {
    for (auto& g : groups) {
        int a = static_cast<int>(g.points.size());
        if (a < 2) throw input_error("xi group needs at least 2 points");
        if (!std::is_sorted(g.points.begin(), g.points.end()))
            throw input_error("xi group points must be sorted");
        if (g.chain.k != a) throw input_error("xi chain node count mismatch");
        if (g.chain.degree != 2 * a - 4 && !g.chain.is_zero())
            throw input_error("xi chain must live in top degree 2a-4");
        if (!is_cycle(g.chain)) throw input_error("xi chain must be a cycle");
    }
    XiClass out;
    out.groups = std::move(groups);
    return out;
}

XiElement expand(const XiClass& c) {
    XiElement out;
    std::vector<std::pair<TensorTerm, mpz_class>> partial;
    partial.emplace_back(TensorTerm{}, mpz_class(1));
    for (const auto& g : c.groups) {
        std::vector<std::pair<TensorTerm, mpz_class>> next;
        for (const auto& [term, coef] : partial)
            for (const auto& [graph, gc] : g.chain.coefficients) {
                TensorTerm t = term;
                t.factors.push_back(TensorFactor{g.points, graph});
                next.emplace_back(std::move(t), coef * gc);
            }
        partial = std::move(next);
    }
    for (auto& [t, coef] : partial) xi_add(out, t, coef);
    return out;
}

int swap_sign(int degree1, int degree2) {
    return ((degree1 + 1) * (degree2 + 1)) % 2 == 0 ? 1 : -1;
}

std::pair<XiClass, int> join_chain(const XiClass& c1, const XiClass& c2,
                                   const std::vector<int>& group_order) {
    size_t n = c1.groups.size() + c2.groups.size();
    if (group_order.size() != n) throw input_error("group order size mismatch");
    std::vector<XiGroup> concat = c1.groups;
    concat.insert(concat.end(), c2.groups.begin(), c2.groups.end());
    for (const auto& g : concat)
        if (!is_cycle(g.chain)) throw input_error("join requires cycles");

    std::vector<char> seen(n, 0);
    for (int t : group_order) {
        if (t < 0 || t >= static_cast<int>(n) || seen[t]) throw input_error("bad group order");
        seen[t] = 1;
    }
    // sort `current` into group_order by adjacent swaps, tracking the sign
    std::vector<int> current(n);
    std::iota(current.begin(), current.end(), 0);
    std::vector<int> target_pos(n);
    for (size_t t = 0; t < n; ++t) target_pos[group_order[t]] = static_cast<int>(t);
    auto degree_of = [&](int g) {
        int a = static_cast<int>(concat[g].points.size());
        return 2 * a - 4;
    };
    int sign = 1;
    for (size_t pass = 0; pass < n; ++pass)
        for (size_t t = 0; t + 1 < n; ++t)
            if (target_pos[current[t]] > target_pos[current[t + 1]]) {
                sign *= swap_sign(degree_of(current[t]), degree_of(current[t + 1]));
                std::swap(current[t], current[t + 1]);
            }
    XiClass out;
    for (size_t t = 0; t < n; ++t) out.groups.push_back(concat[current[t]]);
    return {out, sign};
}

namespace {

// connected components of g restricted to all nodes except `drop` (1-based)
std::vector<std::vector<int>> components_without(const LabeledGraph& g, int drop) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(g.k + 1, 0);
    seen[drop] = 1;
    std::vector<std::vector<int>> adj(g.k + 1);
    for (const Edge& e : edge_list(g)) {
        if (e.i == drop || e.j == drop) continue;
        adj[e.i].push_back(e.j);
        adj[e.j].push_back(e.i);
    }
    for (int v = 1; v <= g.k; ++v) {
        if (seen[v]) continue;
        std::vector<int> comp, stack{v};
        seen[v] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int w : adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

LabeledGraph restrict_to(const LabeledGraph& g, const std::vector<int>& nodes) {
    // nodes sorted ascending, relabelled to 1..|nodes|
    std::vector<int> local(g.k + 1, 0);
    for (size_t t = 0; t < nodes.size(); ++t) local[nodes[t]] = static_cast<int>(t) + 1;
    LabeledGraph out(static_cast<int>(nodes.size()), 0);
    for (const Edge& e : edge_list(g)) {
        if (local[e.i] && local[e.j]) out = add_edge(out, Edge(local[e.i], local[e.j]));
    }
    return out;
}

} // namespace

XiElement stu_boundary(const XiClass& c, int group, int tau, const std::vector<int>& block1,
                       const std::vector<int>& block2) {
    if (group < 0 || group >= static_cast<int>(c.groups.size()))
        throw input_error("group index out of range");
    const XiGroup& gm = c.groups[group];
    for (const auto& g : c.groups)
        if (!is_cycle(g.chain)) throw input_error("stu_boundary requires a cycle");

    std::vector<int> expected = block1;
    expected.insert(expected.end(), block2.begin(), block2.end());
    expected.push_back(tau);
    std::sort(expected.begin(), expected.end());
    if (expected != gm.points)
        throw input_error("blocks plus tau must partition the contracted group");

    // local node index of a point inside group m (points are sorted)
    auto local = [&](int point) {
        return static_cast<int>(std::lower_bound(gm.points.begin(), gm.points.end(), point) -
                                gm.points.begin()) +
               1;
    };
    int tau_local = local(tau);
    std::vector<int> b1_local, b2_local;
    for (int p : block1) b1_local.push_back(local(p));
    for (int p : block2) b2_local.push_back(local(p));
    std::sort(b1_local.begin(), b1_local.end());
    std::sort(b2_local.begin(), b2_local.end());
    std::vector<std::vector<int>> expected_comps{b1_local, b2_local};
    std::sort(expected_comps.begin(), expected_comps.end());

    std::vector<int> g1_points = block1, g2_points = block2;
    g1_points.push_back(tau);
    g2_points.push_back(tau);
    std::sort(g1_points.begin(), g1_points.end());
    std::sort(g2_points.begin(), g2_points.end());
    std::vector<int> g1_nodes = b1_local, g2_nodes = b2_local;
    g1_nodes.push_back(tau_local);
    g2_nodes.push_back(tau_local);
    std::sort(g1_nodes.begin(), g1_nodes.end());
    std::sort(g2_nodes.begin(), g2_nodes.end());

    XiElement out;
    for (const auto& [term, coef] : expand(c)) {
        // Koszul prefix over the factors before the touched one
        int prefix = 1;
        for (int t = 0; t < group; ++t)
            if ((term.factors[t].graph.edge_count() - 1) % 2 == 1) prefix = -prefix;
        const LabeledGraph& g = term.factors[group].graph;
        int p = 0;
        for (const Edge& e : edge_list(g)) {
            LabeledGraph h = remove_edge(g, e);
            int s = (p % 2 == 0) ? 1 : -1;
            ++p;
            if (is_l_connected(h, 2)) continue; // stays in the quotient complex
            if (components_without(h, tau_local) != expected_comps) continue;
            TensorTerm split = term;
            TensorFactor f1{g1_points, restrict_to(h, g1_nodes)};
            TensorFactor f2{g2_points, restrict_to(h, g2_nodes)};
            split.factors[group] = f1;
            split.factors.insert(split.factors.begin() + group + 1, f2);
            xi_add(out, split, coef * prefix * s);
        }
    }
    return out;
}

LabeledGraph merge_split_factors(const TensorTerm& term, int group,
                                 const std::vector<int>& contracted_points) {
    const TensorFactor& f1 = term.factors.at(group);
    const TensorFactor& f2 = term.factors.at(group + 1);
    std::vector<int> local(1, 0);
    LabeledGraph out(static_cast<int>(contracted_points.size()), 0);
    auto global_index = [&](const std::vector<int>& pts, int v) {
        int point = pts[v - 1];
        auto it = std::lower_bound(contracted_points.begin(), contracted_points.end(), point);
        if (it == contracted_points.end() || *it != point)
            throw input_error("point not in contracted group");
        return static_cast<int>(it - contracted_points.begin()) + 1;
    };
    for (const Edge& e : edge_list(f1.graph))
        out = add_edge(out, Edge(std::min(global_index(f1.points, e.i), global_index(f1.points, e.j)),
                                 std::max(global_index(f1.points, e.i), global_index(f1.points, e.j))));
    for (const Edge& e : edge_list(f2.graph))
        out = add_edge(out, Edge(std::min(global_index(f2.points, e.i), global_index(f2.points, e.j)),
                                 std::max(global_index(f2.points, e.i), global_index(f2.points, e.j))));
    return out;
}

int64_t invariant_subspace_dim(int order) {
    int k = order + 1;
    if (k < 2) throw input_error("order must be >= 1");
    if (k > 6) throw capacity_error("invariant subspace supported for order+1 <= 6");
    int d = 2 * order - 2;
    FamilyComplex x = build_complex(k, GraphFamily::l_connected(2));
    std::vector<Chain> reps = cycle_representatives(x, d);
    int64_t betti = static_cast<int64_t>(reps.size());
    if (betti == 0) return 0;

    std::vector<int> rot(k + 1);
    for (int v = 1; v <= k; ++v) rot[v] = v % k + 1;

    // stacked system [image | reps] for expressing cycles in the basis
    int64_t n = x.generator_count(d);
    const SparseIntMatrix* up =
        (d + 1 <= x.max_degree() && x.generator_count(d + 1) > 0) ? &x.boundary_matrix(d + 1)
                                                                  : nullptr;
    int64_t image_cols = up ? up->cols : 0;
    SparseIntMatrix::Builder b(n, image_cols + betti);
    if (up)
        for (int64_t c = 0; c < up->cols; ++c)
            for (int64_t kk = up->col_start[c]; kk < up->col_start[c + 1]; ++kk)
                b.add(up->row_idx[kk], c, up->value[kk]);
    const auto& gens = x.generators(d);
    for (int64_t j = 0; j < betti; ++j)
        for (const auto& [g, coef] : reps[j].coefficients) {
            auto idx = x.generator_index(g);
            b.add(*idx, image_cols + j, static_cast<int32_t>(coef.get_si()));
        }
    SparseIntMatrix stacked = b.build();

    // action of the rotation on homology, in the representative basis
    std::vector<std::vector<mpq_class>> action(betti, std::vector<mpq_class>(betti));
    for (int64_t j = 0; j < betti; ++j) {
        Chain image(x.k(), x.family(), d);
        for (const auto& [g, coef] : reps[j].coefficients) {
            auto [h, sign] = relabel(g, rot);
            image.add(h, coef * sign);
        }
        std::vector<mpq_class> rhs(n, mpq_class(0));
        for (const auto& [g, coef] : image.coefficients) rhs[*x.generator_index(g)] = coef;
        auto sol = solve_rational(stacked, rhs);
        if (!sol) throw std::logic_error("rotated cycle not in cycle space");
        for (int64_t t = 0; t < betti; ++t) action[t][j] = (*sol)[image_cols + t];
    }
    (void)gens;

    // projector onto invariants: average of the k rotation powers
    std::vector<std::vector<mpq_class>> power(betti, std::vector<mpq_class>(betti));
    std::vector<std::vector<mpq_class>> sum(betti, std::vector<mpq_class>(betti));
    for (int64_t i = 0; i < betti; ++i) power[i][i] = 1;
    for (int t = 0; t < k; ++t) {
        for (int64_t i = 0; i < betti; ++i)
            for (int64_t j = 0; j < betti; ++j) sum[i][j] += power[i][j];
        std::vector<std::vector<mpq_class>> next(betti, std::vector<mpq_class>(betti));
        for (int64_t i = 0; i < betti; ++i)
            for (int64_t j = 0; j < betti; ++j) {
                mpq_class acc(0);
                for (int64_t s = 0; s < betti; ++s) acc += action[i][s] * power[s][j];
                next[i][j] = acc;
            }
        power = std::move(next);
    }
    // rank of sum via dense elimination
    int64_t rank = 0;
    for (int64_t col = 0, row = 0; col < betti && row < betti; ++col) {
        int64_t piv = -1;
        for (int64_t r = row; r < betti; ++r)
            if (sum[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(sum[piv], sum[row]);
        for (int64_t r = 0; r < betti; ++r) {
            if (r == row || sum[r][col] == 0) continue;
            mpq_class f = sum[r][col] / sum[row][col];
            for (int64_t cc = col; cc < betti; ++cc) sum[r][cc] -= f * sum[row][cc];
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::vector<int> class_dimensions(int order, int ambient_dim) {
    if (ambient_dim < 3) throw input_error("ambient dimension must be >= 3");
    switch (order) {
        case 1: return {};
        case 2: return {2 * ambient_dim - 6};
        case 3: return {3 * (ambient_dim - 3), 3 * (ambient_dim - 3) + 1};
        default: throw input_error("class dimensions supported for orders 1..3 only");
    }
}

std::string format_diagram(const ChordDiagram& d) {
    std::string out = std::to_string(d.order) + ":";
    bool first = true;
    for (const auto& [p, q] : d.chords) {
        if (!first) out += ";";
        first = false;
        out += std::to_string(p) + "-" + std::to_string(q);
    }
    return out;
}

ChordDiagram parse_diagram(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw input_error("diagram encoding missing ':'");
    int order = 0;
    try {
        order = std::stoi(text.substr(0, colon));
    } catch (const std::exception&) {
        throw input_error("bad order in diagram encoding");
    }
    std::vector<std::pair<int, int>> chords;
    std::string rest = text.substr(colon + 1);
    if (!rest.empty()) {
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ';')) {
            auto dash = item.find('-');
            if (dash == std::string::npos) throw input_error("bad chord: " + item);
            chords.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
        }
    }
    return ChordDiagram(order, std::move(chords));
}

} // namespace gch
