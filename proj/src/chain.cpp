#include "gch/chain.hpp"

#include <algorithm>
#include <sstream>

#include "gch/threads.hpp"

namespace gch {

void Chain::add(const LabeledGraph& g, const mpz_class& c) {
    if (c == 0) return;
    auto it = coefficients.find(g);
    if (it == coefficients.end()) {
        coefficients.emplace(g, c);
    } else {
        it->second += c;
        if (it->second == 0) coefficients.erase(it);
    }
}

Chain& Chain::operator+=(const Chain& other) {
    for (const auto& [g, c] : other.coefficients) add(g, c);
    return *this;
}

Chain Chain::operator*(const mpz_class& s) const {
    Chain out(k, family, degree);
    if (s == 0) return out;
    for (const auto& [g, c] : coefficients) out.coefficients.emplace(g, c * s);
    return out;
}

Chain boundary_graph(const LabeledGraph& g, const GraphFamily& family) {
    if (!family.contains(g))
        throw input_error("graph not in family " + family.name() + ": " + format_graph(g));
    Chain out(g.k, family, g.edge_count() - 2);
    int p = 0;
    for (const Edge& e : edge_list(g)) {
        LabeledGraph h = remove_edge(g, e);
        if (family.contains(h)) out.add(h, (p % 2 == 0) ? 1 : -1);
        ++p;
    }
    return out;
}

Chain boundary_chain(const Chain& c) {
    Chain out(c.k, c.family, c.degree - 1);
    for (const auto& [g, coef] : c.coefficients) {
        int p = 0;
        for (const Edge& e : edge_list(g)) {
            LabeledGraph h = remove_edge(g, e);
            if (c.family.contains(h)) out.add(h, (p % 2 == 0) ? coef : -coef);
            ++p;
        }
    }
    return out;
}

FamilyComplex::FamilyComplex(int k, GraphFamily family, int min_edges, int max_edges)
    : k_(k), family_(family), min_edges_(min_edges), max_edges_(max_edges) {
    check_node_count(k);
    if (family.kind == GraphFamily::Kind::LConnected && (family.l < 2 || family.l > k))
        throw input_error("l-connected family requires 2 <= l <= k");
    int n = slot_count(k);
    min_edges_ = std::max(min_edges_, 1);
    max_edges_ = std::min(max_edges_, n);

    int64_t scan = 0;
    for (int e = min_edges_; e <= max_edges_; ++e) scan += binomial(n, e);
    if (scan > limits::max_scan_masks)
        throw capacity_error("complex build for k=" + std::to_string(k) + " scans " +
                             std::to_string(scan) + " masks (limit " +
                             std::to_string(limits::max_scan_masks) + ")");

    gens_.resize(n);
    parallel_for(min_edges_, max_edges_ + 1, [&](int e) {
        gens_[e - 1] = enumerate_graphs(k, family_, e);
        if (static_cast<int64_t>(gens_[e - 1].size()) > limits::max_generators_per_degree)
            throw capacity_error("degree " + std::to_string(e - 1) + " has " +
                                 std::to_string(gens_[e - 1].size()) + " generators");
    });
    boundaries_.assign(n, std::nullopt);
}

const std::vector<LabeledGraph>& FamilyComplex::generators(int d) const {
    static const std::vector<LabeledGraph> empty;
    if (d < 0 || d >= static_cast<int>(gens_.size())) return empty;
    return gens_[d];
}

int64_t FamilyComplex::generator_count(int d) const {
    return static_cast<int64_t>(generators(d).size());
}

std::optional<int64_t> FamilyComplex::generator_index(const LabeledGraph& g) const {
    int d = g.edge_count() - 1;
    const auto& v = generators(d);
    auto it = std::lower_bound(v.begin(), v.end(), g);
    if (it == v.end() || !(*it == g)) return std::nullopt;
    return it - v.begin();
}

const SparseIntMatrix& FamilyComplex::boundary_matrix(int d) const {
    if (d < 1 || d >= static_cast<int>(gens_.size()) || !degree_built(d) || !degree_built(d - 1))
        throw input_error("boundary matrix at degree " + std::to_string(d) + " not built");
    if (boundaries_[d]) return *boundaries_[d];

    const auto& cols = gens_[d];
    const auto& rows = gens_[d - 1];
    SparseIntMatrix::Builder b(static_cast<int64_t>(rows.size()), static_cast<int64_t>(cols.size()));
    std::vector<std::vector<std::pair<int32_t, int32_t>>>& columns = b.columns;
    parallel_for(0, static_cast<int64_t>(cols.size()), [&](int64_t c) {
        const LabeledGraph& g = cols[c];
        int p = 0;
        for (const Edge& e : edge_list(g)) {
            LabeledGraph h = remove_edge(g, e);
            auto it = std::lower_bound(rows.begin(), rows.end(), h);
            if (it != rows.end() && *it == h)
                columns[c].emplace_back(static_cast<int32_t>(it - rows.begin()),
                                        (p % 2 == 0) ? 1 : -1);
            ++p;
        }
    });
    boundaries_[d] = b.build();
    return *boundaries_[d];
}

int64_t FamilyComplex::euler_characteristic() const {
    int64_t chi = 0;
    for (int d = 0; d < static_cast<int>(gens_.size()); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * generator_count(d);
    return chi;
}

FamilyComplex build_complex(int k, const GraphFamily& family) {
    return FamilyComplex(k, family, 1, slot_count(k));
}

FamilyComplex build_complex_window(int k, const GraphFamily& family, int min_edges, int max_edges) {
    return FamilyComplex(k, family, min_edges, max_edges);
}

std::string format_chain(const Chain& c) {
    if (c.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [g, coef] : c.coefficients) {
        mpz_class a = abs(coef);
        if (first) {
            if (coef < 0) out += "-";
            first = false;
        } else {
            out += (coef < 0) ? " - " : " + ";
        }
        out += a.get_str() + "*" + format_graph(g);
    }
    return out;
}

Chain parse_chain(const std::string& text, const GraphFamily& family) {
    // terms separated by " + " / " - "; edge dashes carry no spaces around them
    std::vector<std::string> tokens;
    std::stringstream ss(text);
    std::string tok;
    while (ss >> tok) tokens.push_back(tok);
    if (tokens.empty() || (tokens.size() == 1 && tokens[0] == "0")) return Chain();

    Chain out;
    bool have_any = false;
    size_t pos = 0;
    int sign = 1;
    while (pos < tokens.size()) {
        const std::string& term = tokens[pos];
        size_t star = term.find('*');
        if (star == std::string::npos) throw input_error("chain term missing '*': " + term);
        mpz_class coef;
        try {
            coef = mpz_class(term.substr(0, star));
        } catch (const std::exception&) {
            throw input_error("bad chain coefficient in: " + term);
        }
        LabeledGraph g = parse_graph(term.substr(star + 1));
        if (!have_any) {
            out = Chain(g.k, family, g.edge_count() - 1);
            have_any = true;
        }
        if (g.k != out.k || g.edge_count() - 1 != out.degree)
            throw input_error("chain mixes degrees or node counts: " + text);
        if (!family.contains(g))
            throw input_error("chain term not in family " + family.name() + ": " + format_graph(g));
        out.add(g, sign * coef);
        ++pos;
        if (pos == tokens.size()) break;
        if (tokens[pos] == "+") sign = 1;
        else if (tokens[pos] == "-") sign = -1;
        else throw input_error("expected '+' or '-' between chain terms: " + tokens[pos]);
        ++pos;
        if (pos == tokens.size()) throw input_error("dangling sign in chain: " + text);
    }
    return out;
}

} // namespace gch
