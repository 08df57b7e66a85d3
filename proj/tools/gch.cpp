// gch: exact homology of graph complexes and the configuration/diagram
// combinatorics around finite-order knot invariants.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "gch/homology.hpp"
#include "gch/invariants.hpp"
#include "gch/threads.hpp"

using nlohmann::ordered_json;
using namespace gch;

namespace {

GraphFamily family_from(const std::string& name, int l) {
    if (name == "all") return GraphFamily::all();
    if (name == "connected") return GraphFamily::connected();
    if (name == "2-connected") return GraphFamily::l_connected(2);
    if (name == "l-connected") {
        if (l < 2) throw input_error("--family l-connected requires --l >= 2");
        return GraphFamily::l_connected(l);
    }
    throw input_error("unknown family: " + name);
}

RankMode mode_from(const std::string& name, int prime) {
    if (name == "exact") return RankMode::exact();
    if (name == "modp") return RankMode::mod_prime(prime > 0 ? static_cast<uint32_t>(prime)
                                                             : limits::cert_prime_1);
    if (name == "certified") return RankMode::certified();
    throw input_error("unknown mode: " + name);
}

std::vector<int> parse_parts(const std::string& text) {
    std::vector<int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        try {
            parts.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw input_error("bad part: " + item);
        }
    if (parts.empty()) throw input_error("empty part list");
    return parts;
}

ACollection parse_collection(const std::string& text) {
    ACollection c;
    std::stringstream ss(text);
    std::string group;
    while (std::getline(ss, group, '|')) {
        std::vector<int> pts;
        std::stringstream gs(group);
        std::string item;
        while (std::getline(gs, item, ','))
            try {
                pts.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw input_error("bad point: " + item);
            }
        std::sort(pts.begin(), pts.end());
        c.groups.push_back(pts);
    }
    if (c.groups.empty()) throw input_error("empty collection");
    return c;
}

ordered_json summary_json(int k, const GraphFamily& fam, const HomologySummary& h) {
    return ordered_json::parse(homology_json(k, fam, h));
}

void emit(const ordered_json& j) { std::cout << j.dump() << "\n"; }

int64_t factorial(int n) {
    int64_t f = 1;
    for (int t = 2; t <= n; ++t) f *= t;
    return f;
}

// ---- verify checks ------------------------------------------------------

bool check_theorem1(int max_nodes, ordered_json& detail) {
    bool ok = true;
    for (int k = 3; k <= std::min(max_nodes, 6); ++k) {
        HomologySummary h = homology(build_complex(k, GraphFamily::connected()), RankMode::exact());
        bool good = h.betti == std::map<int, int64_t>{{k - 2, factorial(k - 1)}} && h.torsion.empty();
        detail["k" + std::to_string(k)] = good;
        ok = ok && good;
    }
    if (max_nodes >= 7) {
        FamilyComplex w = build_complex_window(7, GraphFamily::connected(), 5, 7);
        DegreeHomology d = homology_degree(w, 5, RankMode::certified());
        bool good = d.betti == 720;
        detail["k7"] = good;
        ok = ok && good;
    }
    return ok;
}

bool check_theorem2(int max_nodes, ordered_json& detail) {
    bool ok = true;
    for (int k = 3; k <= std::min(max_nodes, 6); ++k) {
        HomologySummary h =
            homology(build_complex(k, GraphFamily::l_connected(2)), RankMode::exact());
        bool good =
            h.betti == std::map<int, int64_t>{{2 * k - 4, factorial(k - 2)}} && h.torsion.empty();
        detail["k" + std::to_string(k)] = good;
        ok = ok && good;
    }
    if (max_nodes >= 7) {
        FamilyComplex w = build_complex_window(7, GraphFamily::l_connected(2), 10, 12);
        DegreeHomology d = homology_degree(w, 10, RankMode::certified());
        bool good = d.betti == 120;
        detail["k7"] = good;
        ok = ok && good;
    }
    return ok;
}

bool check_example1(ordered_json& detail) {
    FamilyComplex conn = build_complex(3, GraphFamily::connected());
    bool counts = conn.generator_count(1) == 3 && conn.generator_count(2) == 1 &&
                  conn.generator_count(0) == 0;
    HomologySummary h1 = homology(conn, RankMode::exact());
    HomologySummary h2 = homology(build_complex(3, GraphFamily::l_connected(2)), RankMode::exact());
    detail["generator_counts"] = counts;
    detail["connected_betti"] = h1.betti == std::map<int, int64_t>{{1, 2}};
    detail["two_connected_betti"] = h2.betti == std::map<int, int64_t>{{2, 1}};
    return counts && h1.betti == std::map<int, int64_t>{{1, 2}} &&
           h2.betti == std::map<int, int64_t>{{2, 1}};
}

std::vector<Chain> figure1_chains(const GraphFamily& f2) {
    LabeledGraph k4(4, (EdgeMask(1) << 6) - 1);
    std::vector<std::pair<Edge, Edge>> partitions = {
        {Edge(1, 2), Edge(3, 4)}, {Edge(1, 3), Edge(2, 4)}, {Edge(1, 4), Edge(2, 3)}};
    std::vector<Chain> chains;
    for (const auto& [e1, e2] : partitions) {
        Chain c(4, f2, 4);
        c.add(remove_edge(k4, e1), 1);
        c.add(remove_edge(k4, e2), -1);
        chains.push_back(std::move(c));
    }
    return chains;
}

bool check_fig1_relation(ordered_json& detail) {
    GraphFamily f2 = GraphFamily::l_connected(2);
    FamilyComplex x = build_complex(4, f2);
    auto chains = figure1_chains(f2);
    bool cycles = true;
    for (const Chain& c : chains) cycles = cycles && is_cycle(c);
    detail["chains_are_cycles"] = cycles;
    bool found = false;
    for (int mask = 0; mask < 8 && !found; ++mask) {
        Chain sum(4, f2, 4);
        for (int t = 0; t < 3; ++t) sum += chains[t] * ((mask >> t) & 1 ? -1 : 1);
        Chain witness;
        if (is_boundary(x, sum, true, &witness) && witness.coefficients.size() == 1)
            found = true;
    }
    detail["signed_sum_bounds_k4"] = found;
    return cycles && found;
}

bool check_example2(ordered_json& detail) {
    GraphFamily f2 = GraphFamily::l_connected(2);
    FamilyComplex x = build_complex(4, f2);
    bool counts =
        x.generator_count(3) == 3 && x.generator_count(4) == 6 && x.generator_count(5) == 1;
    detail["generator_counts"] = counts;
    bool rel = check_fig1_relation(detail);
    auto chains = figure1_chains(f2);
    bool pairs = verify_basis(x, {chains[0], chains[1]}, 4) &&
                 verify_basis(x, {chains[0], chains[2]}, 4) &&
                 verify_basis(x, {chains[1], chains[2]}, 4);
    bool all3 = !verify_basis(x, chains, 4);
    detail["pairs_form_bases"] = pairs;
    detail["all_three_fail"] = all3;
    return counts && rel && pairs && all3;
}

bool check_corollary1(int max_size, ordered_json& detail) {
    bool ok = true;
    std::vector<std::vector<int>> stack{{}};
    std::vector<std::vector<int>> multiindices;
    // descending part lists with sum <= max_size
    auto rec = [&](auto&& self, std::vector<int> cur, int sum, int max_part) -> void {
        if (!cur.empty()) multiindices.push_back(cur);
        for (int p = std::min(max_part, max_size - sum); p >= 2; --p) {
            auto next = cur;
            next.push_back(p);
            self(self, next, sum + p, p);
        }
    };
    rec(rec, {}, 0, max_size);
    for (const auto& parts : multiindices) {
        MultiIndex a(parts);
        std::string name;
        for (size_t t = 0; t < parts.size(); ++t)
            name += (t ? "," : "") + std::to_string(parts[t]);
        if (std::any_of(parts.begin(), parts.end(),
                        [](int p) { return p > limits::lambda_max_part; })) {
            detail[name] = "skipped:capacity";
            continue;
        }
        if (parts.size() > 1 && std::any_of(parts.begin(), parts.end(), [](int p) { return p > 6; })) {
            detail[name] = "skipped:capacity";
            continue;
        }
        HomologySummary h = lambda_homology(a);
        int degree = lambda_expected_degree(a);
        mpz_class rank = xi_rank(a);
        bool good = h.betti.size() == 1 && h.betti.count(degree) == 1 &&
                    h.betti.at(degree) == rank && h.torsion.empty();
        detail[name] = good;
        ok = ok && good;
    }
    return ok;
}

bool check_prop8prime(ordered_json& detail) {
    bool ok = true;
    for (int i = 2; i <= 4; ++i) {
        int64_t dim = invariant_subspace_dim(i);
        int64_t bound = factorial(i - 1);
        detail["order" + std::to_string(i)] = dim;
        detail["bound" + std::to_string(i)] = bound;
        ok = ok && dim <= bound;
        if (i == 2) ok = ok && dim == 1;
    }
    return ok;
}

// ---- command wiring -----------------------------------------------------

int run(int argc, char** argv) {
    CLI::App app{"graph complex homology and knot-invariant combinatorics"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker count (overrides GCH_THREADS)");

    std::string family_name = "all", mode_name = "exact", out_format = "json";
    int nodes = 0, l = 0, prime = 0, degree = -1;

    auto* homology_cmd = app.add_subcommand("homology", "integer homology of a graph complex");
    homology_cmd->add_option("--family", family_name, "all|connected|2-connected|l-connected")
        ->required();
    homology_cmd->add_option("--nodes", nodes, "node count k")->required();
    homology_cmd->add_option("--l", l, "l for l-connected");
    homology_cmd->add_option("--mode", mode_name, "exact|modp|certified");
    homology_cmd->add_option("--prime", prime, "prime for modp mode");
    homology_cmd->add_option("--degree", degree, "restrict to one degree");
    homology_cmd->add_option("--out", out_format, "json|csv");

    auto* basis_cmd = app.add_subcommand("basis", "representative cycles of one degree");
    basis_cmd->add_option("--family", family_name)->required();
    basis_cmd->add_option("--nodes", nodes)->required();
    basis_cmd->add_option("--l", l);
    basis_cmd->add_option("--degree", degree, "homology degree")->required();

    std::string check_name;
    int max_nodes = 6, max_size = 8;
    auto* verify_cmd = app.add_subcommand("verify", "verify a paper statement");
    verify_cmd
        ->add_option("--check", check_name,
                     "theorem1|theorem2|example1|example2|fig1-relation|corollary1|prop8prime-bound")
        ->required();
    verify_cmd->add_option("--max-nodes", max_nodes, "largest k for theorem checks");
    verify_cmd->add_option("--max-size", max_size, "largest |A| for corollary1");

    int order = 0, order1 = 0, order2 = 0;
    auto* ws_cmd = app.add_subcommand("ws", "weight systems");
    ws_cmd->require_subcommand(1);
    auto* ws_dim = ws_cmd->add_subcommand("dim", "dimension of the order-i weight space");
    ws_dim->add_option("--order", order)->required();
    auto* ws_rel = ws_cmd->add_subcommand("relations", "1T/4T relation matrix as triplets");
    ws_rel->add_option("--order", order)->required();
    auto* ws_prod = ws_cmd->add_subcommand("product", "product membership check");
    ws_prod->add_option("--order1", order1)->required();
    ws_prod->add_option("--order2", order2)->required();

    std::string parts_text, collection_text, pattern_text, blocks_text;
    bool cyclic = false;
    auto* config_cmd = app.add_subcommand("config", "configuration combinatorics");
    config_cmd->require_subcommand(1);
    auto* config_classes = config_cmd->add_subcommand("classes", "configuration classes of A");
    config_classes->add_option("--parts", parts_text, "comma separated group sizes")->required();
    config_classes->add_flag("--cyclic", cyclic, "merge cyclic rotations");
    auto* config_aset = config_cmd->add_subcommand("is-a-set", "A-set test for a collection");
    config_aset->add_option("--collection", collection_text, "groups 'x,y|x,z' by point value")
        ->required();
    auto* config_stick = config_cmd->add_subcommand("stickiness", "stickiness of a pattern");
    config_stick->add_option("--pattern", pattern_text, "group letters, e.g. aabab")->required();

    int tau = 0, rep = 0;
    auto* xi_cmd = app.add_subcommand("xi", "index groups");
    xi_cmd->require_subcommand(1);
    auto* xi_rank_cmd = xi_cmd->add_subcommand("rank", "rank of the Xi group");
    xi_rank_cmd->add_option("--parts", parts_text)->required();
    auto* xi_stu = xi_cmd->add_subcommand("stu", "STU extraction on a representative cycle");
    xi_stu->add_option("--part", nodes, "contracted group size")->required();
    xi_stu->add_option("--tau", tau, "contracted point (1-based)")->required();
    xi_stu->add_option("--blocks", blocks_text, "designated blocks 'p,q|r'")->required();
    xi_stu->add_option("--rep", rep, "representative cycle index");

    int ambient = 3;
    auto* dims_cmd = app.add_subcommand("dims", "dimensions of order-i classes");
    dims_cmd->add_option("--order", order)->required();
    dims_cmd->add_option("--ambient", ambient, "ambient dimension n >= 3");

    app.parse(argc, argv);
    if (threads > 0) set_thread_count(threads);

    if (homology_cmd->parsed()) {
        GraphFamily fam = family_from(family_name, l);
        RankMode mode = mode_from(mode_name, prime);
        if (degree >= 0) {
            FamilyComplex w = build_complex_window(nodes, fam, degree, degree + 2);
            DegreeHomology d = homology_degree(w, degree, mode);
            ordered_json j;
            j["k"] = nodes;
            j["family"] = fam.name();
            j["mode"] = mode.name();
            j["degree"] = degree;
            j["betti"] = d.betti;
            std::vector<int64_t> tor;
            for (const auto& f : d.torsion) tor.push_back(f.get_si());
            j["torsion"] = tor;
            j["certified"] = mode.kind != RankMode::Kind::ModPrime;
            emit(j);
            return 0;
        }
        HomologySummary h = homology(build_complex(nodes, fam), mode);
        if (out_format == "csv") {
            std::cout << "degree,betti\n";
            for (const auto& [d, b] : h.betti) std::cout << d << "," << b << "\n";
        } else {
            emit(summary_json(nodes, fam, h));
        }
        return 0;
    }
    if (basis_cmd->parsed()) {
        GraphFamily fam = family_from(family_name, l);
        FamilyComplex x = build_complex(nodes, fam);
        auto reps = cycle_representatives(x, degree);
        ordered_json j;
        j["k"] = nodes;
        j["family"] = fam.name();
        j["degree"] = degree;
        j["betti"] = static_cast<int64_t>(reps.size());
        std::vector<std::string> cycles;
        for (const Chain& c : reps) cycles.push_back(format_chain(c));
        j["cycles"] = cycles;
        emit(j);
        return 0;
    }
    if (verify_cmd->parsed()) {
        ordered_json detail;
        bool pass = false;
        if (check_name == "theorem1") pass = check_theorem1(max_nodes, detail);
        else if (check_name == "theorem2") pass = check_theorem2(max_nodes, detail);
        else if (check_name == "example1") pass = check_example1(detail);
        else if (check_name == "example2") pass = check_example2(detail);
        else if (check_name == "fig1-relation") pass = check_fig1_relation(detail);
        else if (check_name == "corollary1") pass = check_corollary1(max_size, detail);
        else if (check_name == "prop8prime-bound") pass = check_prop8prime(detail);
        else throw input_error("unknown check: " + check_name);
        ordered_json j;
        j["check"] = check_name;
        j["pass"] = pass;
        j["detail"] = detail;
        emit(j);
        return pass ? 0 : 3;
    }
    if (ws_dim->parsed()) {
        int64_t dim = order <= 5 ? weight_space(order).dimension : weight_space_dim_modular(order);
        ordered_json j;
        j["order"] = order;
        j["dim"] = dim;
        emit(j);
        return 0;
    }
    if (ws_rel->parsed()) {
        RelationSystem rel = four_term_rows(order);
        std::cout << format_triplets(rel.rows);
        return 0;
    }
    if (ws_prod->parsed()) {
        WeightSpace w1 = weight_space(order1);
        WeightSpace w2 = weight_space(order2);
        if (w1.basis.empty() || w2.basis.empty())
            throw input_error("weight space has no basis at the requested order");
        bool in_span = product_in_span(w1.basis[0], w2.basis[0]);
        ordered_json j;
        j["order1"] = order1;
        j["order2"] = order2;
        j["order"] = order1 + order2;
        j["in_span"] = in_span;
        emit(j);
        return 0;
    }
    if (config_classes->parsed()) {
        MultiIndex a(parse_parts(parts_text));
        auto classes = enumerate_configuration_classes(a, cyclic);
        ordered_json j;
        j["parts"] = a.parts;
        j["count"] = static_cast<int64_t>(classes.size());
        std::vector<std::string> patterns;
        for (const auto& c : classes) patterns.push_back(format_configuration(c));
        j["classes"] = patterns;
        emit(j);
        return 0;
    }
    if (config_aset->parsed()) {
        ACollection c = parse_collection(collection_text);
        ordered_json j;
        j["collection"] = collection_text;
        j["is_a_set"] = is_A_set(c);
        emit(j);
        return 0;
    }
    if (config_stick->parsed()) {
        AConfiguration cfg = parse_configuration(pattern_text);
        ordered_json j;
        j["pattern"] = pattern_text;
        j["complexity"] = complexity(cfg.a);
        j["stickiness"] = stickiness(cfg);
        emit(j);
        return 0;
    }
    if (xi_rank_cmd->parsed()) {
        MultiIndex a(parse_parts(parts_text));
        ordered_json j;
        j["parts"] = a.parts;
        j["rank"] = xi_rank(a).get_str();
        emit(j);
        return 0;
    }
    if (xi_stu->parsed()) {
        FamilyComplex x = build_complex(nodes, GraphFamily::l_connected(2));
        auto reps = cycle_representatives(x, 2 * nodes - 4);
        if (rep < 0 || rep >= static_cast<int>(reps.size()))
            throw input_error("representative index out of range");
        std::vector<int> pts(nodes);
        for (int v = 0; v < nodes; ++v) pts[v] = v + 1;
        Chain cycle = reps[rep];
        XiClass c{{XiGroup{pts, cycle}}};
        auto blocks = parse_collection(blocks_text);
        if (blocks.groups.size() != 2) throw input_error("--blocks needs exactly two blocks");
        XiElement e = stu_boundary(c, 0, tau, blocks.groups[0], blocks.groups[1]);
        ordered_json j;
        j["part"] = nodes;
        j["tau"] = tau;
        j["cycle"] = format_chain(cycle);
        std::vector<ordered_json> terms;
        for (const auto& [term, coef] : e) {
            ordered_json t;
            t["coef"] = coef.get_str();
            std::vector<ordered_json> factors;
            for (const auto& f : term.factors) {
                ordered_json fj;
                fj["points"] = f.points;
                fj["graph"] = format_graph(f.graph);
                factors.push_back(fj);
            }
            t["factors"] = factors;
            terms.push_back(t);
        }
        j["terms"] = terms;
        emit(j);
        return 0;
    }
    if (dims_cmd->parsed()) {
        ordered_json j;
        j["order"] = order;
        j["n"] = ambient;
        j["dims"] = class_dimensions(order, ambient);
        emit(j);
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0; // --help
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const certification_error& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return 3;
    } catch (const capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
