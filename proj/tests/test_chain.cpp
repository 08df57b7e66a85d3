#include "doctest.h"
#include "gch/chain.hpp"
#include "gch/homology.hpp"

using namespace gch;

namespace {

LabeledGraph graph_from(int k, std::initializer_list<std::pair<int, int>> edges) {
    LabeledGraph g(k, 0);
    for (auto [i, j] : edges) g = add_edge(g, Edge(i, j));
    return g;
}

// zero matrix product oracle on sparse boundaries
bool composes_to_zero(const SparseIntMatrix& low, const SparseIntMatrix& high) {
    REQUIRE(low.cols == high.rows);
    for (int64_t c = 0; c < high.cols; ++c) {
        std::map<int32_t, int64_t> acc;
        for (int64_t k = high.col_start[c]; k < high.col_start[c + 1]; ++k) {
            int32_t mid = high.row_idx[k];
            int64_t v = high.value[k];
            for (int64_t t = low.col_start[mid]; t < low.col_start[mid + 1]; ++t)
                acc[low.row_idx[t]] += v * low.value[t];
        }
        for (const auto& [r, v] : acc)
            if (v != 0) return false;
    }
    return true;
}

} // namespace

TEST_CASE("boundary of K3 in the full complex") {
    LabeledGraph k3 = graph_from(3, {{1, 2}, {1, 3}, {2, 3}});
    Chain b = boundary_graph(k3, GraphFamily::all());
    Chain expected(3, GraphFamily::all(), 1);
    expected.add(graph_from(3, {{1, 3}, {2, 3}}), 1);
    expected.add(graph_from(3, {{1, 2}, {2, 3}}), -1);
    expected.add(graph_from(3, {{1, 2}, {1, 3}}), 1);
    CHECK(b == expected);
}

TEST_CASE("quotient boundaries drop out-of-family faces") {
    LabeledGraph k3 = graph_from(3, {{1, 2}, {1, 3}, {2, 3}});
    CHECK(boundary_graph(k3, GraphFamily::l_connected(2)).is_zero());
    Chain path_b = boundary_graph(graph_from(3, {{1, 2}, {2, 3}}), GraphFamily::connected());
    CHECK(path_b.is_zero());
    CHECK_THROWS_AS(boundary_graph(graph_from(3, {{1, 2}}), GraphFamily::connected()), input_error);
}

TEST_CASE("boundary of boundary vanishes") {
    LabeledGraph k4(4, (EdgeMask(1) << 6) - 1);
    Chain b = boundary_graph(k4, GraphFamily::all());
    CHECK(boundary_chain(b).is_zero());
    CHECK(boundary_chain(Chain(4, GraphFamily::all(), 3)).is_zero());
}

TEST_CASE("complex generator counts match the paper examples") {
    FamilyComplex conn3 = build_complex(3, GraphFamily::connected());
    CHECK(conn3.generator_count(0) == 0); // single edges have an isolated node
    CHECK(conn3.generator_count(1) == 3);
    CHECK(conn3.generator_count(2) == 1);

    FamilyComplex two4 = build_complex(4, GraphFamily::l_connected(2));
    CHECK(two4.generator_count(3) == 3);
    CHECK(two4.generator_count(4) == 6);
    CHECK(two4.generator_count(5) == 1);

    FamilyComplex all2 = build_complex(2, GraphFamily::all());
    CHECK(all2.generator_count(0) == 1);
}

TEST_CASE("euler characteristics") {
    CHECK(build_complex(4, GraphFamily::l_connected(2)).euler_characteristic() == 2);
    CHECK(build_complex(3, GraphFamily::l_connected(2)).euler_characteristic() == 1);
    for (int k = 2; k <= 6; ++k) {
        // full simplex: sum (-1)^d C(n, d+1) = 1
        int n = slot_count(k);
        int64_t chi = 0;
        for (int d = 0; d < n; ++d) chi += (d % 2 == 0 ? 1 : -1) * binomial(n, d + 1);
        CHECK(chi == 1);
        CHECK(build_complex(k, GraphFamily::all()).euler_characteristic() == 1);
    }
    for (int k = 3; k <= 6; ++k) {
        int64_t fact = 1;
        for (int t = 2; t <= k - 2; ++t) fact *= t;
        CHECK(build_complex(k, GraphFamily::l_connected(2)).euler_characteristic() == fact);
    }
}

TEST_CASE("boundary matrices compose to zero, k <= 5, all families") {
    for (int k = 2; k <= 5; ++k) {
        std::vector<GraphFamily> families{GraphFamily::all(), GraphFamily::connected()};
        for (int l = 2; l <= k - 1; ++l) families.push_back(GraphFamily::l_connected(l));
        for (const auto& fam : families) {
            FamilyComplex x = build_complex(k, fam);
            for (int d = 1; d < x.max_degree(); ++d) {
                if (x.generator_count(d + 1) == 0 || x.generator_count(d) == 0 ||
                    x.generator_count(d - 1) == 0)
                    continue;
                CHECK(composes_to_zero(x.boundary_matrix(d), x.boundary_matrix(d + 1)));
            }
        }
    }
}

TEST_CASE("non-family faces form a subcomplex, k <= 5 exhaustive") {
    for (int k = 2; k <= 5; ++k) {
        std::vector<GraphFamily> families{GraphFamily::connected()};
        for (int l = 2; l <= k - 1; ++l) families.push_back(GraphFamily::l_connected(l));
        for (const auto& fam : families) {
            int n = slot_count(k);
            for (EdgeMask m = 0; m < (EdgeMask(1) << n); ++m) {
                LabeledGraph g(k, m);
                if (fam.contains(g)) continue;
                for (const Edge& e : edge_list(g)) CHECK_FALSE(fam.contains(remove_edge(g, e)));
            }
        }
    }
}

TEST_CASE("boundary matrix columns") {
    FamilyComplex x = build_complex(4, GraphFamily::l_connected(2));
    for (int d = 4; d <= 5; ++d) {
        const SparseIntMatrix& m = x.boundary_matrix(d);
        CHECK(m.rows == x.generator_count(d - 1));
        CHECK(m.cols == x.generator_count(d));
        for (int64_t c = 0; c < m.cols; ++c) {
            const LabeledGraph& g = x.generators(d)[c];
            int64_t expected = 0;
            for (const Edge& e : edge_list(g))
                if (x.family().contains(remove_edge(g, e))) ++expected;
            CHECK(m.col_start[c + 1] - m.col_start[c] == expected);
            CHECK(m.col_start[c + 1] - m.col_start[c] <= d + 1);
            for (int64_t t = m.col_start[c]; t < m.col_start[c + 1]; ++t)
                CHECK((m.value[t] == 1 || m.value[t] == -1));
        }
    }
}

TEST_CASE("figure-1 partition chains are cycles") {
    GraphFamily f2 = GraphFamily::l_connected(2);
    LabeledGraph k4(4, (EdgeMask(1) << 6) - 1);
    std::vector<std::pair<Edge, Edge>> partitions = {
        {Edge(1, 2), Edge(3, 4)}, {Edge(1, 3), Edge(2, 4)}, {Edge(1, 4), Edge(2, 3)}};
    for (const auto& [e1, e2] : partitions) {
        Chain c(4, f2, 4);
        c.add(remove_edge(k4, e1), 1);
        c.add(remove_edge(k4, e2), -1);
        CHECK(is_cycle(c));
    }
}

TEST_CASE("chain text encoding") {
    GraphFamily f = GraphFamily::all();
    Chain c(3, f, 1);
    c.add(parse_graph("3:1-2;2-3"), 2);
    c.add(parse_graph("3:1-2;1-3"), -1);
    std::string text = format_chain(c);
    CHECK(text == "-1*3:1-2;1-3 + 2*3:1-2;2-3");
    CHECK(parse_chain(text, f) == c);
    CHECK(parse_chain("0", f).is_zero());
    CHECK(format_chain(Chain()) == "0");
    CHECK_THROWS_AS(parse_chain("1*3:1-2;2-3 + 1*3:1-2", f), input_error);
}

TEST_CASE("window builds expose the requested degrees") {
    FamilyComplex w = build_complex_window(5, GraphFamily::connected(), 4, 6);
    CHECK(w.generator_count(3) == 125); // labelled trees on 5 nodes
    CHECK_THROWS_AS(w.boundary_matrix(7), input_error);
    CHECK(w.boundary_matrix(4).cols == w.generator_count(4));
}
