#include "doctest.h"
#include "gch/configurations.hpp"

#include <map>
#include <set>

using namespace gch;

namespace {

// brute-force count of grouping patterns: all ways to label positions with
// groups of the prescribed sizes, two labelings equal when they induce the
// same partition of positions
int64_t classes_oracle(const std::vector<int>& parts) {
    int total = 0;
    for (int p : parts) total += p;
    std::set<std::set<std::vector<int>>> seen;
    std::vector<int> assign(total, 0);
    int64_t count = 0;
    int groups = static_cast<int>(parts.size());
    std::vector<int> capacity(parts.begin(), parts.end());
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == total) {
            std::set<std::vector<int>> partition;
            std::map<int, std::vector<int>> blocks;
            for (int t = 0; t < total; ++t) blocks[assign[t]].push_back(t);
            for (auto& [g, blk] : blocks) partition.insert(blk);
            if (seen.insert(partition).second) ++count;
            return;
        }
        for (int g = 0; g < groups; ++g) {
            if (capacity[g] == 0) continue;
            capacity[g]--;
            assign[pos] = g;
            self(self, pos + 1);
            capacity[g]++;
        }
    };
    rec(rec, 0);
    return count;
}

// codimension oracle: count the conditions each group imposes on a map. A
// group glues the values at its distinct points (independent gluings =
// rho - components of the point-gluing graph) and a degenerate pair (x,x)
// demands a vanishing derivative at x, once per distinct point. The
// collection is an A-set iff the total equals |A| - #A.
bool a_set_oracle(const ACollection& c) {
    std::set<int> distinct;
    for (const auto& grp : c.groups)
        for (int p : grp) distinct.insert(p);
    std::map<int, int> id;
    for (int p : distinct) id.emplace(p, static_cast<int>(id.size()));
    std::vector<int> parent(id.size());
    for (size_t v = 0; v < parent.size(); ++v) parent[v] = static_cast<int>(v);
    auto find = [&](auto&& self, int v) -> int {
        return parent[v] == v ? v : parent[v] = self(self, parent[v]);
    };
    std::set<int> derivative_points;
    for (const auto& grp : c.groups) {
        if (grp.size() == 2 && grp[0] == grp[1]) {
            derivative_points.insert(grp[0]);
            continue;
        }
        for (size_t t = 1; t < grp.size(); ++t)
            parent[find(find, id[grp[t - 1]])] = find(find, id[grp[t]]);
    }
    std::set<int> roots;
    for (size_t v = 0; v < parent.size(); ++v) roots.insert(find(find, static_cast<int>(v)));
    int value_conditions = static_cast<int>(distinct.size()) - static_cast<int>(roots.size());
    MultiIndex a = c.multi_index();
    return a.size() - a.group_count() ==
           value_conditions + static_cast<int>(derivative_points.size());
}

// every ordered-level assignment of values to the slots of the multiindex
std::vector<ACollection> all_collections(const std::vector<int>& parts) {
    int total = 0;
    for (int p : parts) total += p;
    std::vector<ACollection> out;
    std::set<std::vector<std::vector<int>>> seen;
    std::vector<int> value(total, 0);
    auto rec = [&](auto&& self, int pos, int max_used) -> void {
        if (pos == total) {
            ACollection c;
            int at = 0;
            for (int p : parts) {
                std::vector<int> grp(value.begin() + at, value.begin() + at + p);
                std::sort(grp.begin(), grp.end());
                c.groups.push_back(grp);
                at += p;
            }
            for (const auto& grp : c.groups) {
                if (grp.size() > 2)
                    for (size_t t = 0; t + 1 < grp.size(); ++t)
                        if (grp[t] == grp[t + 1]) return;
            }
            if (seen.insert(c.groups).second) out.push_back(c);
            return;
        }
        for (int v = 1; v <= max_used + 1; ++v) {
            value[pos] = v;
            self(self, pos + 1, std::max(max_used, v));
        }
    };
    rec(rec, 0, 0);
    return out;
}

} // namespace

TEST_CASE("complexity") {
    CHECK(complexity(MultiIndex({2, 2, 2})) == 3);
    CHECK(complexity(MultiIndex({3, 2})) == 3);
    CHECK(complexity(MultiIndex({2, 2}, 1)) == 3);
    CHECK_THROWS_AS(MultiIndex({1, 2}), input_error);
}

TEST_CASE("stickiness of configurations") {
    auto sticky = [](const std::vector<int>& parts) {
        AConfiguration j;
        j.a = MultiIndex(parts);
        int g = 0;
        for (int p : parts) {
            for (int t = 0; t < p; ++t) j.group_of.push_back(g);
            ++g;
        }
        return stickiness(j);
    };
    CHECK(sticky({2, 2, 2}) == 0);
    CHECK(sticky({3, 2}) == 1);
    CHECK(sticky({4}) == 2);
}

TEST_CASE("stickiness stays within [0, i-1]") {
    for (const auto& parts :
         std::vector<std::vector<int>>{{2, 2}, {3}, {2, 2, 2}, {3, 2}, {4}, {4, 2}, {3, 3}}) {
        MultiIndex a(parts);
        int i = complexity(a);
        for (const auto& cfg : enumerate_configuration_classes(a)) {
            CHECK(stickiness(cfg) >= 0);
            CHECK(stickiness(cfg) <= i - 1);
        }
    }
}

TEST_CASE("A-set examples from the paper") {
    // ((x,y),(x,z)) with x<y<z: related to a (3)-set, hence a set
    ACollection c1{{{1, 2}, {1, 3}}};
    CHECK(is_A_set(c1));
    // ((x,y),(x,z),(y,z)) is the excluded triangle pattern
    ACollection c2{{{1, 2}, {1, 3}, {2, 3}}};
    CHECK_FALSE(is_A_set(c2));
    // disjoint pairs have no white edges at all
    ACollection c3{{{1, 2}, {3, 4}}};
    CHECK(is_A_set(c3));
    CHECK(two_color_graph(c3).white.empty());
}

TEST_CASE("degenerate pairs follow the parenthetical rule") {
    // group (x,x) plus a group through x: one black edge, whites only on the
    // first node of the degenerate pair
    ACollection c{{{1, 1}, {1, 2}}};
    TwoColorGraph g = two_color_graph(c);
    CHECK(g.nodes == 4);
    CHECK(g.black.size() == 2);
    REQUIRE(g.white.size() == 1);
    CHECK(g.white[0].first == 0);
    CHECK(is_A_set(c)); // the white edge is a bridge
}

TEST_CASE("is_A_set agrees with the codimension oracle up to 7 points") {
    std::vector<std::vector<int>> shapes{{2, 2}, {3, 2}, {2, 2, 2}, {4, 3}, {3, 2, 2},
                                         {5, 2}, {4, 2}, {3, 3},    {3, 4}, {7}};
    for (auto parts : shapes) {
        int total = 0;
        for (int p : parts) total += p;
        if (total > 7) continue;
        for (const auto& c : all_collections(parts)) CHECK(is_A_set(c) == a_set_oracle(c));
    }
}

TEST_CASE("configuration class counts") {
    CHECK(enumerate_configuration_classes(MultiIndex({2, 2})).size() == 3);
    CHECK(enumerate_configuration_classes(MultiIndex({3})).size() == 1);
    CHECK(enumerate_configuration_classes(MultiIndex({2, 2, 2})).size() == 15);
    for (const auto& parts :
         std::vector<std::vector<int>>{{2, 2}, {3, 2}, {2, 2, 2}, {3, 3}, {4, 2, 2}})
        CHECK(static_cast<int64_t>(enumerate_configuration_classes(MultiIndex(parts)).size()) ==
              classes_oracle(parts));
    // (2 x i) classes are perfect matchings: (2i-1)!!
    int64_t expect = 1;
    for (int i = 1; i <= 5; ++i) {
        expect *= 2 * i - 1;
        std::vector<int> parts(i, 2);
        CHECK(static_cast<int64_t>(enumerate_configuration_classes(MultiIndex(parts)).size()) ==
              expect);
    }
}

TEST_CASE("cyclic reduction merges rotated patterns") {
    auto linear = enumerate_configuration_classes(MultiIndex({2, 2}));
    auto cyclic = enumerate_configuration_classes(MultiIndex({2, 2}), true);
    CHECK(linear.size() == 3);
    CHECK(cyclic.size() == 2); // aabb ~ abba, abab stays
}

TEST_CASE("simple configuration types") {
    CHECK(is_simple_configuration(MultiIndex({2, 2, 2})) == SimpleType::I);
    CHECK(is_simple_configuration(MultiIndex({3, 2})) == SimpleType::III);
    CHECK(is_simple_configuration(MultiIndex({2, 2}, 1)) == SimpleType::II);
    CHECK_FALSE(is_simple_configuration(MultiIndex({4})).has_value());
    CHECK_FALSE(is_simple_configuration(MultiIndex({3, 3})).has_value());
}

TEST_CASE("configuration text encoding") {
    AConfiguration cfg = parse_configuration("aabab");
    CHECK(cfg.a.parts == std::vector<int>{3, 2});
    CHECK(format_configuration(cfg) == "aabab");
    CHECK_THROWS_AS(parse_configuration("ba"), input_error);
    CHECK_THROWS_AS(parse_configuration("aA"), input_error);
}
