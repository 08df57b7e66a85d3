#include "doctest.h"
#include "gch/homology.hpp"

using namespace gch;

TEST_CASE("rank mode names") {
    CHECK(RankMode::exact().name() == "exact");
    CHECK(RankMode::mod_prime(2).name() == "modp:2");
    CHECK(RankMode::certified().name() == "certified:2147483647,2147483629");
    CHECK_THROWS_AS(RankMode::mod_prime(4), input_error);
    CHECK_THROWS_AS(RankMode::certified(7, 7), input_error);
}

TEST_CASE("family names") {
    CHECK(GraphFamily::all().name() == "all");
    CHECK(GraphFamily::connected().name() == "connected");
    CHECK(GraphFamily::l_connected(2).name() == "2-connected");
    CHECK(GraphFamily::l_connected(3).name() == "l-connected:3");
    CHECK_THROWS_AS(GraphFamily::l_connected(1), input_error);
}

TEST_CASE("json layout stays fixed across modes") {
    FamilyComplex x = build_complex(3, GraphFamily::connected());
    HomologySummary h = homology(x, RankMode::mod_prime(3));
    h.elapsed_ms = 0;
    CHECK(homology_json(3, x.family(), h) ==
          "{\"k\":3,\"family\":\"connected\",\"mode\":\"modp:3\",\"betti\":{\"1\":2},"
          "\"torsion\":{},\"certified\":false,\"elapsed_ms\":0}");
}
