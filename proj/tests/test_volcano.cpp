#include "doctest.h"
#include "isotower/io.hpp"
#include "isotower/volcano.hpp"

#include <map>
#include <set>

using namespace isotower;

TEST_SUITE_BEGIN("volcano");

namespace {
std::multiset<std::pair<int, int>> edge_multiset(const Digraph& g) {
    std::multiset<std::pair<int, int>> out;
    for (auto& e : g.edges) out.insert({e.src, e.dst});
    return out;
}
} // namespace

TEST_CASE("volcano generation and counts") {
    // depth-0 truncation of a 3-cycle crater is just the directed cycle
    auto v0 = gen_volcano(2, {true, 3}, 0);
    CHECK(v0.g.nv == 3);
    CHECK(v0.g.ne() == 3);
    CHECK(recognize_crater(v0.g).yes);
    // single-loop crater, l = 2, depth 2: layer sizes 1, 2, 4
    auto v1 = gen_volcano(2, {true, 1}, 2);
    std::map<int, int> sizes;
    for (int d : v1.depth) sizes[d]++;
    CHECK(sizes[0] == 1);
    CHECK(sizes[1] == 2);
    CHECK(sizes[2] == 4);
    // isolated crater with 4 vertices and l = 3: four disjoint trees
    auto v2 = gen_volcano(3, {false, 4}, 2);
    CHECK(components(v2.g, ConnMode::Weak).count == 4);
}

TEST_CASE("volcano recognition round trips") {
    for (int64_t l : {2, 3}) {
        for (int D = 0; D <= 3; ++D) {
            for (int64_t len = 1; len <= 6; ++len) {
                auto v = gen_volcano(l, {true, len}, D);
                auto r = recognize_volcano(v.g, l, D);
                CHECK(r.yes);
                REQUIRE(r.depth.has_value());
                CHECK(*r.depth == v.depth);
            }
            for (int64_t cnt = 1; cnt <= 4; ++cnt) {
                auto v = gen_volcano(l, {false, cnt}, D);
                CHECK(recognize_volcano(v.g, l, D).yes);
            }
        }
    }
    // deliberately broken: delete one edge
    auto v = gen_volcano(2, {true, 3}, 2);
    Digraph broken = v.g;
    broken.edges.pop_back();
    broken.elabel.pop_back();
    CHECK_FALSE(recognize_volcano(broken, 2, 2).yes);
    // wrong frontier depth
    CHECK_FALSE(recognize_volcano(v.g, 2, 1).yes);
}

TEST_CASE("tectonic crater matches the worked 5-vertex example") {
    ColoredGraph cg = gen_tectonic_crater({5, 1, 1, 2});
    CHECK(cg.g.nv == 5);
    // blue edges form the 5-cycle i -> i+1; green edges are the +3 translation
    std::multiset<std::pair<int, int>> blue, green;
    for (int e = 0; e < cg.g.ne(); ++e) {
        if (cg.color[e] == EdgeColor::Blue) blue.insert({cg.g.edges[e].src, cg.g.edges[e].dst});
        else green.insert({cg.g.edges[e].src, cg.g.edges[e].dst});
    }
    std::multiset<std::pair<int, int>> eblue, egreen;
    for (int i = 0; i < 5; ++i) {
        eblue.insert({i, (i + 1) % 5});
        egreen.insert({i, (i + 3) % 5});
    }
    CHECK(blue == eblue);
    CHECK(green == egreen);
    auto r = recognize_tectonic_crater(cg);
    REQUIRE(r.yes);
    CHECK(*r.tectonic == TectonicParams{5, 1, 1, 2});
}

TEST_CASE("single vertex tectonic crater") {
    ColoredGraph cg = gen_tectonic_crater({1, 1, 1, 1});
    CHECK(cg.g.nv == 1);
    CHECK(cg.g.ne() == 2); // one blue and one green loop
    CHECK(recognize_tectonic_crater(cg).yes);
}

TEST_CASE("tectonic parameter round trips") {
    for (int64_t r = 1; r <= 4; ++r)
        for (int64_t s = 1; s <= 4; ++s)
            for (int64_t t = 1; t <= 4; ++t)
                for (int64_t c = 1; c <= r; ++c) {
                    if (gcd64(c, r) != 1) continue;
                    TectonicParams prm{r, s, t, c};
                    ColoredGraph cg;
                    try {
                        cg = gen_tectonic_crater(prm);
                    } catch (const ParamError&) {
                        continue; // inadmissible parameters are allowed to fail
                    }
                    auto rec = recognize_tectonic_crater(cg);
                    REQUIRE(rec.yes);
                    CHECK(*rec.tectonic == prm);
                    // uncolored search finds a valid structure as well
                    auto unc = recognize_tectonic_crater_uncolored(cg.g);
                    CHECK(unc.yes);
                }
    CHECK_THROWS_AS(gen_tectonic_crater({4, 1, 1, 2}), ParamError); // gcd(c, r) != 1
}

TEST_CASE("double intertwinement of a single edge matches the worked figure") {
    Digraph Z;
    int v1 = Z.add_vertex("v1"), v2 = Z.add_vertex("v2");
    Z.add_edge(v1, v2);
    Digraph X = double_intertwine(Z);
    CHECK(X.nv == 4);
    CHECK(X.ne() == 4);
    // +v1 -> +v2, +v1 -> -v2, -v1 -> +v2, -v1 -> -v2
    CHECK(edge_multiset(X) ==
          std::multiset<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

TEST_CASE("double intertwinement of the directed 4-cycle matches the worked figure") {
    Digraph Z;
    for (int i = 0; i < 4; ++i) Z.add_vertex("v" + std::to_string(i + 1));
    for (int i = 0; i < 4; ++i) Z.add_edge(i, (i + 1) % 4);
    Digraph X = double_intertwine(Z);
    CHECK(X.nv == 8);
    CHECK(X.ne() == 16);
    // two disjoint 4-cycles (the ++ and -- copies) plus eight crossing edges
    std::multiset<std::pair<int, int>> expect;
    for (int i = 0; i < 4; ++i) {
        int j = (i + 1) % 4;
        expect.insert({2 * i, 2 * j});         // ++
        expect.insert({2 * i, 2 * j + 1});     // +-
        expect.insert({2 * i + 1, 2 * j});     // -+
        expect.insert({2 * i + 1, 2 * j + 1}); // --
    }
    CHECK(edge_multiset(X) == expect);
    auto r = recognize_double_intertwinement(X);
    REQUIRE(r.yes);
    CHECK(r.quotient->nv == 4);
    // empty graph is its own double intertwinement
    Digraph empty;
    CHECK(double_intertwine(empty).nv == 0);
    CHECK(recognize_double_intertwinement(empty).yes);
}

TEST_CASE("intertwinement round trip through the tectonic generator") {
    ColoredGraph cg = gen_tectonic_crater({5, 1, 1, 2});
    Digraph X = double_intertwine(cg.g);
    CHECK(X.nv == 10);
    auto r = recognize_double_intertwinement(X);
    REQUIRE(r.yes);
    REQUIRE(r.quotient.has_value());
    CHECK(r.quotient->nv == 5);
    // the quotient is again a tectonic crater with the original parameters
    auto rq = recognize_tectonic_crater_uncolored(*r.quotient);
    REQUIRE(rq.yes);
    CHECK(*rq.tectonic == TectonicParams{5, 1, 1, 2});
    // an odd-order graph is never an intertwinement
    Digraph odd;
    odd.add_vertex();
    CHECK_FALSE(recognize_double_intertwinement(odd).yes);
}

TEST_CASE("tectonic volcano round trips") {
    for (int64_t l : {2, 3})
        for (int D = 0; D <= 2; ++D) {
            auto v = gen_tectonic_volcano(l, {3, 2, 1, 1}, D);
            auto r = recognize_tectonic_volcano(v.g, l, D);
            REQUIRE(r.yes);
            CHECK(*r.tectonic == TectonicParams{3, 2, 1, 1});
        }
    auto v = gen_tectonic_volcano(2, {5, 1, 1, 2}, 2);
    auto r = recognize_tectonic_volcano(v.g, 2, 2);
    REQUIRE(r.yes);
    CHECK(*r.tectonic == TectonicParams{5, 1, 1, 2});
}

TEST_CASE("dot export and parse round trip") {
    ColoredGraph cg = gen_tectonic_crater({5, 1, 1, 2});
    DotOptions opt;
    opt.colors = &cg.color;
    std::string dot = dot_export(cg.g, opt);
    ColoredGraph back = dot_parse(dot);
    CHECK(back.g.nv == cg.g.nv);
    CHECK(back.g.ne() == cg.g.ne());
    auto r = recognize_tectonic_crater(back);
    REQUIRE(r.yes);
    CHECK(*r.tectonic == TectonicParams{5, 1, 1, 2});
}

TEST_SUITE_END();
