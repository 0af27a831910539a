#include "doctest.h"
#include "isotower/tower.hpp"

#include <set>

using namespace isotower;

TEST_SUITE_BEGIN("tower");

namespace {
TowerParams base_params() {
    TowerParams prm;
    prm.q = 5;
    prm.l = 2;
    prm.p = 3;
    prm.N = 1;
    prm.n_max = 1;
    return prm;
}
} // namespace

TEST_CASE("parameter guards") {
    TowerParams prm = base_params();
    prm.p = 5; // p = q
    CHECK_THROWS_AS(prm.validate(), ParamError);
    prm = base_params();
    prm.N = 6; // shares a factor with l and p
    CHECK_THROWS_AS(prm.validate(), ParamError);
    prm = base_params();
    prm.q = 4;
    CHECK_THROWS_AS(prm.validate(), ParamError);
}

TEST_CASE("automatic field degrees") {
    TowerParams prm = base_params();
    CHECK(auto_select_k(prm) == 2); // E[6] rational over F_25
    prm.n_max = 2;
    CHECK(auto_select_k(prm) == 6); // E[18] needs F_{5^6}
    TowerParams prm2;
    prm2.q = 11;
    prm2.l = 2;
    prm2.p = 5;
    prm2.N = 1;
    prm2.n_max = 1;
    CHECK(auto_select_k(prm2) == 2); // E[10] rational over F_121
    TowerParams prm3;
    prm3.q = 11;
    prm3.l = 3;
    prm3.p = 5;
    prm3.N = 2;
    prm3.n_max = 1;
    CHECK(auto_select_k(prm3) == 4); // E[30] needs F_{11^4}
}

TEST_CASE("full-scope tower over F_25") {
    Tower T(base_params(), BuildScope::Full);
    CHECK(T.params().k == 2);
    // scope = all classes with rational E[3]
    int ss = 0;
    for (auto& c : T.classes()) {
        CHECK(c.E.torsion_full(3));
        if (c.ss) ++ss;
    }
    CHECK(ss == 1); // only the trace -10 sextic twist of j = 0
    CHECK(T.X0()->nv == (int)T.classes().size());

    // voltage determinants are l on every edge
    int64_t pn = 3;
    for (auto& rec : T.steps()) {
        int64_t det = ((rec.volt[0] * rec.volt[3] - rec.volt[1] * rec.volt[2]) % pn + pn) % pn;
        CHECK(det == T.params().l % pn);
    }
    // out-degree is constant on each vertex fiber (it only depends on the class)
    for (int v = 0; v < T.X0()->nv; ++v)
        CHECK((int64_t)T.X0()->out_edges()[v].size() ==
              (int64_t)T.class_steps(T.x0_class(v)).size());

    // level stats: the level-1 fiber over each class has |GL2(Z/3)| = 48 vertices
    auto st = T.level_stats(1);
    CHECK(st.vertices == (int64_t)T.classes().size() * 48);

    // explicit bijection between the derived and direct level-1 graphs
    auto phi = T.derived_vs_direct(1);
    CHECK((int64_t)phi.size() == st.vertices);

    // covering between consecutive levels has |GL2(Z/3)| sheets
    auto L1 = T.build_direct(1);
    auto L0 = T.build_direct(0);
    auto cov = T.covering_between(L1, L0);
    CHECK(cov.sheets() == 48);

    // the [p]-covering is compatible with the voltage-group quotient: the
    // bijections at both levels intertwine the two projections
    auto phi1 = T.derived_vs_direct(1, &L1);
    auto phi0 = T.derived_vs_direct(0, &L0);
    auto a1 = T.alpha(1);
    int n1 = a1.G->order();
    for (int v0 = 0; v0 < T.X0()->nv; ++v0)
        for (int g = 0; g < n1; ++g) {
            int upper = phi1[(size_t)v0 * n1 + g];
            CHECK(cov.vmap[upper] == phi0[v0]); // quotient to the trivial group
        }

    // strong and weak component counts agree on the level graphs
    CHECK(components(*L1.G, ConnMode::Weak).count == components(*L1.G, ConnMode::Strong).count);

    // the supersingular subgraph is connected at n = 1 (unit index 1)
    CHECK(T.ss_component_count(1) == unit_index(3, 2));
    CHECK(T.ss_component_count(0) == unit_index(1, 2));

    // dual steps give composite voltage l * identity
    for (auto& rec : T.steps()) {
        bool found = false;
        for (auto& other : T.steps()) {
            if (other.src != rec.dst || other.dst != rec.src) continue;
            std::array<int64_t, 4> prod{};
            const auto& a = rec.volt;
            const auto& b = other.volt;
            prod = {(a[0] * b[0] + a[1] * b[2]) % pn, (a[0] * b[1] + a[1] * b[3]) % pn,
                    (a[2] * b[0] + a[3] * b[2]) % pn, (a[2] * b[1] + a[3] * b[3]) % pn};
            if (prod == std::array<int64_t, 4>{2 % pn, 0, 0, 2 % pn}) found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("supersingular scope over F_25 and the galois audit") {
    Tower T(base_params(), BuildScope::SsOnly);
    CHECK(T.classes().size() == 1);
    CHECK(T.classes()[0].ss);
    auto part = T.x0_components();
    CHECK(part.count == 1);
    auto audit = T.galois_audit(0, 1);
    CHECK(audit.status == "galois");
    CHECK(audit.deck_order == 48);
    CHECK(audit.fiber_transitive);
    // reduction type is constant on components and reports carry it
    auto reports = T.classify_components();
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].supersingular);
    CHECK(reports[0].counts == std::vector<int64_t>{1, 1});
}

TEST_CASE("voltage level zero is trivial") {
    Tower T(base_params(), BuildScope::SsOnly);
    auto a0 = T.alpha(0);
    CHECK(a0.G->order() == 1);
    auto phi0 = T.derived_vs_direct(0);
    CHECK((int)phi0.size() == T.X0()->nv);
}

TEST_CASE("voltage reduction commutes with recomputation at lower levels") {
    TowerParams prm = base_params();
    prm.n_max = 2; // F_{5^6}
    Tower T(prm, BuildScope::SsOnly);
    // recompute each voltage directly on the 3-torsion images of the basis
    // and compare with the stored matrix reduced mod 3
    for (auto& rec : T.steps()) {
        const CurveE& E = T.classes()[rec.src].E;
        const CurveE& E2 = T.classes()[rec.dst].E;
        Pt s1 = E.mul(3, T.classes()[rec.src].tate.first);   // level-1 images
        Pt t1 = E.mul(3, T.classes()[rec.src].tate.second);
        Pt s2 = E2.mul(3, T.classes()[rec.dst].tate.first);
        Pt t2 = E2.mul(3, T.classes()[rec.dst].tate.second);
        Pt fs = rec.step.eval(s1), ft = rec.step.eval(t1);
        std::array<int64_t, 4> m{};
        bool found = false;
        for (int64_t a = 0; a < 3 && !found; ++a)
            for (int64_t b = 0; b < 3 && !found; ++b)
                if (E2.add(E2.mul(a, s2), E2.mul(b, t2)) == fs) {
                    for (int64_t c = 0; c < 3 && !found; ++c)
                        for (int64_t d = 0; d < 3 && !found; ++d)
                            if (E2.add(E2.mul(c, s2), E2.mul(d, t2)) == ft) {
                                m = {a, b, c, d};
                                found = true;
                            }
                }
        REQUIRE(found);
        CHECK(m[0] == rec.volt[0] % 3);
        CHECK(m[1] == rec.volt[1] % 3);
        CHECK(m[2] == rec.volt[2] % 3);
        CHECK(m[3] == rec.volt[3] % 3);
    }
    // paths realizing multiplication by l carry voltage l * identity
    int64_t pn = 9;
    for (auto& rec : T.steps()) {
        bool found = false;
        for (auto& other : T.steps()) {
            if (other.src != rec.dst || other.dst != rec.src) continue;
            const auto& a = rec.volt;
            const auto& b = other.volt;
            std::array<int64_t, 4> prod = {
                (a[0] * b[0] + a[1] * b[2]) % pn, (a[0] * b[1] + a[1] * b[3]) % pn,
                (a[2] * b[0] + a[3] * b[2]) % pn, (a[2] * b[1] + a[3] * b[3]) % pn};
            if (prod == std::array<int64_t, 4>{2, 0, 0, 2}) found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("ordinary seed search over F_169") {
    auto F = make_extension(13, 2);
    auto seeds = find_ordinary_seeds(F, 2, 3, 1, 1, 2, 20000);
    REQUIRE(!seeds.empty());
    CHECK(seeds[0].cm_disc == -4);
    CHECK((seeds[0].trace == -10 || seeds[0].trace == 10));
    CHECK(seeds[0].split == "ramified"); // 2 ramifies in Q(i)
    // the seed builds a closed ordinary component
    TowerParams prm;
    prm.q = 13;
    prm.l = 2;
    prm.p = 3;
    prm.N = 1;
    prm.n_max = 1;
    prm.k = 2;
    Tower T(prm, BuildScope::SeedComponents, {{seeds[0].a4, seeds[0].a6}});
    for (auto& c : T.classes()) CHECK(!c.ss);
    auto reports = T.classify_components();
    for (auto& r : reports) {
        CHECK(r.split == "ramified");
        CHECK(r.cm_disc == -4);
    }
}

TEST_SUITE_END();
