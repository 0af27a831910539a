// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "isotower/isogeny.hpp"
#include "isotower/matgroup.hpp"
#include "isotower/tower.hpp"
#include "isotower/volcano.hpp"

using namespace isotower;

namespace {

int failures = 0;

void criterion(const std::string& name, const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string verdict = "PASS", detail;
    try {
        body();
    } catch (const std::exception& e) {
        verdict = "FAIL";
        detail = e.what();
        ++failures;
    }
    auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("[%s] %s (%lld ms)%s%s\n", verdict.c_str(), name.c_str(), (long long)dt,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

void check(bool ok, const std::string& msg) {
    if (!ok) throw CheckError(msg);
}

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// ---------------------------------------------------------------- criteria

void c1_gl2_order() {
    for (auto [p, n] : {std::pair<int64_t, int>{2, 1}, {3, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
        int64_t m = ipow(p, n);
        check(gl2_order(p, n) == gl2_brute_count(m),
              "formula vs brute count differ at p^n = " + std::to_string(m));
    }
}

void c2_derived_vs_direct() {
    // full graph over F_25 at n = 1
    TowerParams prm;
    prm.q = 5;
    prm.l = 2;
    prm.p = 3;
    prm.N = 1;
    prm.n_max = 1;
    Tower T1(prm, BuildScope::Full);
    check(T1.params().k == 2, "auto k should be 2 at depth 1");
    T1.derived_vs_direct(1);
    // depth 2 needs F_{5^6}; the check is restricted to the supersingular
    // component (recorded here and in the build reports)
    prm.n_max = 2;
    Tower T2(prm, BuildScope::SsOnly);
    check(T2.params().k == 6, "auto k should be 6 at depth 2");
    std::printf("    note: n=2 check restricted to scope '%s'\n", T2.scope_note().c_str());
    auto L1 = T2.build_direct(1);
    auto L2 = T2.build_direct(2);
    auto phi1 = T2.derived_vs_direct(1, &L1);
    auto phi2 = T2.derived_vs_direct(2, &L2);
    auto st = T2.level_stats(2);
    check(st.vertices == (int64_t)T2.classes().size() * 3888, "sheet count at n=2 is 3888");
    // the multiplication-by-p covering has p^4 sheets and intertwines the
    // level bijections with the voltage-group reduction
    auto cov = T2.covering_between(L2, L1);
    check(cov.sheets() == 81, "covering between depths 2 and 1 must have p^4 sheets");
    auto a2 = T2.alpha(2);
    auto a1 = T2.alpha(1);
    int n2 = a2.G->order(), n1g = a1.G->order();
    for (int v0 = 0; v0 < T2.X0()->nv; ++v0)
        for (int g = 0; g < n2; ++g) {
            auto e = a2.G->matrix_of(g);
            int gq = a1.G->index_of_matrix({e[0] % 3, e[1] % 3, e[2] % 3, e[3] % 3});
            check(cov.vmap[phi2[(size_t)v0 * n2 + g]] == phi1[(size_t)v0 * n1g + gq],
                  "[p]-covering does not match the voltage reduction");
        }
}

void c3_ss_component_counts() {
    auto run = [](int64_t q, int64_t l, int64_t p, int64_t N, int n_max) {
        TowerParams prm;
        prm.q = q;
        prm.l = l;
        prm.p = p;
        prm.N = N;
        prm.n_max = n_max;
        Tower T(prm, BuildScope::SsOnly);
        for (int n = 0; n <= n_max; ++n) {
            int64_t got = T.ss_component_count(n);
            int64_t expect = unit_index(ipow(p, n) * N, l);
            check(got == expect, "(" + std::to_string(l) + "," + std::to_string(p) + "," +
                                     std::to_string(N) + ") at n=" + std::to_string(n) + ": got " +
                                     std::to_string(got) + ", unit index " + std::to_string(expect));
        }
    };
    run(5, 2, 3, 1, 1);
    run(5, 2, 3, 1, 2); // n = 2 fits the cap via F_{5^6}
    run(11, 2, 5, 1, 1);
    run(11, 3, 5, 2, 1);
}

void c4_ss_galois_deck() {
    TowerParams prm;
    prm.q = 5;
    prm.l = 2;
    prm.p = 3;
    prm.N = 1;
    prm.n_max = 1;
    Tower T(prm, BuildScope::SsOnly);
    auto audit = T.galois_audit(0, 1);
    check(audit.status == "galois", "supersingular cover at n=1 is not recognized as regular");
    check(audit.deck_order == 48, "deck order is " + std::to_string(audit.deck_order));
    check(audit.fiber_transitive, "deck action is not fiber-transitive");
}

void c5_ordinary_growth() {
    TowerParams prm;
    prm.q = 13;
    prm.l = 3;
    prm.p = 2;
    prm.N = 1;
    prm.n_max = 2;
    prm.k = 4;
    auto F = make_extension(13, 4);
    auto seeds = find_ordinary_seeds(F, prm.l, prm.p, prm.N, prm.n_max, 8, 40000);
    check(!seeds.empty(), "no ordinary instances found over F_13^4");
    bool split_reached = false, nonsplit_reached = false, certificate = false;
    for (auto& s : seeds) {
        Tower T(prm, BuildScope::SeedComponents, {{s.a4, s.a6}});
        auto reports = T.classify_components();
        for (auto& r : reports) {
            if (r.supersingular) continue;
            if (!r.onset_reached) {
                std::printf("    note: onset not reached for cm_disc %lld (%s)\n",
                            (long long)r.cm_disc, r.split.c_str());
                continue;
            }
            if (r.split == "split") split_reached = true;
            else nonsplit_reached = true;
            // d! > p^4 certificate at n = 2
            int64_t d = r.counts[2] / r.counts[1];
            int64_t fact = 1;
            for (int64_t i = 2; i <= d; ++i) fact *= i;
            if (fact > ipow(prm.p, 4)) {
                certificate = true;
                auto ga = T.galois_audit(0, 2);
                check(ga.status == "not-galois", "certificate fired but audit says " + ga.status);
            }
        }
        if (split_reached && nonsplit_reached && certificate) break;
    }
    check(split_reached, "no split-class instance with the p^2 growth onset reached");
    check(nonsplit_reached, "no non-split instance with the p^3 growth onset reached");
    check(certificate, "the d! > p^4 certificate never fired at n = 2");
}

void c6_y_tower() {
    // N must exceed C_q and be coprime to pql = 30; the admissible levels in
    // ascending order are 7, 11, 13. Each gets the beta-side checks; the
    // cyclic-deck clause runs on the smallest level where a stabilized
    // (n, m) pair exists under the field cap.
    auto beta_side = [&](Tower& T) {
        const TowerParams& prm = T.params();
        check(prm.N > T.aut_bound_Cq(), "N must exceed C_q");
        auto b = T.beta(prm.n_max);
        std::set<int> image;
        for (int v : b.volt) image.insert(v);
        check(image.size() == 1, "determinant voltage is not constant");
        check(b.G->label(*image.begin()) == std::to_string(prm.l % ipow(prm.p, prm.n_max)),
              "determinant voltage is not l");
        auto counts = T.y_component_counts();
        int64_t base_comps = T.x0_components().count;
        for (int n = 0; n <= prm.n_max; ++n)
            check(counts[n] <= base_comps * T.y_component_bound(n),
                  "component bound violated at n=" + std::to_string(n));
    };

    // N = 7 with (l, p) = (2, 3) over F_{5^6}: the quotient-graph isomorphism
    // holds at both levels, but the component counts only stabilize at
    // n_max (2^3 = 8 has order 2 mod 9), so no deck pair fits the cap.
    {
        TowerParams prm;
        prm.q = 5;
        prm.l = 2;
        prm.p = 3;
        prm.N = 7;
        prm.n_max = 2;
        Tower T(prm, BuildScope::SsOnly);
        check(T.aut_bound_Cq() == 6, "C_q should be 6");
        beta_side(T);
        T.y_check_iso(1);
        T.y_check_iso(2);
        auto m0 = T.y_stabilization_m0();
        check(m0.has_value(), "counts did not stabilize up to n_max");
        if (*m0 >= prm.n_max)
            std::printf("    note: N=7 stabilizes only at n_max=%d; the deck pair needs "
                        "k=18 which exceeds the field cap (reported, not checked)\n",
                        prm.n_max);
    }
    // N = 11 with (l, p) = (3, 2): E[132]-rationality needs k = 20 over F_5;
    // infeasible under the cap and reported as such.
    {
        TowerParams prm;
        prm.q = 5;
        prm.l = 3;
        prm.p = 2;
        prm.N = 11;
        prm.n_max = 2;
        bool feasible = true;
        try {
            auto_select_k(prm);
        } catch (const CapError&) {
            feasible = false;
        }
        check(!feasible, "expected N=11 to be infeasible under the field cap");
        std::printf("    note: N=11 torsion field exceeds the cap (reported, not checked)\n");
    }
    // N = 13 with (l, p) = (3, 2) over F_{5^8}: counts stabilize immediately
    // and Deck(Y_2/Y_1) is cyclic of order p.
    {
        TowerParams prm;
        prm.q = 5;
        prm.l = 3;
        prm.p = 2;
        prm.N = 13;
        prm.n_max = 2;
        Tower T(prm, BuildScope::SsOnly);
        check(T.params().k == 8, "expected k = 8 for the N = 13 instance");
        beta_side(T);
        T.y_check_iso(1);
        T.y_check_iso(2);
        auto m0 = T.y_stabilization_m0();
        check(m0.has_value(), "counts did not stabilize up to n_max");
        int m = std::max(*m0, 1);
        check(prm.n_max > m, "no (n, m) pair above the stabilization level");
        auto deck = T.y_deck_audit(prm.n_max, m);
        check(deck.pass, deck.detail);
        check(deck.deck_order == ipow(prm.p, prm.n_max - m), "deck order is not p^{n-m}");
        std::printf("    note: deck clause verified on N=13 at (n,m)=(%d,%d), order %lld\n",
                    prm.n_max, m, (long long)deck.deck_order);
    }
}

void c7_density() {
    auto [g3, t3] = generator_density(3, 1, 100000);
    double f3 = (double)g3 / (double)t3;
    check(std::abs(f3 - 1.0 / 3.0) < 0.02, "density for p=3 is " + std::to_string(f3));
    auto [g5, t5] = generator_density(5, 1, 100000);
    double f5 = (double)g5 / (double)t5;
    check(std::abs(f5 - 2.0 / 5.0) < 0.02, "density for p=5 is " + std::to_string(f5));
}

void c8_pairing_identities() {
    auto F = make_extension(5, 2);
    ClassRep rep = canonical_class_rep(F, 0, F->one());
    CurveE E(F, rep.a4, rep.a6);
    auto tors = E.torsion_points(3);
    check((int64_t)tors.size() == 9, "E[3] should be fully rational");
    // alternating + bilinear + order-exact on a basis
    auto [B1, B2] = E.torsion_basis(3);
    check(F->multiplicative_order(weil_pairing(E, B1, B2, 3)) == 3, "basis pairing not primitive");
    for (auto& P : tors) {
        check(weil_pairing(E, P, P, 3) == F->one(), "pairing is not alternating");
        for (auto& Q : tors)
            for (auto& R : tors)
                check(weil_pairing(E, E.add(P, R), Q, 3) ==
                          F->mul(weil_pairing(E, P, Q, 3), weil_pairing(E, R, Q, 3)),
                      "pairing is not bilinear");
    }
    // compatibility with a 2-isogeny on all of E[3]
    auto steps = isogeny_steps(E, 2, 6);
    check(!steps.empty(), "no 2-isogeny steps");
    const IsogenyStep& s = steps[0];
    for (auto& P : tors)
        for (auto& Q : tors) {
            int32_t lhs = weil_pairing(s.target, s.eval(P), s.eval(Q), 3);
            int32_t rhs = F->pow(weil_pairing(E, P, Q, 3), 2);
            check(lhs == rhs, "pairing incompatible with the isogeny");
        }
    // dual composition is multiplication by l
    auto basis6 = E.torsion_basis(6);
    for (auto& st : steps) {
        const IsogenyStep& dual = dual_step(st, steps, 6);
        check(dual.eval(st.eval(basis6.first)) == E.mul(2, basis6.first) &&
                  dual.eval(st.eval(basis6.second)) == E.mul(2, basis6.second),
              "dual composition is not [l]");
    }
    // edge voltages have determinant l
    TowerParams prm;
    prm.q = 5;
    prm.l = 2;
    prm.p = 3;
    prm.N = 1;
    prm.n_max = 1;
    Tower T(prm, BuildScope::Full);
    for (auto& rec : T.steps()) {
        int64_t det = ((rec.volt[0] * rec.volt[3] - rec.volt[1] * rec.volt[2]) % 3 + 3) % 3;
        check(det == 2, "voltage determinant is not l");
    }
}

void c9_volcano() {
    // generator/recognizer sweeps
    for (int64_t l : {2, 3})
        for (int D = 0; D <= 3; ++D) {
            for (int64_t len = 1; len <= 6; ++len)
                check(recognize_volcano(gen_volcano(l, {true, len}, D).g, l, D).yes,
                      "volcano round trip failed");
            for (int64_t cnt = 1; cnt <= 4; ++cnt)
                check(recognize_volcano(gen_volcano(l, {false, cnt}, D).g, l, D).yes,
                      "volcano round trip failed");
        }
    for (int64_t r = 1; r <= 4; ++r)
        for (int64_t s = 1; s <= 4; ++s)
            for (int64_t t = 1; t <= 4; ++t)
                for (int64_t c = 1; c <= r; ++c) {
                    if (gcd64(c, r) != 1) continue;
                    ColoredGraph cg;
                    try {
                        cg = gen_tectonic_crater({r, s, t, c});
                    } catch (const ParamError&) {
                        continue;
                    }
                    auto rec = recognize_tectonic_crater(cg);
                    check(rec.yes && *rec.tectonic == TectonicParams{r, s, t, c},
                          "tectonic round trip failed");
                }
    // the two worked figures, vertex for vertex
    ColoredGraph five = gen_tectonic_crater({5, 1, 1, 2});
    check(five.g.nv == 5, "example crater size");
    std::set<std::pair<int, int>> blue, green;
    for (int e = 0; e < five.g.ne(); ++e)
        (five.color[e] == EdgeColor::Blue ? blue : green)
            .insert({five.g.edges[e].src, five.g.edges[e].dst});
    for (int i = 0; i < 5; ++i) {
        check(blue.count({i, (i + 1) % 5}) == 1, "blue cycle of the worked example");
        check(green.count({i, (i + 3) % 5}) == 1, "green translation of the worked example");
    }
    Digraph Z;
    for (int i = 0; i < 4; ++i) Z.add_vertex();
    for (int i = 0; i < 4; ++i) Z.add_edge(i, (i + 1) % 4);
    Digraph X = double_intertwine(Z);
    check(X.nv == 8 && X.ne() == 16, "intertwined 4-cycle size");
    std::multiset<std::pair<int, int>> got, expect;
    for (auto& e : X.edges) got.insert({e.src, e.dst});
    for (int i = 0; i < 4; ++i) {
        int j = (i + 1) % 4;
        expect.insert({2 * i, 2 * j});
        expect.insert({2 * i, 2 * j + 1});
        expect.insert({2 * i + 1, 2 * j});
        expect.insert({2 * i + 1, 2 * j + 1});
    }
    check(got == expect, "intertwined 4-cycle edges");
    auto rec = recognize_double_intertwinement(X);
    check(rec.yes && rec.quotient->nv == 4, "4-cycle intertwinement recognition");
}

void c10_covering_engine() {
    std::mt19937_64 rng(20260809);
    std::vector<GroupPtr> groups{
        std::make_shared<FiniteGroup>(FiniteGroup::cyclic(24)),
        std::make_shared<FiniteGroup>(FiniteGroup::cyclic(7)),
        std::make_shared<FiniteGroup>(FiniteGroup::symmetric(4)),
        std::make_shared<FiniteGroup>(FiniteGroup::units(35)),
        std::make_shared<FiniteGroup>(FiniteGroup::gl2(2, 1))};
    for (int trial = 0; trial < 100; ++trial) {
        GroupPtr G = groups[trial % groups.size()];
        auto g = std::make_shared<Digraph>();
        int nv = 2 + (int)(rng() % 39);
        for (int i = 0; i < nv; ++i) g->add_vertex();
        for (int i = 1; i < nv; ++i) g->add_edge((int)(rng() % i), i);
        int extra = (int)(rng() % (2 * nv));
        for (int i = 0; i < extra; ++i) g->add_edge((int)(rng() % nv), (int)(rng() % nv));
        std::vector<int> volt(g->ne());
        for (auto& v : volt) v = (int)(rng() % G->order());
        VoltageAssignment alpha(g, G, volt);
        auto d = derived_graph(alpha);
        int64_t direct = components(*d.Y, ConnMode::Weak).count;
        check(component_orbit_count(alpha, 0, false) == direct, "orbit count mismatch");
        check(transitivity_check(alpha), "left action is not transitive on components");
        // the d! > |G| shortcut never contradicts the full deck analysis
        int64_t fact = 1;
        bool shortcut = false;
        for (int64_t i = 2; i <= direct; ++i) {
            fact *= i;
            if (fact > G->order()) {
                shortcut = true;
                break;
            }
        }
        if (shortcut && (int64_t)d.Y->nv <= 400) {
            try {
                auto decks = deck_transformations(d.cov, 500000);
                check((int64_t)decks.size() != d.cov.sheets(),
                      "shortcut contradicted the full deck analysis");
            } catch (const CapError&) {
                // bounded search gave up; the shortcut verdict stands
            }
        }
    }
}

} // namespace

int main() {
    criterion("C1  GL2 order formula matches brute counts", c1_gl2_order);
    criterion("C2  derived and direct level graphs are isomorphic", c2_derived_vs_direct);
    criterion("C3  supersingular component counts equal the unit index", c3_ss_component_counts);
    criterion("C4  supersingular cover at n=1 is regular with 48 decks", c4_ss_galois_deck);
    criterion("C5  ordinary growth classes and the factorial certificate", c5_ordinary_growth);
    criterion("C6  pairing-quotient tower: direct = derived, cyclic decks", c6_y_tower);
    criterion("C7  generator density near phi(p-1)/p", c7_density);
    criterion("C8  pairing and isogeny identities", c8_pairing_identities);
    criterion("C9  volcano generators and recognizers round-trip", c9_volcano);
    criterion("C10 covering engine properties on random voltage graphs", c10_covering_engine);
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
