#include "doctest.h"
#include "isotower/isogeny.hpp"

#include <map>
#include <set>

using namespace isotower;

TEST_SUITE_BEGIN("isogeny");

namespace {
// classical modular polynomial of level 2, published integer coefficients
int32_t phi2(const Ext& K, int32_t x, int32_t y) {
    auto c = [&](int64_t v) { return K.from_int(v); };
    int32_t r = K.add(K.pow(x, 3), K.pow(y, 3));
    r = K.sub(r, K.mul(K.mul(x, x), K.mul(y, y)));
    r = K.add(r, K.mul(c(1488), K.add(K.mul(K.mul(x, x), y), K.mul(x, K.mul(y, y)))));
    r = K.sub(r, K.mul(c(162000), K.add(K.mul(x, x), K.mul(y, y))));
    r = K.add(r, K.mul(c(40773375), K.mul(x, y)));
    r = K.add(r, K.mul(c(8748000000LL), K.add(x, y)));
    r = K.sub(r, K.mul(c(157464000000000LL), K.one()));
    return r;
}
} // namespace

TEST_CASE("kernel subgroups") {
    auto F = make_extension(5, 2);
    CurveE E(F, 0, 1); // trace -10, all small torsion rational
    auto k2 = kernel_subgroups(E, 2);
    CHECK(k2.size() == 3);
    // 2-torsion kernels correspond to the roots of x^3 + a4 x + a6
    for (auto& k : k2) {
        int32_t x = k.gen.x;
        CHECK(F->add(F->add(F->pow(x, 3), F->mul(E.a4(), x)), E.a6()) == 0);
        CHECK(k.gen.y == 0);
    }
    auto k3 = kernel_subgroups(E, 3);
    CHECK(k3.size() == 4); // (3^2-1)/(3-1)
    // pairwise intersections are trivial; the nonzero members partition E[l]\{O}
    std::set<Pt> seen;
    for (auto& k : k3)
        for (auto& P : k.nonzero) CHECK(seen.insert(P).second);
    CHECK((int64_t)seen.size() == 3 * 3 - 1);
    // partial torsion is rejected by the strict operation
    auto F5 = make_extension(5, 1);
    CurveE E5(F5, 0, 1); // one rational 2-torsion point
    CHECK_THROWS_AS(kernel_subgroups(E5, 2), ParamError);
    CHECK(rational_point_kernels(E5, 2).size() == 1);
    CHECK_THROWS_AS(kernel_subgroups(E5, 5), ParamError); // l = q
}

TEST_CASE("velu maps") {
    auto F = make_extension(5, 2);
    CurveE E(F, 0, 1);
    for (auto& k : kernel_subgroups(E, 2)) {
        VeluMap m = velu(E, k);
        CHECK(m.degree == 2);
        CHECK(m.eval(k.gen).inf);
        // modular polynomial check on j-invariants
        CHECK(phi2(*F, E.j_invariant(), m.codomain.j_invariant()) == 0);
        // the evaluation is a group homomorphism (exhaustive)
        auto pts = E.points();
        for (auto& P : pts)
            for (auto& Q : pts)
                CHECK(m.eval(E.add(P, Q)) == m.codomain.add(m.eval(P), m.eval(Q)));
        // kernel of the evaluation is exactly the kernel subgroup
        for (auto& P : pts) {
            bool in_kernel = P.inf;
            for (auto& g : k.nonzero) in_kernel = in_kernel || P == g;
            CHECK(m.eval(P).inf == in_kernel);
        }
        // injective away from the kernel: image of E[3] has 9 points
        std::set<Pt> img;
        for (auto& P : E.torsion_points(3)) img.insert(m.eval(P));
        CHECK(img.size() == 9);
    }
    // degree multiplicativity: composing two 2-isogenies kills exactly 4 points
    {
        auto k2 = kernel_subgroups(E, 2);
        VeluMap first = velu(E, k2[0]);
        auto back_kernels = rational_point_kernels(first.codomain, 2);
        REQUIRE(!back_kernels.empty());
        VeluMap second = velu(first.codomain, back_kernels[0]);
        int64_t killed = 0;
        for (auto& P : E.points())
            if (second.eval(first.eval(P)).inf) ++killed;
        CHECK(killed == 4);
    }
    for (auto& k : kernel_subgroups(E, 3)) {
        VeluMap m = velu(E, k);
        CHECK(m.degree == 3);
        CHECK(m.eval(k.gen).inf);
    }
}

TEST_CASE("steps with automorphism merging") {
    auto F13 = make_extension(13, 1);
    // find a curve with fully rational E[4]
    bool have = false;
    CurveE found(F13, 1, 1);
    for (int64_t a4 = 0; a4 < 13 && !have; ++a4)
        for (int64_t a6 = 0; a6 < 13 && !have; ++a6) {
            int32_t d = F13->add(F13->scale(4, F13->pow((int32_t)a4, 3)),
                                 F13->scale(27, F13->mul((int32_t)a6, (int32_t)a6)));
            if (d == 0) continue;
            CurveE E(F13, (int32_t)a4, (int32_t)a6);
            if (E.order() % 16 == 0 && E.torsion_full(4)) {
                found = E;
                have = true;
            }
        }
    REQUIRE(have);
    // merge level 4 > 2: one step per (kernel, target automorphism); at merge
    // level 2 the candidates u and -u coincide, halving each kernel's count
    auto steps4 = isogeny_steps(found, 2, 4);
    auto steps2 = isogeny_steps(found, 2, 2);
    std::map<std::pair<int32_t, int32_t>, int> per4, per2, auts;
    for (auto& s : steps4) {
        per4[{s.kernel.gen.x, s.kernel.gen.y}]++;
        auts[{s.kernel.gen.x, s.kernel.gen.y}] = (int)s.target.automorphism_params().size();
    }
    for (auto& s : steps2) per2[{s.kernel.gen.x, s.kernel.gen.y}]++;
    CHECK(per4.size() == 3);
    for (auto& [k, cnt] : per4) {
        CHECK(cnt == auts[k]);
        CHECK(per2[k] == auts[k] / 2);
    }
}

TEST_CASE("duals compose to multiplication by l") {
    auto F = make_extension(5, 2);
    ClassRep r = canonical_class_rep(F, 0, F->one());
    CurveE E(F, r.a4, r.a6); // supersingular class representative, trace -10
    auto steps = isogeny_steps(E, 2, 6); // all 6-torsion is rational here
    REQUIRE(!steps.empty());
    auto basis = E.torsion_basis(6);
    for (auto& s : steps) {
        REQUIRE(s.target == E); // j = 0 is the only supersingular j-invariant
        const IsogenyStep& dual = dual_step(s, steps, 6);
        CHECK(dual.eval(s.eval(basis.first)) == E.mul(2, basis.first));
        CHECK(dual.eval(s.eval(basis.second)) == E.mul(2, basis.second));
    }
}

TEST_SUITE_END();
