#include "isotower/isogeny.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace isotower {

namespace {

std::vector<KernelSubgroup> kernels_from_points(const CurveE& E, int64_t l,
                                                const std::vector<Pt>& ltors) {
    // group the order-l points into cyclic subgroups, one canonical generator each
    std::set<Pt> seen;
    std::vector<KernelSubgroup> out;
    std::vector<Pt> pts = ltors;
    std::sort(pts.begin(), pts.end(), [&E](const Pt& a, const Pt& b) { return E.pt_less(a, b); });
    for (const Pt& P : pts) {
        if (P.inf || seen.count(P)) continue;
        KernelSubgroup K;
        K.l = l;
        K.gen = P;
        Pt R = P;
        for (int64_t j = 1; j < l; ++j) {
            K.nonzero.push_back(R);
            seen.insert(R);
            R = E.add(R, P);
        }
        require(R.inf, "kernel generator does not have order l");
        out.push_back(std::move(K));
    }
    return out;
}

} // namespace

std::vector<KernelSubgroup> kernel_subgroups(const CurveE& E, int64_t l) {
    if (!is_prime_i64(l)) throw ParamError("kernel degree must be prime");
    if (E.field()->q() == l) throw ParamError("kernel degree equals the field characteristic");
    auto tors = E.torsion_points(l);
    if ((int64_t)tors.size() != l * l)
        throw ParamError("E[l] is not fully rational; extend the field first");
    auto out = kernels_from_points(E, l, tors);
    require((int64_t)out.size() == l + 1, "unexpected kernel count");
    return out;
}

std::vector<KernelSubgroup> rational_point_kernels(const CurveE& E, int64_t l) {
    if (!is_prime_i64(l)) throw ParamError("kernel degree must be prime");
    if (E.field()->q() == l) throw ParamError("kernel degree equals the field characteristic");
    return kernels_from_points(E, l, E.torsion_points(l));
}

VeluMap velu(const CurveE& E, const KernelSubgroup& C) {
    const Ext& K = *E.field();
    for (const Pt& Q : C.nonzero)
        require(E.on_curve(Q) && !Q.inf, "invalid kernel member");
    int32_t t = 0, w = 0;
    for (const Pt& Q : C.nonzero) {
        int32_t tQ = K.add(K.scale(3, K.mul(Q.x, Q.x)), E.a4());
        int32_t uQ = K.scale(2, K.mul(Q.y, Q.y));
        t = K.add(t, tQ);
        w = K.add(w, K.add(uQ, K.mul(tQ, Q.x)));
    }
    int32_t A = K.sub(E.a4(), K.scale(5, t));
    int32_t B = K.sub(E.a6(), K.scale(7, w));
    VeluMap m{E, CurveE(E.field(), A, B), C.nonzero, (int64_t)C.nonzero.size() + 1};
    return m;
}

Pt VeluMap::eval(const Pt& P) const {
    if (P.inf) return Pt::infinity();
    for (const Pt& Q : kernel_nonzero)
        if (P == Q) return Pt::infinity();
    const Ext& K = *domain.field();
    int32_t X = P.x, Y = P.y;
    for (const Pt& Q : kernel_nonzero) {
        Pt PQ = domain.add(P, Q);
        X = K.add(X, K.sub(PQ.x, Q.x));
        Y = K.add(Y, K.sub(PQ.y, Q.y));
    }
    Pt R = Pt::affine(X, Y);
    require(codomain.on_curve(R), "velu image left the codomain");
    return R;
}

Pt IsogenyStep::eval(const Pt& P) const {
    Pt R = raw.eval(P);
    if (R.inf) return R;
    const Ext& K = *source.field();
    // raw -> target twist, then automorphism: both (x,y) -> (u^2 x, u^3 y)
    int32_t u = K.mul(aut_u, iso_u);
    return Pt::affine(K.mul(K.mul(u, u), R.x), K.mul(K.mul(K.mul(u, u), u), R.y));
}

std::vector<IsogenyStep> isogeny_steps(const CurveE& E, int64_t l, int64_t merge_level) {
    const ExtPtr& F = E.field();
    auto kernels = rational_point_kernels(E, l);
    std::pair<Pt, Pt> basis{Pt::infinity(), Pt::infinity()};
    if (merge_level > 1) basis = E.torsion_basis(merge_level);
    std::vector<IsogenyStep> out;
    for (const auto& ker : kernels) {
        VeluMap vm = velu(E, ker);
        ClassRep rep = canonical_class_rep(F, vm.codomain.a4(), vm.codomain.a6());
        CurveE target(F, rep.a4, rep.a6);
        std::vector<std::pair<Pt, Pt>> seen_actions;
        for (int32_t u : target.automorphism_params()) {
            IsogenyStep s{E, target, ker, vm, rep.u, u};
            std::pair<Pt, Pt> act{s.eval(basis.first), s.eval(basis.second)};
            bool dup = false;
            for (auto& a : seen_actions)
                if (a == act) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            seen_actions.push_back(act);
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<IsogenyStep> isogeny_steps(const CurveE& E, int64_t l, const RepresentativeSet& S,
                                       int64_t merge_level) {
    auto steps = isogeny_steps(E, l, merge_level);
    for (auto& s : steps) S.index_of(s.target); // membership check
    return steps;
}

const IsogenyStep& dual_step(const IsogenyStep& step, const std::vector<IsogenyStep>& from_target,
                             int64_t check_level) {
    const CurveE& E = step.source;
    auto basis = check_level > 1 ? E.torsion_basis(check_level)
                                 : std::pair<Pt, Pt>{Pt::infinity(), Pt::infinity()};
    // the dual kernel is the image of the rational l-torsion under the step
    std::set<Pt> dual_kernel;
    for (const Pt& P : E.torsion_points(step.kernel.l)) {
        Pt img = step.eval(P);
        if (!img.inf) dual_kernel.insert(img);
    }
    bool kernel_known = (int64_t)dual_kernel.size() == step.kernel.l - 1;
    Pt m1 = E.mul(step.kernel.l, basis.first);
    Pt m2 = E.mul(step.kernel.l, basis.second);
    for (const auto& cand : from_target) {
        if (!(cand.target == step.source)) continue;
        if (kernel_known) {
            std::set<Pt> ck(cand.kernel.nonzero.begin(), cand.kernel.nonzero.end());
            if (ck != dual_kernel) continue;
        }
        if (cand.eval(step.eval(basis.first)) == m1 && cand.eval(step.eval(basis.second)) == m2)
            return cand;
    }
    throw CheckError("dual step not found among the target's steps");
}

} // namespace isotower
