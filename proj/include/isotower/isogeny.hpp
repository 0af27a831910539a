#pragma once

#include <vector>

#include "isotower/curve.hpp"

namespace isotower {

struct KernelSubgroup {
    int64_t l;
    Pt gen;                       // canonical generator (smallest in point order)
    std::vector<Pt> nonzero;      // the l-1 affine members
};

// All l+1 kernel subgroups; requires E[l] fully rational.
std::vector<KernelSubgroup> kernel_subgroups(const CurveE& E, int64_t l);

// Kernels generated by rational l-torsion points (0, 1 or l+1 of them).
// Graph builds use this so partially rational torsion is handled.
std::vector<KernelSubgroup> rational_point_kernels(const CurveE& E, int64_t l);

// Velu isogeny in the additive form: codomain (a4 - 5t, a6 - 7w) and
// P |-> P + sum over kernel of (P+Q) - (Q), coordinatewise.
struct VeluMap {
    CurveE domain, codomain;
    std::vector<Pt> kernel_nonzero;
    int64_t degree;

    Pt eval(const Pt& P) const;
};

VeluMap velu(const CurveE& E, const KernelSubgroup& C);

// One l-isogeny between class representatives: aut ∘ twist ∘ velu.
struct IsogenyStep {
    CurveE source, target; // both canonical class representatives
    KernelSubgroup kernel;
    VeluMap raw;      // source -> raw codomain
    int32_t iso_u;    // raw -> target twist parameter
    int32_t aut_u;    // post-automorphism of target

    Pt eval(const Pt& P) const;
};

// Steps out of E (a class representative): for each kernel and each target
// automorphism one candidate, merged per kernel when the point maps agree on
// E[merge_level]. Targets are canonical class representatives.
std::vector<IsogenyStep> isogeny_steps(const CurveE& E, int64_t l, int64_t merge_level);

// Variant pinned to an exhaustive representative set (checks membership).
std::vector<IsogenyStep> isogeny_steps(const CurveE& E, int64_t l, const RepresentativeSet& S,
                                       int64_t merge_level);

// The unique step from step.target whose composition with step is
// multiplication by l on E[check_level]; throws if absent.
const IsogenyStep& dual_step(const IsogenyStep& step, const std::vector<IsogenyStep>& from_target,
                             int64_t check_level);

} // namespace isotower
