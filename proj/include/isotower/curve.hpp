#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isotower/field.hpp"

namespace isotower {

// Affine point or the point at infinity; coordinates are field codes.
struct Pt {
    int32_t x = 0, y = 0;
    bool inf = true;

    static Pt infinity() { return {}; }
    static Pt affine(int32_t x, int32_t y) { return {x, y, false}; }
    bool operator==(const Pt& o) const {
        return inf == o.inf && (inf || (x == o.x && y == o.y));
    }
    bool operator!=(const Pt& o) const { return !(*this == o); }
    bool operator<(const Pt& o) const {
        if (inf != o.inf) return inf; // infinity sorts first
        return std::tie(x, y) < std::tie(o.x, o.y);
    }
};

// y^2 = x^3 + a4 x + a6 over F_{q^k}; group law, counting and torsion.
class CurveE {
public:
    CurveE(ExtPtr F, int32_t a4, int32_t a6);

    const ExtPtr& field() const { return F_; }
    int32_t a4() const { return a4_; }
    int32_t a6() const { return a6_; }
    int32_t j_invariant() const;

    bool on_curve(const Pt& P) const;
    Pt neg(const Pt& P) const;
    Pt add(const Pt& P, const Pt& Q) const;
    Pt mul(int64_t n, const Pt& P) const;

    // canonical point order: infinity first, then by (ord_key(x), ord_key(y))
    bool pt_less(const Pt& a, const Pt& b) const;

    int64_t order() const;                        // #E(F), exhaustive x-sweep
    std::vector<Pt> points() const;               // all points, canonical order
    std::vector<Pt> torsion_points(int64_t M) const; // {P : [M]P = O}, canonical order
    bool torsion_full(int64_t M) const;           // E[M] ≅ (Z/M)^2 over F?

    // deterministic basis of E[M]; throws unless the torsion is fully rational
    std::pair<Pt, Pt> torsion_basis(int64_t M) const;

    // automorphism twist parameters u with (u^4 a4, u^6 a6) = (a4, a6)
    std::vector<int32_t> automorphism_params() const;

    std::string encode() const; // "q,k|a4|a6"
    std::string encode_point(const Pt& P) const;
    Pt decode_point(const std::string& s) const;

    bool operator==(const CurveE& o) const {
        return F_ == o.F_ && a4_ == o.a4_ && a6_ == o.a6_;
    }

private:
    ExtPtr F_;
    int32_t a4_, a6_;
    mutable int64_t order_ = -1;
    mutable std::shared_ptr<const std::vector<Pt>> points_; // shared by copies
};

// Weil pairing e_M(P,Q) via Miller's algorithm; for M <= brute_threshold an
// independent linear-chain evaluation is run and asserted equal.
int32_t weil_pairing(const CurveE& E, const Pt& P, const Pt& Q, int64_t M,
                     int64_t brute_threshold = 20);

struct FrobeniusData {
    int64_t trace;       // #E = q^k + 1 - t
    bool supersingular;  // t ≡ 0 mod q
    int64_t cm_disc = 0; // fundamental discriminant of t^2 - 4 q^k (ordinary only)
};

FrobeniusData frobenius_data(const CurveE& E);

enum class SplitBehavior { Split, Inert, Ramified };
SplitBehavior split_behavior(int64_t cm_disc, int64_t l);
std::string split_name(SplitBehavior s);

int64_t fundamental_discriminant(int64_t d); // of Q(sqrt(d)), d < 0 here

// Representative set S: one curve per isomorphism class over the field,
// ordered by canonical encoding of (a4, a6).
struct RepresentativeSet {
    ExtPtr F;
    std::vector<CurveE> curves;

    int index_of(const CurveE& raw) const; // class rep index of raw (exhaustive S)
};

// Exhaustive (a4, a6) scan with isomorphism dedup. Guarded by a field-size cap.
RepresentativeSet enumerate_representatives(const ExtPtr& F, int64_t cap_field = 700);

// Canonical class representative of (a4, a6): the twist-orbit minimum, plus
// the smallest twist parameter u (canonical field order) mapping the input
// onto it via (x, y) -> (u^2 x, u^3 y).
struct ClassRep {
    int32_t a4, a6;
    int32_t u;
};
ClassRep canonical_class_rep(const ExtPtr& F, int32_t a4, int32_t a6);

// is E' isomorphic to E over the field? (direct twist-parameter search)
bool isomorphic(const CurveE& a, const CurveE& b);

// least k' (multiple of the current degree) with E[M] fully rational after
// base change; only curves with prime-field coefficients are supported.
int64_t torsion_field_degree(const CurveE& E, int64_t M, int64_t cap_field = Ext::kDefaultCap,
                             int k_max = 24);

} // namespace isotower
