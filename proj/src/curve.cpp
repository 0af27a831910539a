#include "isotower/curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isotower {

CurveE::CurveE(ExtPtr F, int32_t a4, int32_t a6) : F_(std::move(F)), a4_(a4), a6_(a6) {
    const Ext& K = *F_;
    // 4 a4^3 + 27 a6^2 != 0
    int32_t disc = K.add(K.scale(4, K.pow(a4, 3)), K.scale(27, K.mul(a6, a6)));
    if (disc == 0) throw ParamError("singular curve: 4 a4^3 + 27 a6^2 = 0");
}

int32_t CurveE::j_invariant() const {
    const Ext& K = *F_;
    int32_t c = K.scale(4, K.pow(a4_, 3));
    int32_t d = K.add(c, K.scale(27, K.mul(a6_, a6_)));
    return K.div(K.mul(K.from_int(1728), c), d);
}

bool CurveE::on_curve(const Pt& P) const {
    if (P.inf) return true;
    const Ext& K = *F_;
    int32_t lhs = K.mul(P.y, P.y);
    int32_t rhs = K.add(K.add(K.pow(P.x, 3), K.mul(a4_, P.x)), a6_);
    return lhs == rhs;
}

Pt CurveE::neg(const Pt& P) const {
    if (P.inf) return P;
    return Pt::affine(P.x, F_->neg(P.y));
}

Pt CurveE::add(const Pt& P, const Pt& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    const Ext& K = *F_;
    if (P.x == Q.x) {
        if (K.add(P.y, Q.y) == 0) return Pt::infinity(); // Q = -P (covers y=0)
        // tangent
        int32_t num = K.add(K.scale(3, K.mul(P.x, P.x)), a4_);
        int32_t lam = K.div(num, K.scale(2, P.y));
        int32_t x3 = K.sub(K.mul(lam, lam), K.add(P.x, Q.x));
        int32_t y3 = K.sub(K.mul(lam, K.sub(P.x, x3)), P.y);
        return Pt::affine(x3, y3);
    }
    int32_t lam = K.div(K.sub(Q.y, P.y), K.sub(Q.x, P.x));
    int32_t x3 = K.sub(K.mul(lam, lam), K.add(P.x, Q.x));
    int32_t y3 = K.sub(K.mul(lam, K.sub(P.x, x3)), P.y);
    return Pt::affine(x3, y3);
}

Pt CurveE::mul(int64_t n, const Pt& P) const {
    if (n < 0) return mul(-n, neg(P));
    Pt R = Pt::infinity(), B = P;
    while (n > 0) {
        if (n & 1) R = add(R, B);
        B = add(B, B);
        n >>= 1;
    }
    return R;
}

bool CurveE::pt_less(const Pt& a, const Pt& b) const {
    if (a.inf != b.inf) return a.inf;
    if (a.inf) return false;
    auto ka = std::make_pair(F_->ord_key(a.x), F_->ord_key(a.y));
    auto kb = std::make_pair(F_->ord_key(b.x), F_->ord_key(b.y));
    return ka < kb;
}

namespace {

int64_t order_by_sweep(const Ext& K, int32_t a4, int32_t a6) {
    int64_t Q = K.order();
    int64_t count = 1; // infinity
    for (int64_t xc = 0; xc < Q; ++xc) {
        int32_t x = (int32_t)xc;
        int32_t rhs = K.add(K.add(K.pow(x, 3), K.mul(a4, x)), a6);
        if (rhs == 0) count += 1;
        else if (K.is_square(rhs)) count += 2;
    }
    return count;
}

// all n in [lo, hi] with [n]P = O, by baby-step giant-step
std::vector<int64_t> kill_exponents(const CurveE& E, const Pt& P, int64_t lo, int64_t hi) {
    int64_t span = hi - lo + 1;
    int64_t m = 1;
    while (m * m < span) ++m;
    std::map<Pt, int64_t> baby; // [j]P -> smallest such j
    Pt B = Pt::infinity();
    for (int64_t j = 0; j < m; ++j) {
        if (!baby.count(B)) baby[B] = j;
        B = E.add(B, P);
    }
    Pt G = E.mul(m, P);
    std::vector<int64_t> hits;
    Pt T = E.mul(lo, P); // [lo + i*m]P; match [lo+i*m]P = [-j]P i.e. T = neg of baby
    for (int64_t i = 0; lo + i * m <= hi; ++i) {
        auto it = baby.find(E.neg(T));
        if (it != baby.end()) {
            int64_t n = lo + i * m + it->second;
            if (n >= lo && n <= hi && E.mul(n, P).inf) hits.push_back(n);
        }
        T = E.add(T, G);
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
    return hits;
}

} // namespace

int64_t CurveE::order() const {
    if (order_ >= 0) return order_;
    const Ext& K = *F_;
    int64_t Q = K.order();
    if (Q <= 4096) {
        order_ = order_by_sweep(K, a4_, a6_);
    } else {
        // point-order lcm until the Hasse window pins the count; sweep fallback
        int64_t root = (int64_t)std::sqrt((double)Q);
        while ((root + 1) * (root + 1) <= Q) ++root;
        while (root * root > Q) --root;
        int64_t lo = Q + 1 - 2 * root - 2, hi = Q + 1 + 2 * root + 2;
        if (lo < 1) lo = 1;
        int64_t step = 0; // lcm of point orders
        int points_tried = 0;
        for (int64_t xc = 0; xc < Q && points_tried < 10; ++xc) {
            int32_t x = (int32_t)xc;
            int32_t rhs = K.add(K.add(K.pow(x, 3), K.mul(a4_, x)), a6_);
            if (rhs != 0 && !K.is_square(rhs)) continue;
            Pt P = Pt::affine(x, rhs == 0 ? 0 : *K.sqrt(rhs));
            ++points_tried;
            auto hits = kill_exponents(*this, P, lo, hi);
            require(!hits.empty(), "point order search failed inside the Hasse window");
            int64_t ord = hits.size() >= 2 ? hits[1] - hits[0] : hits[0];
            // refine to the exact point order
            for (auto [r, e] : factorize(ord)) {
                (void)e;
                while (ord % r == 0 && mul(ord / r, P).inf) ord /= r;
            }
            step = step == 0 ? ord : step / gcd64(step, ord) * ord;
            // candidates = multiples of step in the window
            int64_t first = (lo + step - 1) / step * step;
            if (first + step > hi) {
                order_ = first;
                break;
            }
        }
        if (order_ < 0) order_ = order_by_sweep(K, a4_, a6_);
    }
    int64_t t = Q + 1 - order_;
    require((__int128)t * t <= (__int128)4 * Q, "point count violates the Hasse bound");
    return order_;
}

std::vector<Pt> CurveE::points() const {
    if (points_) return *points_;
    const Ext& K = *F_;
    int64_t Q = K.order();
    std::vector<Pt> out;
    out.push_back(Pt::infinity());
    for (int64_t xc = 0; xc < Q; ++xc) {
        int32_t x = (int32_t)xc;
        int32_t rhs = K.add(K.add(K.pow(x, 3), K.mul(a4_, x)), a6_);
        if (rhs == 0) {
            out.push_back(Pt::affine(x, 0));
        } else if (K.is_square(rhs)) {
            int32_t y = *K.sqrt(rhs);
            out.push_back(Pt::affine(x, y));
            out.push_back(Pt::affine(x, K.neg(y)));
        }
    }
    std::sort(out.begin(), out.end(), [this](const Pt& a, const Pt& b) { return pt_less(a, b); });
    points_ = std::make_shared<const std::vector<Pt>>(std::move(out));
    return *points_;
}

std::vector<Pt> CurveE::torsion_points(int64_t M) const {
    std::vector<Pt> out;
    for (const Pt& P : points())
        if (mul(M, P).inf) out.push_back(P);
    return out;
}

bool CurveE::torsion_full(int64_t M) const {
    if (M == 1) return true;
    if ((F_->order() - 1) % M != 0) return false; // Weil pairing constraint
    if (order() % (M * M) != 0) return false;
    return (int64_t)torsion_points(M).size() == M * M;
}

namespace {
bool exact_order(const CurveE& E, const Pt& P, int64_t M) {
    if (!E.mul(M, P).inf) return false;
    for (auto [r, e] : factorize(M)) {
        (void)e;
        if (E.mul(M / r, P).inf) return false;
    }
    return true;
}
} // namespace

std::pair<Pt, Pt> CurveE::torsion_basis(int64_t M) const {
    if (M == 1) return {Pt::infinity(), Pt::infinity()};
    auto tors = torsion_points(M);
    if ((int64_t)tors.size() != M * M)
        throw ParamError("E[" + std::to_string(M) + "] is not fully rational over the curve's field");
    Pt B1 = Pt::infinity();
    for (const Pt& P : tors)
        if (exact_order(*this, P, M)) {
            B1 = P;
            break;
        }
    require(!B1.inf, "no point of exact order M in full torsion");
    for (const Pt& Q : tors) {
        if (Q.inf) continue;
        int32_t z = weil_pairing(*this, B1, Q, M);
        if (F_->multiplicative_order(z) == M) return {B1, Q};
    }
    throw CheckError("no pairing-complement found for torsion basis");
}

std::vector<int32_t> CurveE::automorphism_params() const {
    const Ext& K = *F_;
    std::vector<int32_t> out;
    for (int64_t u = 1; u < K.order(); ++u) {
        int32_t uu = (int32_t)u;
        if (K.mul(K.pow(uu, 4), a4_) == a4_ && K.mul(K.pow(uu, 6), a6_) == a6_) out.push_back(uu);
    }
    std::sort(out.begin(), out.end(),
              [&K](int32_t a, int32_t b) { return K.ord_key(a) < K.ord_key(b); });
    return out;
}

std::string CurveE::encode() const {
    std::ostringstream os;
    os << F_->q() << ',' << F_->k() << '|' << F_->encode(a4_) << '|' << F_->encode(a6_);
    return os.str();
}

std::string CurveE::encode_point(const Pt& P) const {
    if (P.inf) return "inf";
    return F_->encode(P.x) + ";" + F_->encode(P.y);
}

Pt CurveE::decode_point(const std::string& s) const {
    if (s == "inf") return Pt::infinity();
    auto pos = s.find(';');
    if (pos == std::string::npos) throw ParamError("bad point encoding: " + s);
    Pt P = Pt::affine(F_->decode(s.substr(0, pos)), F_->decode(s.substr(pos + 1)));
    if (!on_curve(P)) throw ParamError("decoded point is not on the curve: " + s);
    return P;
}

// ----------------------------------------------------------- Weil pairing

namespace {

struct DegenerateEval {};

// line through A and B (tangent if A == B) evaluated at V; vertical when
// A + B = O. Throws DegenerateEval on a zero value.
int32_t line_eval(const CurveE& E, const Pt& A, const Pt& B, const Pt& V) {
    const Ext& K = *E.field();
    int32_t r;
    if (A.inf || B.inf) {
        const Pt& C = A.inf ? B : A;
        if (C.inf) return K.one();
        r = K.sub(V.x, C.x);
    } else if (A.x == B.x && K.add(A.y, B.y) == 0) {
        r = K.sub(V.x, A.x); // vertical
    } else {
        int32_t lam;
        if (A == B) {
            lam = K.div(K.add(K.scale(3, K.mul(A.x, A.x)), E.a4()), K.scale(2, A.y));
        } else {
            lam = K.div(K.sub(B.y, A.y), K.sub(B.x, A.x));
        }
        r = K.sub(K.sub(V.y, A.y), K.mul(lam, K.sub(V.x, A.x)));
    }
    if (r == 0) throw DegenerateEval{};
    return r;
}

int32_t vertical_eval(const CurveE& E, const Pt& C, const Pt& V) {
    const Ext& K = *E.field();
    if (C.inf) return K.one();
    int32_t r = K.sub(V.x, C.x);
    if (r == 0) throw DegenerateEval{};
    return r;
}

// f_{M,P}(V) by double-and-add
int32_t miller(const CurveE& E, const Pt& P, int64_t M, const Pt& V) {
    const Ext& K = *E.field();
    if (V.inf) throw DegenerateEval{};
    int32_t f = K.one();
    Pt R = P;
    int hi = 63;
    while (hi > 0 && !((M >> hi) & 1)) --hi;
    for (int i = hi - 1; i >= 0; --i) {
        Pt R2 = E.add(R, R);
        f = K.mul(K.mul(f, f), K.div(line_eval(E, R, R, V), vertical_eval(E, R2, V)));
        R = R2;
        if ((M >> i) & 1) {
            Pt RP = E.add(R, P);
            f = K.mul(f, K.div(line_eval(E, R, P, V), vertical_eval(E, RP, V)));
            R = RP;
        }
    }
    require(R.inf, "miller: M*P != infinity");
    return f;
}

// linear-chain variant, the independent route for small M
int32_t miller_linear(const CurveE& E, const Pt& P, int64_t M, const Pt& V) {
    const Ext& K = *E.field();
    if (V.inf) throw DegenerateEval{};
    int32_t f = K.one();
    Pt R = P;
    for (int64_t m = 1; m < M; ++m) {
        Pt RP = E.add(R, P);
        f = K.mul(f, K.div(line_eval(E, R, P, V), vertical_eval(E, RP, V)));
        R = RP;
    }
    require(R.inf, "miller_linear: M*P != infinity");
    return f;
}

// deterministic enumeration of auxiliary points: x codes ascending
std::vector<Pt> aux_points(const CurveE& E, size_t want) {
    const Ext& K = *E.field();
    std::vector<Pt> out;
    for (int64_t xc = 0; xc < K.order() && out.size() < want; ++xc) {
        int32_t x = (int32_t)xc;
        int32_t rhs = K.add(K.add(K.pow(x, 3), K.mul(E.a4(), x)), E.a6());
        if (rhs == 0) {
            out.push_back(Pt::affine(x, 0));
        } else if (K.is_square(rhs)) {
            int32_t y = *K.sqrt(rhs);
            out.push_back(Pt::affine(x, y));
            out.push_back(Pt::affine(x, K.neg(y)));
        }
    }
    return out;
}

// e_M(P, Q) = f_{D_P}(D_Q) / f_{D_Q}(D_P) with D_P = (P+T) - (T) and
// D_Q = (Q+S) - (S) of disjoint supports. The function with divisor
// M(P+T) - M(T) is the Miller function of P precomposed with translation
// by -T, so every evaluation happens on translates.
int32_t pairing_route(const CurveE& E, const Pt& P, const Pt& Q, int64_t M, bool linear) {
    const Ext& K = *E.field();
    auto mill = [&](const Pt& A, const Pt& V) {
        return linear ? miller_linear(E, A, M, V) : miller(E, A, M, V);
    };
    auto aux = aux_points(E, 24);
    for (const Pt& T : aux) {
        Pt PT = E.add(P, T);
        if (PT.inf) continue;
        for (const Pt& S : aux) {
            Pt QS = E.add(Q, S);
            if (QS.inf) continue;
            // disjoint supports of D_P and D_Q
            if (S == T || S == PT || QS == T || QS == PT) continue;
            // evaluation points must avoid the zeros/poles {P, O} and {Q, O}
            Pt A1 = E.add(QS, E.neg(T)), A2 = E.add(S, E.neg(T));
            Pt B1 = E.add(PT, E.neg(S)), B2 = E.add(T, E.neg(S));
            if (A1.inf || A2.inf || A1 == P || A2 == P) continue;
            if (B1.inf || B2.inf || B1 == Q || B2 == Q) continue;
            try {
                int32_t fP = K.div(mill(P, A1), mill(P, A2));
                int32_t fQ = K.div(mill(Q, B1), mill(Q, B2));
                return K.div(fP, fQ);
            } catch (const DegenerateEval&) {
                continue;
            }
        }
    }
    throw CheckError("no usable auxiliary points for pairing evaluation");
}

} // namespace

int32_t weil_pairing(const CurveE& E, const Pt& P, const Pt& Q, int64_t M, int64_t brute_threshold) {
    const Ext& K = *E.field();
    if (!E.mul(M, P).inf || !E.mul(M, Q).inf)
        throw ParamError("weil_pairing: inputs are not M-torsion");
    if (P.inf || Q.inf) return K.one();
    int32_t z = pairing_route(E, P, Q, M, false);
    if (M <= brute_threshold) {
        int32_t z2 = pairing_route(E, P, Q, M, true);
        require(z == z2, "Miller and linear-chain pairings disagree");
    }
    // M-th root of unity
    require(K.pow(z, M) == K.one(), "pairing value is not an M-th root of unity");
    return z;
}

// ------------------------------------------------------- Frobenius data

int64_t fundamental_discriminant(int64_t d) {
    if (d >= 0) throw ParamError("expected a negative discriminant");
    int64_t m = d % 4;
    if (m != 0 && m != -3) throw ParamError("t^2-4q discriminants are 0 or 1 mod 4");
    // strip square part
    int64_t n = -d, s = 1;
    for (int64_t p = 2; p * p <= n; ++p) {
        while (n % (p * p) == 0) {
            n /= p * p;
            s *= p;
        }
    }
    int64_t sf = -n; // squarefree part
    int64_t d0 = ((sf % 4) + 4) % 4 == 1 ? sf : 4 * sf;
    return d0;
}

FrobeniusData frobenius_data(const CurveE& E) {
    int64_t Q = E.field()->order();
    int64_t t = Q + 1 - E.order();
    FrobeniusData out;
    out.trace = t;
    out.supersingular = (t % E.field()->q() == 0);
    if (!out.supersingular) out.cm_disc = fundamental_discriminant(t * t - 4 * Q);
    return out;
}

SplitBehavior split_behavior(int64_t cm_disc, int64_t l) {
    if (!is_prime_i64(l)) throw ParamError("split_behavior needs a prime");
    if (cm_disc >= 0) throw ParamError("split_behavior needs a negative discriminant");
    // fundamental check
    require(fundamental_discriminant(cm_disc) == cm_disc, "discriminant is not fundamental");
    int k = kronecker(cm_disc, l);
    if (k == 1) return SplitBehavior::Split;
    if (k == -1) return SplitBehavior::Inert;
    return SplitBehavior::Ramified;
}

std::string split_name(SplitBehavior s) {
    switch (s) {
        case SplitBehavior::Split: return "split";
        case SplitBehavior::Inert: return "inert";
        default: return "ramified";
    }
}

// ------------------------------------------------------ representatives

ClassRep canonical_class_rep(const ExtPtr& F, int32_t a4, int32_t a6) {
    const Ext& K = *F;
    int64_t bestKey4 = -1, bestKey6 = -1, bestUKey = -1;
    int32_t best4 = 0, best6 = 0, bestU = 1;
    for (int64_t uc = 1; uc < K.order(); ++uc) {
        int32_t u = (int32_t)uc;
        int32_t t4 = K.mul(K.pow(u, 4), a4);
        int32_t t6 = K.mul(K.pow(u, 6), a6);
        int64_t k4 = K.ord_key(t4), k6 = K.ord_key(t6), ku = K.ord_key(u);
        if (bestKey4 < 0 || std::tie(k4, k6) < std::tie(bestKey4, bestKey6) ||
            (k4 == bestKey4 && k6 == bestKey6 && ku < bestUKey)) {
            bestKey4 = k4;
            bestKey6 = k6;
            bestUKey = ku;
            best4 = t4;
            best6 = t6;
            bestU = u;
        }
    }
    return {best4, best6, bestU};
}

bool isomorphic(const CurveE& a, const CurveE& b) {
    if (a.field() != b.field()) return false;
    const Ext& K = *a.field();
    for (int64_t uc = 1; uc < K.order(); ++uc) {
        int32_t u = (int32_t)uc;
        if (K.mul(K.pow(u, 4), a.a4()) == b.a4() && K.mul(K.pow(u, 6), a.a6()) == b.a6())
            return true;
    }
    return false;
}

RepresentativeSet enumerate_representatives(const ExtPtr& F, int64_t cap_field) {
    const Ext& K = *F;
    if (K.order() > cap_field)
        throw CapError("representative enumeration capped at field size " + std::to_string(cap_field));
    // elements in canonical order
    std::vector<int32_t> elems(K.order());
    for (int64_t i = 0; i < K.order(); ++i) elems[i] = (int32_t)i;
    std::sort(elems.begin(), elems.end(),
              [&K](int32_t a, int32_t b) { return K.ord_key(a) < K.ord_key(b); });
    RepresentativeSet S;
    S.F = F;
    for (int32_t a4 : elems) {
        for (int32_t a6 : elems) {
            int32_t disc = K.add(K.scale(4, K.pow(a4, 3)), K.scale(27, K.mul(a6, a6)));
            if (disc == 0) continue;
            ClassRep rep = canonical_class_rep(F, a4, a6);
            if (rep.a4 == a4 && rep.a6 == a6) S.curves.emplace_back(F, a4, a6);
        }
    }
    return S;
}

int RepresentativeSet::index_of(const CurveE& raw) const {
    ClassRep rep = canonical_class_rep(F, raw.a4(), raw.a6());
    for (int i = 0; i < (int)curves.size(); ++i)
        if (curves[i].a4() == rep.a4 && curves[i].a6() == rep.a6) return i;
    throw CheckError("class representative missing from S (impossible for exhaustive S)");
}

int64_t torsion_field_degree(const CurveE& E, int64_t M, int64_t cap_field, int k_max) {
    const Ext& K = *E.field();
    if (gcd64(M, K.q()) != 1) throw ParamError("torsion level must be coprime to the characteristic");
    if (M == 1) return K.k();
    for (int i = 1; i < K.k(); ++i)
        if (K.coeff(E.a4(), i) != 0 || K.coeff(E.a6(), i) != 0)
            throw ParamError("torsion_field_degree supports prime-field coefficients only");
    int64_t a4c = K.coeff(E.a4(), 0), a6c = K.coeff(E.a6(), 0);
    for (int kp = K.k(); kp <= k_max; kp += K.k()) {
        // field size guard before construction
        double sz = 1;
        for (int i = 0; i < kp; ++i) {
            sz *= (double)K.q();
            if (sz > (double)cap_field) break;
        }
        if (sz > (double)cap_field)
            throw CapError("torsion field degree search exceeded the field cap");
        ExtPtr F2 = make_extension(K.q(), kp, cap_field);
        CurveE E2(F2, F2->from_int(a4c), F2->from_int(a6c));
        if (E2.torsion_full(M)) {
            require((F2->order() - 1) % M == 0, "Weil constraint violated at torsion degree");
            require(E2.order() % (M * M) == 0, "torsion count constraint violated");
            return kp;
        }
    }
    throw CapError("torsion field degree not found below k_max");
}

} // namespace isotower
