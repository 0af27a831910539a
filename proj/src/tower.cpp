#include "isotower/tower.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace isotower {

namespace {

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// |GL2(Z/m)| for any m >= 1 by multiplicativity over prime powers
int64_t gl2_order_any(int64_t m) {
    if (m == 1) return 1;
    int64_t r = 1;
    for (auto [p, e] : factorize(m)) r *= ipow(p, 4 * (e - 1)) * (p * p - 1) * (p * p - p);
    return r;
}

std::string pt_str(const CurveE& E, const Pt& P) { return E.encode_point(P); }

} // namespace

void TowerParams::validate() const {
    for (int64_t v : {q, l, p})
        if (!is_prime_i64(v)) throw ParamError("q, l, p must be prime (got " + std::to_string(v) + ")");
    if (q < 5) throw ParamError("q must be at least 5 (short Weierstrass models)");
    if (q == l || q == p || l == p)
        throw ParamError("q, l, p must be three distinct primes");
    if (N < 1) throw ParamError("N must be positive");
    if (gcd64(N, q * l * p) != 1) throw ParamError("N must be coprime to p, q and l");
    if (n_max < 0) throw ParamError("tower depth must be >= 0");
    if (k < 0) throw ParamError("field degree must be >= 1 (or 0 for auto)");
}

int auto_select_k(const TowerParams& prm) {
    prm.validate();
    int64_t M = prm.l * ipow(prm.p, prm.n_max) * prm.N;
    for (int k = 1; k <= 24; ++k) {
        double sz = 1;
        for (int i = 0; i < k; ++i) sz *= (double)prm.q;
        if (sz > (double)prm.cap_field)
            throw CapError("no field degree under the cap supports E[" + std::to_string(M) +
                           "] (reached k=" + std::to_string(k) + ")");
        int64_t Q = ipow(prm.q, k);
        if ((Q - 1) % M != 0) continue;
        ExtPtr F = make_extension(prm.q, k, prm.cap_field);
        // look for a supersingular curve with fully rational E[M]
        // standard curves over the subfield F_{q^2} cover every ss class up to twist
        for (int64_t jc = 0; jc < Q; ++jc) {
            int32_t j = (int32_t)jc;
            if (F->pow(j, prm.q * prm.q) != j) continue;
            std::vector<std::pair<int32_t, int32_t>> models;
            if (j == 0) {
                int64_t g6 = gcd64(6, Q - 1);
                for (int64_t i = 0; i < g6; ++i)
                    models.push_back({0, F->pow(F->generator(), i)});
            } else if (j == F->from_int(1728)) {
                int64_t g4 = gcd64(4, Q - 1);
                for (int64_t i = 0; i < g4; ++i)
                    models.push_back({F->pow(F->generator(), i), 0});
            } else {
                int32_t c = F->div(j, F->sub(F->from_int(1728), j));
                int32_t a4 = F->scale(3, c), a6 = F->scale(2, c);
                int32_t d = F->generator(); // a non-square
                models.push_back({a4, a6});
                models.push_back({F->mul(F->pow(d, 2), a4), F->mul(F->pow(d, 3), a6)});
            }
            for (auto [a4, a6] : models) {
                CurveE E(F, a4, a6);
                auto fr = frobenius_data(E);
                if (!fr.supersingular) continue;
                if (E.order() % (M * M) != 0) continue;
                if (E.torsion_full(M)) return k;
            }
        }
    }
    throw CapError("no suitable field degree found up to k=24");
}

// ---------------------------------------------------------------- Tower

Tower::Tower(TowerParams prm, BuildScope scope, std::vector<std::pair<std::string, std::string>> seeds)
    : prm_(prm) {
    prm_.validate();
    if (prm_.k == 0) prm_.k = auto_select_k(prm_);
    F_ = make_extension(prm_.q, prm_.k, prm_.cap_field);
    int64_t Q = F_->order();
    int64_t Mpart = ipow(prm_.p, prm_.n_max) * prm_.N;
    if ((Q - 1) % Mpart != 0)
        throw ParamError("p^n_max * N does not divide q^k - 1; no level structures exist");
    if ((Q - 1) % prm_.l != 0)
        throw ParamError("l does not divide q^k - 1; full E[l] cannot be rational");
    enumerate_scope(scope, seeds);
    if (classes_.empty()) throw CheckError("no participating curve classes in scope");
    // closure first (it can register classes), then basis normalization,
    // then voltages in the normalized bases
    std::vector<int> pending(classes_.size());
    for (size_t i = 0; i < pending.size(); ++i) pending[i] = (int)i;
    close_and_build_steps(pending);
    normalize_tate();
    compute_voltages();
    build_x0();
    // max |Aut| over the field: scope classes plus the special-j curves
    Cq_ = 2;
    auto consider = [&](const CurveE& E) {
        Cq_ = std::max<int64_t>(Cq_, (int64_t)E.automorphism_params().size());
    };
    for (auto& c : classes_) consider(c.E);
    consider(CurveE(F_, 0, F_->one()));                    // j = 0
    consider(CurveE(F_, F_->one(), 0));                    // j = 1728
}

bool Tower::participates(const CurveE& E) const {
    int64_t Mpart = ipow(prm_.p, prm_.n_max) * prm_.N;
    if (Mpart == 1) return true;
    if (E.order() % (Mpart * Mpart) != 0) return false;
    return E.torsion_full(Mpart);
}

int Tower::register_class(const CurveE& rep) {
    auto key = std::make_pair(rep.a4(), rep.a6());
    auto it = class_index_.find(key);
    if (it != class_index_.end()) return it->second;
    CurveClass c{rep, 0, false, 0, {}, {}, {}};
    auto fr = frobenius_data(rep);
    c.trace = fr.trace;
    c.ss = fr.supersingular;
    c.cm_disc = fr.cm_disc;
    int64_t B = ipow(prm_.p, prm_.n_max);
    c.basisN = prm_.N > 1 ? rep.torsion_basis(prm_.N)
                          : std::pair<Pt, Pt>{Pt::infinity(), Pt::infinity()};
    c.tate = B > 1 ? rep.torsion_basis(B) : std::pair<Pt, Pt>{Pt::infinity(), Pt::infinity()};
    int64_t MB = prm_.N * B;
    c.merge_basis = MB > 1 ? rep.torsion_basis(MB) : std::pair<Pt, Pt>{Pt::infinity(), Pt::infinity()};
    classes_.push_back(std::move(c));
    int idx = (int)classes_.size() - 1;
    class_index_[key] = idx;
    return idx;
}

namespace {
// the standard models realizing every class with j-invariant j (up to
// isomorphism): quadratic twists generically, quartic/sextic at 1728/0
std::vector<std::pair<int32_t, int32_t>> twist_models(const Ext& K, int32_t j) {
    int64_t Q = K.order();
    std::vector<std::pair<int32_t, int32_t>> models;
    if (j == 0) {
        int64_t g6 = gcd64(6, Q - 1);
        for (int64_t i = 0; i < g6; ++i) models.push_back({0, K.pow(K.generator(), i)});
    } else if (j == K.from_int(1728)) {
        int64_t g4 = gcd64(4, Q - 1);
        for (int64_t i = 0; i < g4; ++i) models.push_back({K.pow(K.generator(), i), 0});
    } else {
        int32_t c = K.div(j, K.sub(K.from_int(1728), j));
        int32_t a4 = K.scale(3, c), a6 = K.scale(2, c);
        int32_t d = K.generator(); // a non-square
        models.push_back({a4, a6});
        models.push_back({K.mul(K.pow(d, 2), a4), K.mul(K.pow(d, 3), a6)});
    }
    return models;
}
} // namespace

std::vector<CurveE> Tower::ss_class_candidates() const {
    const Ext& K = *F_;
    int64_t Q = K.order();
    std::vector<CurveE> out;
    // supersingular j-invariants live in F_{q^2}; scan that subfield
    for (int64_t jc = 0; jc < Q; ++jc) {
        int32_t j = (int32_t)jc;
        if (K.pow(j, prm_.q * prm_.q) != j) continue;
        auto models = twist_models(K, j);
        CurveE probe(F_, models[0].first, models[0].second);
        if (!frobenius_data(probe).supersingular) continue;
        for (auto [a4, a6] : models) out.emplace_back(F_, a4, a6);
    }
    return out;
}

std::vector<CurveE> Tower::full_class_candidates() const {
    const Ext& K = *F_;
    int64_t Q = K.order();
    std::vector<CurveE> out;
    for (int64_t jc = 0; jc < Q; ++jc)
        for (auto [a4, a6] : twist_models(K, (int32_t)jc)) out.emplace_back(F_, a4, a6);
    return out;
}

void Tower::enumerate_scope(BuildScope scope,
                            const std::vector<std::pair<std::string, std::string>>& seeds) {
    int64_t Q = F_->order();
    if (scope == BuildScope::Auto) {
        if (!seeds.empty()) scope = BuildScope::SeedComponents;
        else scope = Q <= 20000 ? BuildScope::Full : BuildScope::SsOnly;
    }
    closure_allowed_ = scope == BuildScope::SeedComponents;
    std::vector<CurveE> cands;
    switch (scope) {
        case BuildScope::Full:
            cands = full_class_candidates();
            scope_note_ = "full";
            break;
        case BuildScope::SsOnly:
            cands = ss_class_candidates();
            scope_note_ = "supersingular classes only";
            break;
        case BuildScope::SeedComponents: {
            scope_note_ = "components of given seed curves";
            for (auto& [s4, s6] : seeds) cands.emplace_back(F_, F_->decode(s4), F_->decode(s6));
            break;
        }
        default:
            throw ParamError("unresolved build scope");
    }
    // participation filter first (cheap, fanned out over candidates), then
    // canonicalize the survivors
    std::vector<char> keep(cands.size(), 0);
    parallel_for((int64_t)cands.size(), [&](int64_t lo, int64_t hi) {
        for (int64_t i = lo; i < hi; ++i) keep[i] = participates(cands[i]) ? 1 : 0;
    });
    std::set<std::pair<int64_t, int64_t>> repkeys; // ord_key pairs, for sorting
    std::map<std::pair<int64_t, int64_t>, std::pair<int32_t, int32_t>> reps;
    for (size_t i = 0; i < cands.size(); ++i) {
        if (!keep[i]) {
            if (scope == BuildScope::SeedComponents)
                throw ParamError("seed curve " + cands[i].encode() + " lacks rational E[p^n_max N]");
            continue;
        }
        ClassRep r = canonical_class_rep(F_, cands[i].a4(), cands[i].a6());
        auto key = std::make_pair(F_->ord_key(r.a4), F_->ord_key(r.a6));
        if (repkeys.insert(key).second) reps[key] = {r.a4, r.a6};
    }
    for (auto& [key, ab] : reps) register_class(CurveE(F_, ab.first, ab.second));
}

void Tower::normalize_tate() {
    int64_t B = ipow(prm_.p, prm_.n_max);
    if (B == 1) {
        xi_ = F_->one();
        return;
    }
    xi_ = weil_pairing(classes_[0].E, classes_[0].tate.first, classes_[0].tate.second, B);
    require(F_->multiplicative_order(xi_) == B, "tate pairing value is not primitive");
    // mu_B discrete log table
    std::map<int32_t, int64_t> mu;
    int32_t z = F_->one();
    for (int64_t i = 0; i < B; ++i) {
        mu[z] = i;
        z = F_->mul(z, xi_);
    }
    for (auto& c : classes_) {
        int32_t zeta = weil_pairing(c.E, c.tate.first, c.tate.second, B);
        auto it = mu.find(zeta);
        require(it != mu.end(), "tate pairing value outside mu_B");
        int64_t a = it->second;
        require(gcd64(a, B) == 1, "tate pairing value is not primitive");
        // <s, a^{-1} t> = xi
        int64_t ainv = 1;
        while ((ainv * a) % B != 1) ++ainv;
        c.tate.second = c.E.mul(ainv, c.tate.second);
        require(weil_pairing(c.E, c.tate.first, c.tate.second, B) == xi_,
                "tate basis normalization failed");
    }
}

const Tower::Dlp& Tower::dlp(int cls, int64_t level, const std::array<Pt, 2>& basis) const {
    auto key = std::make_pair(cls, level);
    auto it = dlp_cache_.find(key);
    if (it != dlp_cache_.end()) return it->second;
    Dlp d;
    d.basis = basis;
    const CurveE& E = classes_[cls].E;
    Pt rowP = Pt::infinity();
    for (int64_t i = 0; i < level; ++i) {
        Pt cur = rowP;
        for (int64_t j = 0; j < level; ++j) {
            if (!d.coords.count(cur)) d.coords[cur] = {i, j};
            cur = E.add(cur, basis[1]);
        }
        rowP = E.add(rowP, basis[0]);
    }
    return dlp_cache_.emplace(key, std::move(d)).first->second;
}

const Tower::Dlp& Tower::tate_dlp(int cls, int n) const {
    int64_t pn = ipow(prm_.p, n);
    int64_t key_level = -pn; // negative keys: tate-derived tables at level p^n
    auto key = std::make_pair(cls, key_level);
    auto it = dlp_cache_.find(key);
    if (it != dlp_cache_.end()) return it->second;
    const CurveE& E = classes_[cls].E;
    int64_t drop = ipow(prm_.p, prm_.n_max - n);
    std::array<Pt, 2> b{E.mul(drop, classes_[cls].tate.first), E.mul(drop, classes_[cls].tate.second)};
    Dlp d;
    d.basis = b;
    Pt rowP = Pt::infinity();
    for (int64_t i = 0; i < pn; ++i) {
        Pt cur = rowP;
        for (int64_t j = 0; j < pn; ++j) {
            if (!d.coords.count(cur)) d.coords[cur] = {i, j};
            cur = E.add(cur, b[1]);
        }
        rowP = E.add(rowP, b[0]);
    }
    return dlp_cache_.emplace(key, std::move(d)).first->second;
}

void Tower::close_and_build_steps(std::vector<int> pending) {
    int64_t B = ipow(prm_.p, prm_.n_max);
    int64_t merge_level = prm_.N * B;
    class_steps_.resize(classes_.size());
    std::deque<int> work(pending.begin(), pending.end());
    std::set<int> queued(pending.begin(), pending.end());
    while (!work.empty()) {
        int cls = work.front();
        work.pop_front();
        auto steps = isogeny_steps(classes_[cls].E, prm_.l, merge_level);
        for (auto& s : steps) {
            auto key = std::make_pair(s.target.a4(), s.target.a6());
            auto it = class_index_.find(key);
            int dst;
            if (it == class_index_.end()) {
                if (!closure_allowed_)
                    throw CheckError("isogeny left the enumerated scope: target " + s.target.encode());
                require(participates(s.target), "isogeny target does not participate (impossible)");
                dst = register_class(s.target);
                class_steps_.resize(classes_.size());
                work.push_back(dst);
                queued.insert(dst);
                if ((int64_t)classes_.size() > prm_.cap_graph)
                    throw CapError("class closure exceeded the graph cap");
            } else {
                dst = it->second;
                if (closure_allowed_ && !queued.count(dst)) {
                    work.push_back(dst);
                    queued.insert(dst);
                }
            }
            StepRec rec{cls, dst, std::move(s), {1, 0, 0, 1}};
            steps_.push_back(std::move(rec));
            class_steps_[cls].push_back((int)steps_.size() - 1);
        }
    }
}

void Tower::compute_voltages() {
    int64_t B = ipow(prm_.p, prm_.n_max);
    if (B == 1) return;
    for (auto& rec : steps_) {
        const auto& src = classes_[rec.src];
        const auto& d = tate_dlp(rec.dst, prm_.n_max);
        Pt fs = rec.step.eval(src.tate.first);
        Pt ft = rec.step.eval(src.tate.second);
        auto is = d.coords.find(fs);
        auto itt = d.coords.find(ft);
        require(is != d.coords.end() && itt != d.coords.end(),
                "voltage images not expressible in the target basis (upstream bug)");
        rec.volt = {is->second.first, is->second.second, itt->second.first, itt->second.second};
        int64_t det = ((rec.volt[0] * rec.volt[3] - rec.volt[1] * rec.volt[2]) % B + B) % B;
        require(det == prm_.l % B, "edge voltage determinant is not l");
    }
}

void Tower::build_x0() {
    auto X = std::make_shared<Digraph>();
    int64_t N = prm_.N;
    for (int cls = 0; cls < (int)classes_.size(); ++cls) {
        const CurveE& E = classes_[cls].E;
        std::vector<std::array<Pt, 2>> structures;
        if (N == 1) {
            structures.push_back({Pt::infinity(), Pt::infinity()});
        } else {
            const Dlp& d = dlp(cls, N, {classes_[cls].basisN.first, classes_[cls].basisN.second});
            // all bases (x1 B1 + y1 B2, x2 B1 + y2 B2) with invertible det
            std::vector<std::vector<Pt>> comb(N, std::vector<Pt>(N));
            Pt rowP = Pt::infinity();
            for (int64_t i = 0; i < N; ++i) {
                Pt cur = rowP;
                for (int64_t j = 0; j < N; ++j) {
                    comb[i][j] = cur;
                    cur = E.add(cur, d.basis[1]);
                }
                rowP = E.add(rowP, d.basis[0]);
            }
            for (int64_t x1 = 0; x1 < N; ++x1)
                for (int64_t y1 = 0; y1 < N; ++y1)
                    for (int64_t x2 = 0; x2 < N; ++x2)
                        for (int64_t y2 = 0; y2 < N; ++y2) {
                            if (gcd64(((x1 * y2 - y1 * x2) % N + N) % N, N) != 1) continue;
                            structures.push_back({comb[x1][y1], comb[x2][y2]});
                        }
        }
        for (auto& st : structures) {
            int v = X->add_vertex(classes_[cls].E.encode() + "#" + std::to_string(cls) + "|" +
                                  pt_str(E, st[0]) + "|" + pt_str(E, st[1]));
            x0_cls_.push_back(cls);
            x0_R_.push_back(st);
            x0_index_[{cls, st[0], st[1]}] = v;
        }
    }
    int64_t expected = (int64_t)classes_.size() * gl2_order_any(N);
    require((int64_t)X->nv == expected, "level-0 vertex count mismatch");
    for (int v = 0; v < X->nv; ++v) {
        int cls = x0_cls_[v];
        for (int si : class_steps_[cls]) {
            const StepRec& rec = steps_[si];
            Pt r1 = rec.step.eval(x0_R_[v][0]);
            Pt r2 = rec.step.eval(x0_R_[v][1]);
            auto it = x0_index_.find({rec.dst, r1, r2});
            require(it != x0_index_.end(), "level-0 edge target missing");
            std::ostringstream lab;
            lab << rec.src << '>' << rec.dst << "|kgen=" << pt_str(classes_[cls].E, rec.step.kernel.gen)
                << "|aut=" << F_->encode(rec.step.aut_u);
            X->add_edge(v, it->second, lab.str());
            x0_step_.push_back(si);
        }
    }
    X0_ = X;
}

GroupPtr Tower::gl2_group(int n) const {
    auto it = gl2_cache_.find(n);
    if (it != gl2_cache_.end()) return it->second;
    GroupPtr g;
    if (n == 0) g = std::make_shared<FiniteGroup>(FiniteGroup::cyclic(1));
    else g = std::make_shared<FiniteGroup>(FiniteGroup::gl2(prm_.p, n));
    gl2_cache_[n] = g;
    return g;
}

VoltageAssignment Tower::alpha(int n) const {
    if (n < 0 || n > prm_.n_max) throw ParamError("voltage level out of range");
    GroupPtr G = gl2_group(n);
    std::vector<int> volt(X0_->ne());
    int64_t pn = ipow(prm_.p, n);
    for (int e = 0; e < X0_->ne(); ++e) {
        if (n == 0) {
            volt[e] = 0;
            continue;
        }
        const auto& m = steps_[x0_step_[e]].volt;
        volt[e] = G->index_of_matrix({m[0] % pn, m[1] % pn, m[2] % pn, m[3] % pn});
    }
    return VoltageAssignment(X0_, G, volt);
}

Tower::DirectLevel Tower::build_direct(int n) const {
    if (n < 0 || n > prm_.n_max) throw ParamError("level out of range");
    int64_t M = ipow(prm_.p, n) * prm_.N;
    DirectLevel L;
    L.n = n;
    auto G = std::make_shared<Digraph>();
    int64_t expected = (int64_t)classes_.size() * gl2_order_any(M);
    if (expected > prm_.cap_graph)
        throw CapError("direct level-" + std::to_string(n) + " graph would have " +
                       std::to_string(expected) + " vertices (cap " + std::to_string(prm_.cap_graph) + ")");
    for (int cls = 0; cls < (int)classes_.size(); ++cls) {
        const CurveE& E = classes_[cls].E;
        if (M == 1) {
            int v = G->add_vertex(std::to_string(cls));
            L.cls.push_back(cls);
            L.basis.push_back({Pt::infinity(), Pt::infinity()});
            L.index[{cls, Pt::infinity(), Pt::infinity()}] = v;
            continue;
        }
        auto bas = E.torsion_basis(M);
        const Dlp& d = dlp(cls, M, {bas.first, bas.second});
        std::vector<std::vector<Pt>> comb(M, std::vector<Pt>(M));
        Pt rowP = Pt::infinity();
        for (int64_t i = 0; i < M; ++i) {
            Pt cur = rowP;
            for (int64_t j = 0; j < M; ++j) {
                comb[i][j] = cur;
                cur = E.add(cur, d.basis[1]);
            }
            rowP = E.add(rowP, d.basis[0]);
        }
        for (int64_t x1 = 0; x1 < M; ++x1)
            for (int64_t y1 = 0; y1 < M; ++y1)
                for (int64_t x2 = 0; x2 < M; ++x2)
                    for (int64_t y2 = 0; y2 < M; ++y2) {
                        if (gcd64(((x1 * y2 - y1 * x2) % M + M) % M, M) != 1) continue;
                        int v = G->add_vertex();
                        L.cls.push_back(cls);
                        L.basis.push_back({comb[x1][y1], comb[x2][y2]});
                        L.index[{cls, comb[x1][y1], comb[x2][y2]}] = v;
                    }
    }
    require((int64_t)G->nv == expected, "direct level vertex count mismatch");
    for (int v = 0; v < G->nv; ++v) {
        int cls = L.cls[v];
        for (int si : class_steps_[cls]) {
            const StepRec& rec = steps_[si];
            Pt q1 = rec.step.eval(L.basis[v][0]);
            Pt q2 = rec.step.eval(L.basis[v][1]);
            auto it = L.index.find({rec.dst, q1, q2});
            require(it != L.index.end(), "direct level edge target missing");
            G->add_edge(v, it->second);
            L.edge_step.push_back(si);
        }
    }
    L.G = G;
    return L;
}

std::vector<int> Tower::derived_vs_direct(int n, const DirectLevel* direct) const {
    DirectLevel local;
    if (!direct) {
        local = build_direct(n);
        direct = &local;
    }
    VoltageAssignment a = alpha(n);
    auto der = derived_graph(a);
    require(der.Y->nv == direct->G->nv, "derived/direct vertex counts differ");
    require(der.Y->ne() == direct->G->ne(), "derived/direct edge counts differ");
    int ng = a.G->order();
    int64_t pn = ipow(prm_.p, n);
    std::vector<int> phi(der.Y->nv, -1);
    std::vector<bool> hit(direct->G->nv, false);
    for (int v0 = 0; v0 < X0_->nv; ++v0) {
        int cls = x0_cls_[v0];
        const CurveE& E = classes_[cls].E;
        const Dlp& td = tate_dlp(cls, n);
        for (int g = 0; g < ng; ++g) {
            std::array<int64_t, 4> sg = n == 0 ? std::array<int64_t, 4>{0, 0, 0, 0}
                                               : a.G->matrix_of(g);
            Pt P = Pt::infinity(), Q = Pt::infinity();
            if (pn > 1) {
                P = E.add(E.mul(sg[0], td.basis[0]), E.mul(sg[1], td.basis[1]));
                Q = E.add(E.mul(sg[2], td.basis[0]), E.mul(sg[3], td.basis[1]));
            }
            Pt Q1 = E.add(x0_R_[v0][0], P);
            Pt Q2 = E.add(x0_R_[v0][1], Q);
            auto it = direct->index.find({cls, Q1, Q2});
            require(it != direct->index.end(), "bijection image missing in the direct graph");
            int dv = it->second;
            require(!hit[dv], "bijection is not injective");
            hit[dv] = true;
            phi[(size_t)v0 * ng + g] = dv;
        }
    }
    // edge correspondence: the direct edge from phi(src) with the same step
    // must land on phi(dst)
    std::map<std::pair<int, int>, int> direct_edge; // (vertex, step) -> dst
    for (int e = 0; e < direct->G->ne(); ++e)
        direct_edge[{direct->G->edges[e].src, direct->edge_step[e]}] = direct->G->edges[e].dst;
    for (int e = 0; e < der.Y->ne(); ++e) {
        int src = der.Y->edges[e].src, dst = der.Y->edges[e].dst;
        int base_edge = der.cov.emap[e];
        int si = x0_step_[base_edge];
        auto it = direct_edge.find({phi[src], si});
        require(it != direct_edge.end(), "derived edge has no direct counterpart");
        require(it->second == phi[dst], "derived and direct edges disagree");
    }
    return phi;
}

CoveringMap Tower::covering_between(const DirectLevel& upper, const DirectLevel& lower) const {
    require(upper.n == lower.n + 1, "covering_between expects consecutive levels");
    CoveringMap c;
    c.total = upper.G;
    c.base = lower.G;
    c.vmap.resize(upper.G->nv);
    c.emap.resize(upper.G->ne());
    for (int v = 0; v < upper.G->nv; ++v) {
        const CurveE& E = classes_[upper.cls[v]].E;
        Pt q1 = E.mul(prm_.p, upper.basis[v][0]);
        Pt q2 = E.mul(prm_.p, upper.basis[v][1]);
        auto it = lower.index.find({upper.cls[v], q1, q2});
        require(it != lower.index.end(), "[p]-image missing at the lower level");
        c.vmap[v] = it->second;
    }
    std::map<std::pair<int, int>, int> lower_edge;
    for (int e = 0; e < lower.G->ne(); ++e)
        lower_edge[{lower.G->edges[e].src, lower.edge_step[e]}] = e;
    for (int e = 0; e < upper.G->ne(); ++e) {
        auto it = lower_edge.find({c.vmap[upper.G->edges[e].src], upper.edge_step[e]});
        require(it != lower_edge.end(), "edge image missing at the lower level");
        c.emap[e] = it->second;
    }
    c.verify();
    return c;
}

Partition Tower::x0_components() const { return components(*X0_, ConnMode::Weak); }

VoltageAssignment Tower::alpha_on_component(int comp, int n) const {
    Partition part = x0_components();
    auto sub = std::make_shared<Digraph>();
    std::vector<int> vmap(X0_->nv, -1);
    for (int v = 0; v < X0_->nv; ++v)
        if (part.comp[v] == comp) vmap[v] = sub->add_vertex(X0_->vlabel[v]);
    GroupPtr G = gl2_group(n);
    std::vector<int> volt;
    int64_t pn = ipow(prm_.p, n);
    for (int e = 0; e < X0_->ne(); ++e) {
        int s = X0_->edges[e].src, t = X0_->edges[e].dst;
        if (vmap[s] < 0 || vmap[t] < 0) continue;
        sub->add_edge(vmap[s], vmap[t], X0_->elabel[e]);
        if (n == 0) {
            volt.push_back(0);
        } else {
            const auto& m = steps_[x0_step_[e]].volt;
            volt.push_back(G->index_of_matrix({m[0] % pn, m[1] % pn, m[2] % pn, m[3] % pn}));
        }
    }
    return VoltageAssignment(sub, G, volt);
}

int64_t Tower::preimage_component_count(int comp, int n) const {
    VoltageAssignment a = alpha_on_component(comp, n);
    return component_orbit_count(a, 0);
}

bool Tower::has_ss() const {
    for (auto& c : classes_)
        if (c.ss) return true;
    return false;
}

int64_t Tower::ss_component_count(int n) const {
    // components of the full supersingular subgraph at level n
    Partition part = x0_components();
    std::set<int> ss_comps;
    for (int v = 0; v < X0_->nv; ++v)
        if (classes_[x0_cls_[v]].ss) ss_comps.insert(part.comp[v]);
    int64_t total = 0;
    for (int comp : ss_comps) {
        // reduction type is constant per component (checked in classify)
        total += preimage_component_count(comp, n);
    }
    return total;
}

bool Tower::multiple_edges_at(int n) const {
    int64_t pn = ipow(prm_.p, n);
    std::map<std::pair<int, int>, std::vector<std::array<int64_t, 4>>> par;
    for (int e = 0; e < X0_->ne(); ++e) {
        const auto& m = steps_[x0_step_[e]].volt;
        par[{X0_->edges[e].src, X0_->edges[e].dst}].push_back(
            {m[0] % pn, m[1] % pn, m[2] % pn, m[3] % pn});
    }
    for (auto& [key, mats] : par) {
        std::sort(mats.begin(), mats.end());
        for (size_t i = 1; i < mats.size(); ++i)
            if (mats[i] == mats[i - 1]) return true;
    }
    return false;
}

LevelStats Tower::level_stats(int n) const {
    LevelStats s;
    s.n = n;
    int64_t M = ipow(prm_.p, n) * prm_.N;
    s.vertices = (int64_t)classes_.size() * gl2_order_any(M);
    s.edges = (int64_t)X0_->ne() * gl2_order_any(ipow(prm_.p, n));
    Partition part = x0_components();
    s.components = 0;
    for (int c = 0; c < part.count; ++c) s.components += preimage_component_count(c, n);
    s.multiple_edges = multiple_edges_at(n);
    return s;
}

std::vector<ComponentReport> Tower::classify_components() const {
    Partition part = x0_components();
    // strong connectivity must agree with weak connectivity on these graphs
    Partition strong = components(*X0_, ConnMode::Strong);
    require(strong.count == part.count, "strong and weak component counts differ at level 0");
    std::vector<ComponentReport> out(part.count);
    for (int c = 0; c < part.count; ++c) {
        ComponentReport& r = out[c];
        r.id = c;
        std::set<int> cls;
        for (int v = 0; v < X0_->nv; ++v)
            if (part.comp[v] == c) cls.insert(x0_cls_[v]);
        r.class_ids.assign(cls.begin(), cls.end());
        r.supersingular = classes_[*cls.begin()].ss;
        for (int id : r.class_ids)
            require(classes_[id].ss == r.supersingular,
                    "reduction type is not constant on a component");
        if (!r.supersingular) {
            r.cm_disc = classes_[*cls.begin()].cm_disc;
            for (int id : r.class_ids)
                require(classes_[id].cm_disc == r.cm_disc, "CM discriminant varies on a component");
            r.split = split_name(split_behavior(r.cm_disc, prm_.l));
        }
        for (int n = 0; n <= prm_.n_max; ++n) r.counts.push_back(preimage_component_count(c, n));
        if (!r.supersingular && prm_.n_max >= 1) {
            r.fitted_c = r.counts[1];
            r.c_ge_bound = r.fitted_c >= (prm_.p + 1) * prm_.p;
            int predicted = r.split == "split" ? 2 : 3;
            r.exponent_class = predicted;
            r.onset_reached = prm_.n_max >= 2;
            for (int n = 2; n <= prm_.n_max; ++n)
                if (r.counts[n] != r.counts[n - 1] * ipow(prm_.p, predicted)) r.onset_reached = false;
        }
    }
    return out;
}

Tower::GaloisAudit Tower::galois_audit(int comp, int n, int64_t deck_cap) const {
    GaloisAudit out;
    VoltageAssignment a = alpha_on_component(comp, n);
    int64_t count = component_orbit_count(a, 0, false);
    int64_t sheets = a.G->order();
    if (count > 1) {
        // d! > sheets certificate
        int64_t fact = 1;
        bool big = false;
        for (int64_t i = 2; i <= count; ++i) {
            fact *= i;
            if (fact > sheets) {
                big = true;
                break;
            }
        }
        if (big) {
            out.status = "not-galois";
            out.reason = "derived graph has " + std::to_string(count) + " components and d! > " +
                         std::to_string(sheets);
            return out;
        }
    }
    int64_t dsize = (int64_t)a.X->nv * sheets;
    if (dsize * std::max<int64_t>(1, a.X->ne()) > deck_cap * 16) {
        if (count == 1) {
            out.status = "galois";
            out.reason = "connected derived graph (voltage certificate); deck group is the voltage group";
            out.deck_order = sheets;
            out.fiber_transitive = true;
            return out;
        }
        out.status = "undecided";
        out.reason = "deck search over cap and no certificate applies";
        return out;
    }
    auto der = derived_graph(a);
    GaloisVerdict v = is_galois(der.cov, &a, deck_cap);
    out.deck_order = v.deck_count;
    if (v.status == GaloisVerdict::Yes) {
        out.status = "galois";
        // fiber transitivity of the deck action
        auto decks = deck_transformations(der.cov, deck_cap);
        std::set<int> orbit;
        for (auto& d : decks) orbit.insert(d.vperm[0]);
        out.fiber_transitive = (int64_t)orbit.size() == sheets;
        require(out.fiber_transitive, "galois cover without fiber transitivity");
        if (count == 1)
            require(v.deck_count == sheets, "connected derived cover with |Deck| != |G|");
    } else if (v.status == GaloisVerdict::No) {
        out.status = "not-galois";
    } else {
        out.status = "undecided";
    }
    out.reason = v.reason;
    return out;
}

std::optional<int> Tower::stabilization_m0(int comp) const {
    std::vector<int64_t> counts;
    for (int n = 0; n <= prm_.n_max; ++n) counts.push_back(preimage_component_count(comp, n));
    for (int m = 0; m <= prm_.n_max; ++m) {
        bool stable = true;
        for (int n = m + 1; n <= prm_.n_max; ++n)
            if (counts[n] != counts[m]) stable = false;
        if (stable && !multiple_edges_at(m)) return m;
    }
    return std::nullopt;
}

namespace {
// induced restriction of a covering to a total-side component and its image
CoveringMap restrict_covering(const CoveringMap& c, const std::vector<int>& total_comp,
                              int comp_id, DigraphPtr* total_out, DigraphPtr* base_out) {
    const Digraph& Y = *c.total;
    const Digraph& X = *c.base;
    std::vector<int> vmap_t(Y.nv, -1), vmap_b(X.nv, -1);
    auto T = std::make_shared<Digraph>();
    auto B = std::make_shared<Digraph>();
    for (int v = 0; v < Y.nv; ++v)
        if (total_comp[v] == comp_id) vmap_t[v] = T->add_vertex(Y.vlabel[v]);
    std::set<int> base_verts;
    for (int v = 0; v < Y.nv; ++v)
        if (vmap_t[v] >= 0) base_verts.insert(c.vmap[v]);
    for (int v = 0; v < X.nv; ++v)
        if (base_verts.count(v)) vmap_b[v] = B->add_vertex(X.vlabel[v]);
    std::vector<int> emap_b(X.ne(), -1);
    for (int e = 0; e < X.ne(); ++e) {
        if (vmap_b[X.edges[e].src] >= 0 && vmap_b[X.edges[e].dst] >= 0)
            emap_b[e] = B->add_edge(vmap_b[X.edges[e].src], vmap_b[X.edges[e].dst], X.elabel[e]);
    }
    CoveringMap r;
    r.total = *total_out = T;
    r.base = *base_out = B;
    for (int e = 0; e < Y.ne(); ++e) {
        int s = Y.edges[e].src, t = Y.edges[e].dst;
        if (vmap_t[s] < 0) continue;
        require(vmap_t[t] >= 0, "component is not edge-closed");
        T->add_edge(vmap_t[s], vmap_t[t], Y.elabel[e]);
        require(emap_b[c.emap[e]] >= 0, "restricted base edge missing");
        r.emap.push_back(emap_b[c.emap[e]]);
    }
    r.vmap.resize(T->nv);
    for (int v = 0; v < Y.nv; ++v)
        if (vmap_t[v] >= 0) r.vmap[vmap_t[v]] = vmap_b[c.vmap[v]];
    r.verify();
    return r;
}
} // namespace

Tower::CongruenceAudit Tower::congruence_deck_audit(int comp, int n, int m, int64_t deck_cap) const {
    require(n > m && m >= 0 && n <= prm_.n_max, "congruence audit needs n_max >= n > m >= 0");
    CongruenceAudit out{false, "", -1, ipow(prm_.p, 4 * (n - m))};
    VoltageAssignment an = alpha_on_component(comp, n);
    // quotient to level m
    int64_t pm = ipow(prm_.p, m);
    std::vector<int> ker;
    for (int g = 0; g < an.G->order(); ++g) {
        auto e = an.G->matrix_of(g);
        if (e[0] % pm == 1 % pm && e[1] % pm == 0 && e[2] % pm == 0 && e[3] % pm == 1 % pm)
            ker.push_back(g);
    }
    auto q = quotient_by_normal(an, ker);
    auto dn = derived_graph(an);
    auto dq = derived_graph(q.quotient);
    CoveringMap between = intermediate_covering(an, dn, q, dq);
    Partition part = components(*dn.Y, ConnMode::Weak);
    int cid = part.comp[dn.vertex(0, an.G->identity(), an.G->order())];
    DigraphPtr T, B;
    CoveringMap r = restrict_covering(between, part.comp, cid, &T, &B);
    require(r.sheets() == out.expected,
            "restricted covering sheet count differs from the congruence subgroup order");
    auto decks = deck_transformations(r, deck_cap);
    out.deck_order = (int64_t)decks.size();
    // the congruence subgroup acts by left multiplication; count the elements
    // stabilizing the component
    std::vector<int> comp_vs(dn.Y->nv, -1);
    int64_t stab = 0;
    for (int g : ker) {
        int img = dn.vertex(0, an.G->op(g, an.G->identity()), an.G->order());
        if (part.comp[img] == cid) ++stab;
    }
    (void)comp_vs;
    out.pass = out.deck_order == out.expected && stab == out.expected;
    std::ostringstream os;
    os << "deck order " << out.deck_order << ", expected " << out.expected
       << ", left-action stabilizer " << stab;
    out.detail = os.str();
    return out;
}

// ------------------------------------------------------------- Y-graphs

VoltageAssignment Tower::beta(int n) const {
    if (n < 0 || n > prm_.n_max) throw ParamError("level out of range");
    int64_t pn = ipow(prm_.p, n);
    auto U = std::make_shared<FiniteGroup>(FiniteGroup::units(pn));
    std::vector<int> volt(X0_->ne());
    // unit residue -> group index
    std::map<int64_t, int> uidx;
    for (int i = 0; i < U->order(); ++i) uidx[std::stoll(U->label(i))] = i;
    for (int e = 0; e < X0_->ne(); ++e) {
        const auto& mv = steps_[x0_step_[e]].volt;
        int64_t det = ((mv[0] * mv[3] - mv[1] * mv[2]) % pn + pn) % pn;
        if (pn == 1) det = 0;
        volt[e] = uidx.at(det);
    }
    return VoltageAssignment(X0_, U, volt);
}

DerivedGraph Tower::y_derived(int n) const { return derived_graph(beta(n)); }

Tower::YLevel Tower::y_direct(int n, bool rule_largest) const {
    if (n < 1 || n > prm_.n_max) throw ParamError("y_direct level out of range");
    int64_t pn = ipow(prm_.p, n);
    YLevel Y;
    Y.n = n;
    auto G = std::make_shared<Digraph>();
    std::vector<int64_t> units;
    for (int64_t a = 1; a < pn; ++a)
        if (a % prm_.p != 0) units.push_back(a);
    // lexicographically extreme matrix of each determinant
    std::map<int64_t, std::array<int64_t, 4>> sigma;
    auto scan = [&](std::array<int64_t, 4> e) {
        int64_t det = ((e[0] * e[3] - e[1] * e[2]) % pn + pn) % pn;
        if (det % prm_.p == 0) return;
        if (!sigma.count(det)) sigma[det] = e;
    };
    if (!rule_largest) {
        for (int64_t a = 0; a < pn; ++a)
            for (int64_t b = 0; b < pn; ++b)
                for (int64_t c = 0; c < pn; ++c)
                    for (int64_t d = 0; d < pn; ++d) scan({a, b, c, d});
    } else {
        for (int64_t a = pn - 1; a >= 0; --a)
            for (int64_t b = pn - 1; b >= 0; --b)
                for (int64_t c = pn - 1; c >= 0; --c)
                    for (int64_t d = pn - 1; d >= 0; --d) scan({a, b, c, d});
    }
    for (int v = 0; v < X0_->nv; ++v)
        for (int64_t a : units) {
            int id = G->add_vertex(X0_->vlabel[v] + "|zeta^" + std::to_string(a));
            Y.verts.push_back({v, a});
            Y.index[{v, a}] = id;
        }
    int64_t spot = 0;
    int32_t xin = F_->pow(xi_, ipow(prm_.p, prm_.n_max - n)); // primitive p^n-th root
    for (auto& [key, id] : Y.index) {
        auto [v, ares] = key;
        int cls = x0_cls_[v];
        const CurveE& E = classes_[cls].E;
        const Dlp& td = tate_dlp(cls, n);
        auto sg = sigma.at(ares);
        Pt P = E.add(E.mul(sg[0], td.basis[0]), E.mul(sg[1], td.basis[1]));
        Pt Q = E.add(E.mul(sg[2], td.basis[0]), E.mul(sg[3], td.basis[1]));
        for (int si : class_steps_[cls]) {
            const StepRec& rec = steps_[si];
            Pt r1 = rec.step.eval(x0_R_[v][0]);
            Pt r2 = rec.step.eval(x0_R_[v][1]);
            auto wit = x0_index_.find({rec.dst, r1, r2});
            require(wit != x0_index_.end(), "y_direct: X0 target missing");
            Pt fP = rec.step.eval(P);
            Pt fQ = rec.step.eval(Q);
            const Dlp& dd = tate_dlp(rec.dst, n);
            auto c1 = dd.coords.find(fP);
            auto c2 = dd.coords.find(fQ);
            require(c1 != dd.coords.end() && c2 != dd.coords.end(),
                    "y_direct: image coordinates missing");
            int64_t det = ((c1->second.first * c2->second.second -
                            c1->second.second * c2->second.first) %
                               pn +
                           pn) %
                          pn;
            require(det % prm_.p != 0, "y_direct: pairing value is not primitive");
            if (spot++ % 37 == 0) {
                // direct pairing spot-check of the determinant route
                int32_t z = weil_pairing(classes_[rec.dst].E, fP, fQ, pn);
                require(z == F_->pow(xin, det), "y_direct: pairing spot-check failed");
            }
            auto tit = Y.index.find({wit->second, det});
            require(tit != Y.index.end(), "y_direct: target vertex missing");
            G->add_edge(id, tit->second);
            Y.edge_step.push_back(si);
        }
    }
    Y.G = G;
    return Y;
}

void Tower::y_check_iso(int n) const {
    if (prm_.N <= Cq_)
        throw ParamError("the quotient-graph isomorphism check requires N > C_q = " +
                         std::to_string(Cq_));
    auto der = y_derived(n);
    VoltageAssignment bn = beta(n);
    const FiniteGroup& U = *bn.G;
    int nu = U.order();
    int64_t pn = ipow(prm_.p, n);
    std::vector<int> uidx(pn, -1);
    for (int g = 0; g < nu; ++g) uidx[std::stoll(U.label(g))] = g;
    std::vector<std::pair<int, int>> der_edges;
    der_edges.reserve(der.Y->ne());
    for (auto& e : der.Y->edges) der_edges.push_back({e.src, e.dst});
    std::sort(der_edges.begin(), der_edges.end());
    for (bool largest : {false, true}) {
        YLevel yd = y_direct(n, largest);
        require(yd.G->nv == der.Y->nv, "y graphs: vertex count mismatch");
        require(yd.G->ne() == der.Y->ne(), "y graphs: edge count mismatch");
        // identification (v, a) <-> derived (v, unit index of a)
        auto ident = [&](int w) {
            auto [v, a] = yd.verts[w];
            return v * nu + uidx[a];
        };
        std::vector<std::pair<int, int>> dir_edges;
        dir_edges.reserve(yd.G->ne());
        for (auto& e : yd.G->edges) dir_edges.push_back({ident(e.src), ident(e.dst)});
        std::sort(dir_edges.begin(), dir_edges.end());
        require(der_edges == dir_edges, "derived and direct quotient graphs differ");
    }
}

CoveringMap Tower::y_covering(const YLevel& upper, const YLevel& lower) const {
    require(upper.n > lower.n && lower.n >= 1, "y_covering expects higher over lower");
    int64_t pm = ipow(prm_.p, lower.n);
    CoveringMap c;
    c.total = upper.G;
    c.base = lower.G;
    c.vmap.resize(upper.G->nv);
    c.emap.resize(upper.G->ne());
    for (int v = 0; v < upper.G->nv; ++v) {
        auto [x0v, a] = upper.verts[v];
        c.vmap[v] = lower.index.at({x0v, a % pm});
    }
    std::map<std::pair<int, int>, int> lower_edge;
    for (int e = 0; e < lower.G->ne(); ++e)
        lower_edge[{lower.G->edges[e].src, lower.edge_step[e]}] = e;
    for (int e = 0; e < upper.G->ne(); ++e)
        c.emap[e] = lower_edge.at({c.vmap[upper.G->edges[e].src], upper.edge_step[e]});
    c.verify();
    return c;
}

std::vector<int64_t> Tower::y_component_counts() const {
    std::vector<int64_t> out;
    for (int n = 0; n <= prm_.n_max; ++n) {
        auto d = y_derived(n);
        out.push_back(components(*d.Y, ConnMode::Weak).count);
    }
    return out;
}

std::optional<int> Tower::y_stabilization_m0() const {
    auto counts = y_component_counts();
    for (int m = 0; m <= prm_.n_max; ++m) {
        bool stable = true;
        for (int n = m + 1; n <= prm_.n_max; ++n)
            if (counts[n] != counts[m]) stable = false;
        if (stable) return m;
    }
    return std::nullopt;
}

Tower::YDeckAudit Tower::y_deck_audit(int n, int m, int64_t deck_cap) const {
    require(n > m && m >= 1 && n <= prm_.n_max, "y deck audit needs n_max >= n > m >= 1");
    YDeckAudit out{false, "", -1, ipow(prm_.p, n - m), false};
    YLevel yn = y_direct(n), ym = y_direct(m);
    CoveringMap c = y_covering(yn, ym);
    Partition part = components(*yn.G, ConnMode::Weak);
    int root = yn.index.at({0, 1});
    DigraphPtr T, B;
    CoveringMap r = restrict_covering(c, part.comp, part.comp[root], &T, &B);
    require(r.sheets() == out.expected, "y covering sheet count is not p^{n-m}");
    // multiple edges would break unique edge lifting in the deck argument
    std::map<std::pair<int, int>, int> mult;
    for (auto& e : B->edges) mult[{e.src, e.dst}]++;
    for (auto& [k, v] : mult)
        require(v == 1, "base Y graph has multiple edges; raise N above C_q");
    auto decks = deck_transformations(r, deck_cap);
    out.deck_order = (int64_t)decks.size();
    std::vector<std::vector<int>> perms;
    for (auto& d : decks) perms.push_back(d.vperm);
    if (out.deck_order == out.expected) {
        FiniteGroup D = FiniteGroup::from_permutations(perms);
        for (int g = 0; g < D.order(); ++g)
            if (D.element_order(g) == D.order()) {
                out.cyclic = true;
                break;
            }
    }
    out.pass = out.deck_order == out.expected && out.cyclic;
    std::ostringstream os;
    os << "deck order " << out.deck_order << " (expected " << out.expected << "), "
       << (out.cyclic ? "cyclic" : "not shown cyclic");
    out.detail = os.str();
    return out;
}

int64_t Tower::y_component_bound(int n) const {
    int64_t pn = ipow(prm_.p, n);
    if (pn == 1) return 1;
    // smallest u >= 0 with l^u = 1 mod N
    int64_t u = 0;
    if (prm_.N > 1) u = order_mod(prm_.l % prm_.N, prm_.N);
    int64_t s = pow_mod(prm_.l, 2 * u, pn);
    if (u == 0) s = 1;
    return euler_phi(pn) / order_mod(s, pn);
}

// --------------------------------------------------- ordinary seed scan

std::vector<OrdinarySeed> find_ordinary_seeds(const ExtPtr& F, int64_t l, int64_t p, int64_t N,
                                              int n_max, int max_seeds, int64_t scan_curve_cap) {
    const Ext& K = *F;
    int64_t Q = K.order();
    int64_t M = ipow(p, n_max) * N;
    int64_t full = l * M;
    require((Q - 1) % full == 0, "E[l p^n N] cannot be rational over this field");
    std::vector<OrdinarySeed> out;
    std::set<std::pair<int32_t, int32_t>> seen;
    // elements in canonical order
    std::vector<int32_t> elems(Q);
    for (int64_t i = 0; i < Q; ++i) elems[i] = (int32_t)i;
    std::sort(elems.begin(), elems.end(),
              [&K](int32_t a, int32_t b) { return K.ord_key(a) < K.ord_key(b); });
    int64_t scanned = 0;
    for (int32_t a4 : elems) {
        for (int32_t a6 : elems) {
            if (++scanned > scan_curve_cap) return out;
            int32_t disc = K.add(K.scale(4, K.pow(a4, 3)), K.scale(27, K.mul(a6, a6)));
            if (disc == 0) continue;
            CurveE E(F, a4, a6);
            int64_t ord = E.order();
            int64_t t = Q + 1 - ord;
            if (t % K.q() == 0) continue;                       // supersingular
            if (ord % (full * full) != 0) continue;             // quick filter
            if (!E.torsion_full(full)) continue;
            ClassRep r = canonical_class_rep(F, a4, a6);
            if (!seen.insert({r.a4, r.a6}).second) continue;
            OrdinarySeed s;
            s.a4 = K.encode(r.a4);
            s.a6 = K.encode(r.a6);
            s.trace = t;
            s.cm_disc = fundamental_discriminant(t * t - 4 * Q);
            s.split = split_name(split_behavior(s.cm_disc, l));
            out.push_back(std::move(s));
            if ((int)out.size() >= max_seeds) return out;
        }
    }
    return out;
}

} // namespace isotower
