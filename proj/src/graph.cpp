#include "isotower/graph.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace isotower {

int Digraph::add_vertex(std::string label) {
    vlabel.push_back(std::move(label));
    adj_built_ = false;
    return nv++;
}

int Digraph::add_edge(int s, int t, std::string label) {
    if (s < 0 || s >= nv || t < 0 || t >= nv) throw ParamError("edge endpoint out of range");
    edges.push_back({s, t});
    elabel.push_back(std::move(label));
    adj_built_ = false;
    return (int)edges.size() - 1;
}

void Digraph::build_adj() const {
    out_.assign(nv, {});
    in_.assign(nv, {});
    for (int e = 0; e < (int)edges.size(); ++e) {
        out_[edges[e].src].push_back(e);
        in_[edges[e].dst].push_back(e);
    }
    adj_built_ = true;
}

const std::vector<std::vector<int>>& Digraph::out_edges() const {
    if (!adj_built_) build_adj();
    return out_;
}
const std::vector<std::vector<int>>& Digraph::in_edges() const {
    if (!adj_built_) build_adj();
    return in_;
}

namespace {
struct DSU {
    std::vector<int> p;
    explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};
} // namespace

Partition components(const Digraph& X, ConnMode mode) {
    Partition out;
    out.comp.assign(X.nv, -1);
    if (mode == ConnMode::Weak) {
        DSU d(X.nv);
        for (auto& e : X.edges) d.unite(e.src, e.dst);
        int next = 0;
        std::vector<int> name(X.nv, -1);
        for (int v = 0; v < X.nv; ++v) {
            int r = d.find(v);
            if (name[r] < 0) name[r] = next++;
            out.comp[v] = name[r];
        }
        out.count = next;
        return out;
    }
    // Tarjan SCC, iterative
    int n = X.nv;
    const auto& adj = X.out_edges();
    std::vector<int> idx(n, -1), low(n, 0), stk;
    std::vector<bool> on(n, false);
    int counter = 0, comps = 0;
    std::vector<int> scc(n, -1);
    struct Frame {
        int v;
        size_t ei;
    };
    for (int s = 0; s < n; ++s) {
        if (idx[s] != -1) continue;
        std::vector<Frame> call{{s, 0}};
        idx[s] = low[s] = counter++;
        stk.push_back(s);
        on[s] = true;
        while (!call.empty()) {
            auto& f = call.back();
            if (f.ei < adj[f.v].size()) {
                int w = X.edges[adj[f.v][f.ei++]].dst;
                if (idx[w] == -1) {
                    idx[w] = low[w] = counter++;
                    stk.push_back(w);
                    on[w] = true;
                    call.push_back({w, 0});
                } else if (on[w]) {
                    low[f.v] = std::min(low[f.v], idx[w]);
                }
            } else {
                int v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
                if (low[v] == idx[v]) {
                    for (;;) {
                        int w = stk.back();
                        stk.pop_back();
                        on[w] = false;
                        scc[w] = comps;
                        if (w == v) break;
                    }
                    ++comps;
                }
            }
        }
    }
    // rename components by first vertex
    std::vector<int> name(comps, -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (name[scc[v]] < 0) name[scc[v]] = next++;
        out.comp[v] = name[scc[v]];
    }
    out.count = next;
    return out;
}

// ---------------------------------------------------------------- groups

void FiniteGroup::finish_from_mul() {
    // identity
    id_ = -1;
    for (int e = 0; e < n_; ++e) {
        bool ok = true;
        for (int a = 0; a < n_ && ok; ++a)
            if (op(e, a) != a || op(a, e) != a) ok = false;
        if (ok) {
            id_ = e;
            break;
        }
    }
    require(id_ >= 0, "group table has no identity");
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b)
            if (op(a, b) == id_ && op(b, a) == id_) {
                inv_[a] = b;
                break;
            }
        require(inv_[a] >= 0, "group table has a non-invertible element");
    }
    if (label_.empty()) {
        label_.resize(n_);
        for (int i = 0; i < n_; ++i) label_[i] = std::to_string(i);
    }
}

int FiniteGroup::element_order(int a) const {
    int x = a, o = 1;
    while (x != id_) {
        x = op(x, a);
        ++o;
        if (o > n_) throw CheckError("element order exceeds group order");
    }
    return o;
}

bool FiniteGroup::check_axioms() const {
    if (n_ > 100) throw CapError("axiom check capped at order 100");
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            for (int c = 0; c < n_; ++c)
                if (op(op(a, b), c) != op(a, op(b, c))) return false;
    for (int a = 0; a < n_; ++a)
        if (op(a, inv_[a]) != id_ || op(inv_[a], a) != id_) return false;
    return true;
}

FiniteGroup table_group(std::vector<int32_t> mul, int n, std::vector<std::string> labels) {
    FiniteGroup g;
    g.n_ = n;
    g.mul_ = std::move(mul);
    g.label_ = std::move(labels);
    g.finish_from_mul();
    return g;
}

FiniteGroup FiniteGroup::cyclic(int m) {
    if (m < 1 || m > kMaxOrder) throw CapError("cyclic group order out of range");
    std::vector<int32_t> mul((size_t)m * m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) mul[(size_t)a * m + b] = (a + b) % m;
    return table_group(std::move(mul), m, {});
}

FiniteGroup FiniteGroup::symmetric(int n) {
    if (n < 1 || n > 5) throw ParamError("symmetric group supported for n <= 5");
    std::vector<std::vector<int>> perms;
    std::vector<int> idv(n);
    std::iota(idv.begin(), idv.end(), 0);
    std::vector<int> p = idv;
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return from_permutations(perms);
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& perms) {
    int n = (int)perms.size();
    if (n == 0) throw ParamError("empty permutation set");
    std::map<std::vector<int>, int> idx;
    for (int i = 0; i < n; ++i) {
        if (idx.count(perms[i])) throw ParamError("duplicate permutation");
        idx[perms[i]] = i;
    }
    std::vector<int32_t> mul((size_t)n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            // (a∘b)(x) = a(b(x))
            std::vector<int> c(perms[a].size());
            for (size_t x = 0; x < c.size(); ++x) c[x] = perms[a][perms[b][x]];
            auto it = idx.find(c);
            if (it == idx.end()) throw ParamError("permutation set not closed under composition");
            mul[(size_t)a * n + b] = it->second;
        }
    return table_group(std::move(mul), n, {});
}

FiniteGroup FiniteGroup::gl2(int64_t p, int n) {
    int64_t m = 1;
    for (int i = 0; i < n; ++i) m *= p;
    std::vector<std::array<int64_t, 4>> mats;
    for (int64_t a = 0; a < m; ++a)
        for (int64_t b = 0; b < m; ++b)
            for (int64_t c = 0; c < m; ++c)
                for (int64_t d = 0; d < m; ++d)
                    if (gcd64(((a * d - b * c) % m + m) % m, m) == 1)
                        mats.push_back({a, b, c, d});
    int N = (int)mats.size();
    if (N > kMaxOrder) throw CapError("GL2 table group order " + std::to_string(N) + " exceeds cap");
    std::vector<int32_t> matidx(m * m * m * m, -1);
    auto pack = [m](const std::array<int64_t, 4>& e) {
        return ((e[0] * m + e[1]) * m + e[2]) * m + e[3];
    };
    for (int i = 0; i < N; ++i) matidx[pack(mats[i])] = i;
    std::vector<int32_t> mul((size_t)N * N);
    for (int i = 0; i < N; ++i) {
        const auto& x = mats[i];
        for (int j = 0; j < N; ++j) {
            const auto& y = mats[j];
            std::array<int64_t, 4> z = {(x[0] * y[0] + x[1] * y[2]) % m, (x[0] * y[1] + x[1] * y[3]) % m,
                                        (x[2] * y[0] + x[3] * y[2]) % m, (x[2] * y[1] + x[3] * y[3]) % m};
            mul[(size_t)i * N + j] = matidx[pack(z)];
        }
    }
    std::vector<std::string> labels(N);
    for (int i = 0; i < N; ++i) {
        const auto& e = mats[i];
        labels[i] = std::to_string(e[0]) + "," + std::to_string(e[1]) + ";" + std::to_string(e[2]) +
                    "," + std::to_string(e[3]) + "@" + std::to_string(m);
    }
    FiniteGroup g = table_group(std::move(mul), N, std::move(labels));
    g.modulus_ = m;
    g.matidx_ = std::move(matidx);
    g.mats_ = std::move(mats);
    return g;
}

FiniteGroup FiniteGroup::units(int64_t m) {
    if (m < 1) throw ParamError("unit group modulus must be >= 1");
    std::vector<int64_t> elems;
    for (int64_t x = 0; x < m; ++x)
        if (gcd64(x, m) == 1) elems.push_back(x);
    if (m == 1) elems = {0}; // trivial group
    int n = (int)elems.size();
    std::map<int64_t, int> idx;
    for (int i = 0; i < n; ++i) idx[elems[i]] = i;
    std::vector<int32_t> mul((size_t)n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            mul[(size_t)a * n + b] = m == 1 ? 0 : idx[elems[a] * elems[b] % m];
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = std::to_string(elems[i]);
    FiniteGroup g = table_group(std::move(mul), n, std::move(labels));
    g.modulus_ = m;
    return g;
}

int FiniteGroup::index_of_matrix(const std::array<int64_t, 4>& e) const {
    if (matidx_.empty()) throw ParamError("not a matrix group");
    int64_t m = modulus_;
    auto red = [m](int64_t x) { return ((x % m) + m) % m; };
    int64_t packed = ((red(e[0]) * m + red(e[1])) * m + red(e[2])) * m + red(e[3]);
    int32_t i = matidx_[packed];
    if (i < 0) throw ParamError("matrix not invertible mod " + std::to_string(m));
    return i;
}

std::array<int64_t, 4> FiniteGroup::matrix_of(int idx) const {
    if (mats_.empty()) throw ParamError("not a matrix group");
    return mats_[idx];
}

GroupSub FiniteGroup::subgroup(std::vector<int> gens) const {
    std::set<int> have(gens.begin(), gens.end());
    have.insert(id_);
    std::deque<int> work(have.begin(), have.end());
    while (!work.empty()) {
        int a = work.front();
        work.pop_front();
        for (int g : gens) {
            for (int x : {op(a, g), op(g, a), inverse(a)}) {
                if (!have.count(x)) {
                    have.insert(x);
                    work.push_back(x);
                }
            }
        }
    }
    std::vector<int> embed(have.begin(), have.end());
    std::map<int, int> back;
    for (int i = 0; i < (int)embed.size(); ++i) back[embed[i]] = i;
    int n = (int)embed.size();
    std::vector<int32_t> mul((size_t)n * n);
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) {
        labels[i] = label_[embed[i]];
        for (int j = 0; j < n; ++j) {
            auto it = back.find(op(embed[i], embed[j]));
            require(it != back.end(), "subgroup closure failure");
            mul[(size_t)i * n + j] = it->second;
        }
    }
    return {table_group(std::move(mul), n, std::move(labels)), embed};
}

GroupQuot FiniteGroup::quotient(const std::vector<int>& normal_elems) const {
    std::set<int> H(normal_elems.begin(), normal_elems.end());
    H.insert(id_);
    // subgroup test
    for (int a : H)
        for (int b : H)
            if (!H.count(op(a, inverse(b)))) throw ParamError("quotient: given set is not a subgroup");
    // normality
    for (int g = 0; g < n_; ++g)
        for (int h : H)
            if (!H.count(op(op(g, h), inverse(g)))) throw ParamError("quotient: subgroup is not normal");
    std::vector<int> proj(n_, -1);
    int next = 0;
    std::vector<int> reps;
    for (int a = 0; a < n_; ++a) {
        if (proj[a] >= 0) continue;
        for (int h : H) proj[op(a, h)] = next;
        reps.push_back(a);
        ++next;
    }
    std::vector<int32_t> mul((size_t)next * next);
    std::vector<std::string> labels(next);
    for (int i = 0; i < next; ++i) {
        labels[i] = label_[reps[i]] + "H";
        for (int j = 0; j < next; ++j) mul[(size_t)i * next + j] = proj[op(reps[i], reps[j])];
    }
    return {table_group(std::move(mul), next, std::move(labels)), proj};
}

// ------------------------------------------------------------- coverings

void CoveringMap::verify() const {
    const Digraph& Y = *total;
    const Digraph& X = *base;
    require((int)vmap.size() == Y.nv && (int)emap.size() == Y.ne(), "covering map size mismatch");
    for (int e = 0; e < Y.ne(); ++e) {
        int b = emap[e];
        require(b >= 0 && b < X.ne(), "covering edge map out of range");
        require(X.edges[b].src == vmap[Y.edges[e].src] && X.edges[b].dst == vmap[Y.edges[e].dst],
                "covering map does not preserve incidence");
    }
    // local bijectivity on out- and in-stars
    for (int u = 0; u < Y.nv; ++u) {
        int bu = vmap[u];
        std::map<int, int> seen;
        for (int e : Y.out_edges()[u]) seen[emap[e]]++;
        for (int be : X.out_edges()[bu])
            require(seen[be] == 1, "covering not locally bijective on an out-star");
        require((int)Y.out_edges()[u].size() == (int)X.out_edges()[bu].size(),
                "out-star sizes differ");
        seen.clear();
        for (int e : Y.in_edges()[u]) seen[emap[e]]++;
        for (int be : X.in_edges()[bu]) require(seen[be] == 1, "covering not locally bijective on an in-star");
        require((int)Y.in_edges()[u].size() == (int)X.in_edges()[bu].size(), "in-star sizes differ");
    }
}

int CoveringMap::sheets() const {
    std::vector<int> cnt(base->nv, 0);
    for (int v : vmap) cnt[v]++;
    int s = base->nv ? cnt[0] : 0;
    for (int v = 0; v < base->nv; ++v)
        require(cnt[v] == s, "covering has non-uniform fiber sizes");
    return s;
}

std::vector<int> CoveringMap::fiber(int base_vertex) const {
    std::vector<int> out;
    for (int v = 0; v < total->nv; ++v)
        if (vmap[v] == base_vertex) out.push_back(v);
    return out;
}

VoltageAssignment::VoltageAssignment(DigraphPtr x, GroupPtr g, std::vector<int> v)
    : X(std::move(x)), G(std::move(g)), volt(std::move(v)) {
    if ((int)volt.size() != X->ne()) throw ParamError("voltage assignment must be total on edges");
    for (int w : volt)
        if (w < 0 || w >= G->order()) throw ParamError("voltage value out of group range");
}

DerivedGraph derived_graph(const VoltageAssignment& a) {
    const Digraph& X = *a.X;
    int n = a.G->order();
    auto Y = std::make_shared<Digraph>();
    Y->nv = X.nv * n;
    Y->vlabel.resize(Y->nv);
    for (int v = 0; v < X.nv; ++v)
        for (int g = 0; g < n; ++g)
            Y->vlabel[v * n + g] = X.vlabel[v] + "|" + a.G->label(g);
    Y->edges.reserve((size_t)X.ne() * n);
    Y->elabel.assign((size_t)X.ne() * n, "");
    std::vector<int> vmap((size_t)X.nv * n), emap((size_t)X.ne() * n);
    for (int e = 0; e < X.ne(); ++e) {
        for (int g = 0; g < n; ++g) {
            int s = X.edges[e].src * n + g;
            int t = X.edges[e].dst * n + a.G->op(g, a.volt[e]);
            Y->edges.push_back({s, t});
            emap[(size_t)e * n + g] = e;
        }
    }
    for (int v = 0; v < X.nv; ++v)
        for (int g = 0; g < n; ++g) vmap[(size_t)v * n + g] = v;
    DerivedGraph out;
    out.Y = Y;
    out.cov.total = Y;
    out.cov.base = a.X;
    out.cov.vmap = std::move(vmap);
    out.cov.emap = std::move(emap);
    return out;
}

int64_t component_orbit_count(const VoltageAssignment& a, int v, bool cross_check) {
    const Digraph& X = *a.X;
    if (components(X, ConnMode::Weak).count != 1) throw ParamError("orbit count requires a connected base");
    int n = a.G->order();
    std::vector<bool> seen((size_t)X.nv * n, false);
    std::deque<std::pair<int, int>> work;
    auto push = [&](int u, int g) {
        size_t i = (size_t)u * n + g;
        if (!seen[i]) {
            seen[i] = true;
            work.push_back({u, g});
        }
    };
    push(v, a.G->identity());
    while (!work.empty()) {
        auto [u, g] = work.front();
        work.pop_front();
        for (int e : X.out_edges()[u]) push(X.edges[e].dst, a.G->op(g, a.volt[e]));
        for (int e : X.in_edges()[u]) push(X.edges[e].src, a.G->op(g, a.G->inverse(a.volt[e])));
    }
    int64_t dv = 0;
    for (int g = 0; g < n; ++g)
        if (seen[(size_t)v * n + g]) ++dv;
    require(n % dv == 0, "orbit size does not divide the group order");
    int64_t count = n / dv;
    if (cross_check && (int64_t)X.nv * n <= 200000) {
        auto d = derived_graph(a);
        require(components(*d.Y, ConnMode::Weak).count == count,
                "orbit formula disagrees with direct component count");
    }
    return count;
}

// ------------------------------------------------------------------ decks

namespace {

// Propagate a deck candidate from f(root)=w across the (weakly traversed)
// component of root. Covering property: per base edge there is exactly one
// out-edge lift at each total vertex, and exactly one in-edge lift.
struct Propagator {
    const Digraph& Y;
    const CoveringMap& c;
    // per vertex: base edge id -> total edge id for out/in stars
    // built lazily as maps for sparse access
    std::vector<std::map<int, int>> out_by_base, in_by_base;

    explicit Propagator(const CoveringMap& cov) : Y(*cov.total), c(cov) {
        out_by_base.resize(Y.nv);
        in_by_base.resize(Y.nv);
        for (int u = 0; u < Y.nv; ++u) {
            for (int e : Y.out_edges()[u]) {
                if (out_by_base[u].count(c.emap[e]))
                    throw CheckError("not a covering: duplicate out-lift");
                out_by_base[u][c.emap[e]] = e;
            }
            for (int e : Y.in_edges()[u]) {
                if (in_by_base[u].count(c.emap[e])) throw CheckError("not a covering: duplicate in-lift");
                in_by_base[u][c.emap[e]] = e;
            }
        }
    }

    // returns false on contradiction
    bool extend(std::vector<int>& f, std::vector<int>& fe, int root, int w) const {
        if (c.vmap[w] != c.vmap[root]) return false;
        if (f[root] != -1) return f[root] == w;
        f[root] = w;
        std::deque<int> work{root};
        while (!work.empty()) {
            int u = work.front();
            work.pop_front();
            for (int e : Y.out_edges()[u]) {
                auto it = out_by_base[f[u]].find(c.emap[e]);
                if (it == out_by_base[f[u]].end()) return false;
                int e2 = it->second;
                if (fe[e] == -1) fe[e] = e2;
                else if (fe[e] != e2) return false;
                int x = Y.edges[e].dst, fx = Y.edges[e2].dst;
                if (f[x] == -1) {
                    f[x] = fx;
                    work.push_back(x);
                } else if (f[x] != fx) {
                    return false;
                }
            }
            for (int e : Y.in_edges()[u]) {
                auto it = in_by_base[f[u]].find(c.emap[e]);
                if (it == in_by_base[f[u]].end()) return false;
                int e2 = it->second;
                if (fe[e] == -1) fe[e] = e2;
                else if (fe[e] != e2) return false;
                int x = Y.edges[e].src, fx = Y.edges[e2].src;
                if (f[x] == -1) {
                    f[x] = fx;
                    work.push_back(x);
                } else if (f[x] != fx) {
                    return false;
                }
            }
        }
        return true;
    }
};

bool is_bijection(const std::vector<int>& f, int n) {
    std::vector<bool> hit(n, false);
    for (int x : f) {
        if (x < 0 || x >= n || hit[x]) return false;
        hit[x] = true;
    }
    return true;
}

} // namespace

std::vector<DeckTransform> deck_transformations(const CoveringMap& c, int64_t cap) {
    c.verify();
    const Digraph& Y = *c.total;
    Partition part = components(Y, ConnMode::Weak);
    std::vector<int> roots(part.count, -1);
    for (int v = 0; v < Y.nv; ++v)
        if (roots[part.comp[v]] < 0) roots[part.comp[v]] = v;
    Propagator prop(c);

    std::vector<DeckTransform> found;
    std::vector<int> f(Y.nv, -1), fe(Y.ne(), -1);
    int64_t explored = 0;

    std::function<void(int)> rec = [&](int ci) {
        if (ci == part.count) {
            if (is_bijection(f, Y.nv) && is_bijection(fe, Y.ne()))
                found.push_back({f, fe});
            return;
        }
        int r = roots[ci];
        for (int w = 0; w < Y.nv; ++w) {
            if (c.vmap[w] != c.vmap[r]) continue;
            if (++explored > cap) throw CapError("deck search exceeded cap");
            auto fsave = f;
            auto fesave = fe;
            if (prop.extend(f, fe, r, w)) rec(ci + 1);
            f = std::move(fsave);
            fe = std::move(fesave);
        }
    };
    rec(0);
    return found;
}

int64_t deck_count_undirected_loose(const CoveringMap& c, int64_t cap) {
    // Backtracking where an edge may match with reversed orientation.
    const Digraph& Y = *c.total;
    int64_t count = 0, explored = 0;

    // order vertices per component for deterministic DFS
    std::vector<int> f(Y.nv, -1);
    std::vector<int> fe(Y.ne(), -1);
    std::vector<bool> vused(Y.nv, false), eused(Y.ne(), false);

    // incident edge list (edge id, true if u is src)
    std::vector<std::vector<std::pair<int, bool>>> inc(Y.nv);
    for (int e = 0; e < Y.ne(); ++e) {
        inc[Y.edges[e].src].push_back({e, true});
        if (Y.edges[e].dst != Y.edges[e].src) inc[Y.edges[e].dst].push_back({e, false});
    }

    std::function<void(int)> dfs_vertex;
    std::function<void(int, size_t, std::function<void()>)> match_edges;

    match_edges = [&](int u, size_t ii, std::function<void()> done) {
        if (++explored > cap) throw CapError("loose deck search exceeded cap");
        if (ii == inc[u].size()) {
            done();
            return;
        }
        auto [e, usrc] = inc[u][ii];
        if (fe[e] != -1) {
            match_edges(u, ii + 1, done);
            return;
        }
        int a = Y.edges[e].src, b = Y.edges[e].dst;
        for (int e2 = 0; e2 < Y.ne(); ++e2) {
            if (eused[e2] || c.emap[e2] != c.emap[e]) continue;
            int a2 = Y.edges[e2].src, b2 = Y.edges[e2].dst;
            // forward or flipped match
            for (int flip = 0; flip < 2; ++flip) {
                int ia = flip ? b2 : a2, ib = flip ? a2 : b2;
                if (flip && a2 == b2) continue;
                bool ok = true;
                std::vector<std::pair<int, int>> setv;
                auto bind = [&](int x, int y) {
                    if (f[x] == -1) {
                        if (vused[y]) return false;
                        f[x] = y;
                        vused[y] = true;
                        setv.push_back({x, y});
                        return true;
                    }
                    return f[x] == y;
                };
                ok = bind(a, ia) && bind(b, ib);
                if (ok) {
                    fe[e] = e2;
                    eused[e2] = true;
                    match_edges(u, ii + 1, done);
                    fe[e] = -1;
                    eused[e2] = false;
                }
                for (auto [x, y] : setv) {
                    f[x] = -1;
                    vused[y] = false;
                }
            }
        }
    };

    dfs_vertex = [&](int u) {
        if (u == Y.nv) {
            ++count;
            return;
        }
        if (f[u] != -1) {
            match_edges(u, 0, [&] { dfs_vertex(u + 1); });
            return;
        }
        for (int w = 0; w < Y.nv; ++w) {
            if (vused[w] || c.vmap[w] != c.vmap[u]) continue;
            f[u] = w;
            vused[w] = true;
            match_edges(u, 0, [&] { dfs_vertex(u + 1); });
            f[u] = -1;
            vused[w] = false;
        }
    };
    dfs_vertex(0);
    return count;
}

GaloisVerdict is_galois(const CoveringMap& c, const VoltageAssignment* alpha, int64_t cap) {
    if (components(*c.base, ConnMode::Weak).count != 1)
        throw ParamError("is_galois requires a connected base");
    int sheets = c.sheets();
    if (alpha) {
        int d = components(*c.total, ConnMode::Weak).count;
        // d! > |G| shortcut, overflow-safe
        int64_t fact = 1;
        bool big = false;
        for (int i = 2; i <= d; ++i) {
            fact *= i;
            if (fact > sheets) {
                big = true;
                break;
            }
        }
        if (big) {
            GaloisVerdict v;
            v.status = GaloisVerdict::No;
            v.reason = "component count " + std::to_string(d) + " has d! > sheet count " +
                       std::to_string(sheets);
            return v;
        }
    }
    GaloisVerdict v;
    try {
        auto decks = deck_transformations(c, cap);
        v.deck_count = (int64_t)decks.size();
        if (v.deck_count == sheets) {
            v.status = GaloisVerdict::Yes;
            v.reason = "deck group order equals sheet count";
            std::vector<std::vector<int>> perms;
            for (auto& d : decks) perms.push_back(d.vperm);
            v.group = FiniteGroup::from_permutations(perms);
        } else {
            v.status = GaloisVerdict::No;
            v.reason = "deck group order " + std::to_string(v.deck_count) + " != sheet count " +
                       std::to_string(sheets);
        }
    } catch (const CapError& e) {
        v.status = GaloisVerdict::Undecided;
        v.reason = e.what();
    }
    return v;
}

bool transitivity_check(const VoltageAssignment& a) {
    if (components(*a.X, ConnMode::Weak).count != 1)
        throw ParamError("transitivity check requires a connected base");
    auto d = derived_graph(a);
    Partition part = components(*d.Y, ConnMode::Weak);
    int n = a.G->order();
    // the G-action moves (0, id) through (0, g); transitivity on components
    // is equivalent to this orbit meeting every component
    std::set<int> orbit;
    for (int g = 0; g < n; ++g) orbit.insert(part.comp[d.vertex(0, g, n)]);
    return (int)orbit.size() == part.count;
}

QuotientResult quotient_by_normal(const VoltageAssignment& a, const std::vector<int>& normal_elems) {
    auto q = a.G->quotient(normal_elems);
    std::vector<int> volt(a.volt.size());
    for (size_t e = 0; e < a.volt.size(); ++e) volt[e] = q.proj[a.volt[e]];
    QuotientResult out;
    out.quotient = VoltageAssignment(a.X, std::make_shared<FiniteGroup>(std::move(q.group)), volt);
    out.proj = std::move(q.proj);
    return out;
}

CoveringMap intermediate_covering(const VoltageAssignment& a, const DerivedGraph& da,
                                  const QuotientResult& q, const DerivedGraph& dq) {
    int n = a.G->order();
    int n2 = q.quotient.G->order();
    CoveringMap c;
    c.total = da.Y;
    c.base = dq.Y;
    c.vmap.resize(da.Y->nv);
    c.emap.resize(da.Y->ne());
    for (int v = 0; v < a.X->nv; ++v)
        for (int g = 0; g < n; ++g) c.vmap[(size_t)v * n + g] = v * n2 + q.proj[g];
    for (int e = 0; e < a.X->ne(); ++e)
        for (int g = 0; g < n; ++g) c.emap[(size_t)e * n + g] = e * n2 + q.proj[g];
    c.verify();
    return c;
}

} // namespace isotower
