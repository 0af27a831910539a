#include "isotower/volcano.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace isotower {

DepthDecomposition gen_volcano(int64_t l, CraterSpec crater, int D) {
    if (l < 2) throw ParamError("volcano degree parameter must be >= 2");
    if (crater.size < 1 || D < 0) throw ParamError("invalid crater spec");
    DepthDecomposition out;
    out.frontier = D;
    Digraph& g = out.g;
    std::vector<int> layer;
    for (int64_t i = 0; i < crater.size; ++i) {
        layer.push_back(g.add_vertex("c" + std::to_string(i)));
        out.depth.push_back(0);
    }
    if (crater.cycle)
        for (int64_t i = 0; i < crater.size; ++i)
            g.add_edge(layer[i], layer[(i + 1) % crater.size]);
    // descend: crater vertices spawn l (cycle) or l+1 (isolated) children,
    // deeper vertices spawn l; every child also gets its ascending edge
    for (int d = 1; d <= D; ++d) {
        std::vector<int> next;
        for (int v : layer) {
            int64_t kids = (d == 1) ? (crater.cycle ? l : l + 1) : l;
            for (int64_t i = 0; i < kids; ++i) {
                int w = g.add_vertex("d" + std::to_string(d) + "_" + std::to_string(next.size()));
                out.depth.push_back(d);
                g.add_edge(v, w);
                g.add_edge(w, v);
                next.push_back(w);
            }
        }
        layer = std::move(next);
    }
    return out;
}

ColoredGraph gen_tectonic_crater(const TectonicParams& prm) {
    auto [r, s, t, c] = prm;
    if (r < 1 || s < 1 || t < 1 || c < 1) throw ParamError("tectonic parameters must be positive");
    if (c > r || gcd64(c, r) != 1)
        throw ParamError("tectonic parameter c must lie in [1, r] and be coprime to r");
    int64_t rs = r * s;
    // blue: (i,j) -> (i+1, j); green: (i,j) -> (i+a, j+1). The translation
    // parameter must satisfy c*t*a = s (mod rs) with the paths meeting first
    // after exactly s blue steps; candidates are validated by the recognizer.
    auto build = [&](int64_t a) {
        ColoredGraph out;
        auto id = [&](int64_t i, int64_t j) { return (int)(i * t + j); };
        for (int64_t i = 0; i < rs; ++i)
            for (int64_t j = 0; j < t; ++j) out.g.add_vertex("v" + std::to_string(id(i, j)));
        for (int64_t i = 0; i < rs; ++i)
            for (int64_t j = 0; j < t; ++j) {
                out.g.add_edge(id(i, j), id((i + 1) % rs, j), "blue");
                out.color.push_back(EdgeColor::Blue);
                out.g.add_edge(id(i, j), id((i + a) % rs, (j + 1) % t), "green");
                out.color.push_back(EdgeColor::Green);
            }
        return out;
    };
    for (int64_t a = 0; a < rs; ++a) {
        if (((c % rs) * (t % rs) % rs) * (a % rs) % rs != s % rs) continue;
        ColoredGraph out = build(a);
        RecognizeResult check = recognize_tectonic_crater(out);
        if (check.yes && check.tectonic && *check.tectonic == prm) return out;
    }
    throw ParamError("no translation model realizes these tectonic parameters");
}

DepthDecomposition gen_tectonic_volcano(int64_t l, const TectonicParams& prm, int D,
                                        ColoredGraph* crater_out) {
    if (l < 2) throw ParamError("volcano degree parameter must be >= 2");
    ColoredGraph cr = gen_tectonic_crater(prm);
    DepthDecomposition out;
    out.frontier = D;
    out.g = cr.g;
    out.depth.assign(out.g.nv, 0);
    std::vector<int> layer(out.g.nv);
    std::iota(layer.begin(), layer.end(), 0);
    for (int d = 1; d <= D; ++d) {
        std::vector<int> next;
        for (int v : layer) {
            int64_t kids = (d == 1) ? l - 1 : l;
            for (int64_t i = 0; i < kids; ++i) {
                int w = out.g.add_vertex("d" + std::to_string(d) + "_" + std::to_string(next.size()));
                out.depth.push_back(d);
                out.g.add_edge(v, w);
                out.g.add_edge(w, v);
                next.push_back(w);
            }
        }
        layer = std::move(next);
    }
    if (crater_out) *crater_out = std::move(cr);
    return out;
}

Digraph double_intertwine(const Digraph& Z) {
    Digraph out;
    for (int v = 0; v < Z.nv; ++v) {
        out.add_vertex("+" + (Z.vlabel[v].empty() ? std::to_string(v) : Z.vlabel[v]));
        out.add_vertex("-" + (Z.vlabel[v].empty() ? std::to_string(v) : Z.vlabel[v]));
    }
    for (auto& e : Z.edges) {
        out.add_edge(2 * e.src, 2 * e.dst);         // ++
        out.add_edge(2 * e.src, 2 * e.dst + 1);     // +-
        out.add_edge(2 * e.src + 1, 2 * e.dst);     // -+
        out.add_edge(2 * e.src + 1, 2 * e.dst + 1); // --
    }
    return out;
}

// -------------------------------------------------------------- recognizers

RecognizeResult recognize_crater(const Digraph& X) {
    RecognizeResult res;
    if (X.ne() == 0) {
        res.yes = true;
        res.reason = "totally disconnected (isolated crater)";
        return res;
    }
    // connected single directed cycle: every in/out degree 1, one weak component
    for (int v = 0; v < X.nv; ++v) {
        if ((int)X.out_edges()[v].size() != 1 || (int)X.in_edges()[v].size() != 1) {
            res.reason = "vertex " + std::to_string(v) + " does not have in/out degree 1";
            return res;
        }
    }
    if (components(X, ConnMode::Weak).count != 1) {
        res.reason = "cycle graph must be connected";
        return res;
    }
    res.yes = true;
    res.reason = "directed cycle of length " + std::to_string(X.nv);
    return res;
}

namespace {

// peel D layers of out-degree-1 leaves; returns the depth map or an error
std::optional<std::string> peel_layers(const Digraph& X, int D, std::vector<int>& depth) {
    depth.assign(X.nv, 0);
    std::vector<bool> alive(X.nv, true);
    std::vector<int> outdeg(X.nv, 0);
    for (auto& e : X.edges) outdeg[e.src]++;
    for (int d = D; d >= 1; --d) {
        std::vector<int> layer;
        for (int v = 0; v < X.nv; ++v)
            if (alive[v] && outdeg[v] == 1) layer.push_back(v);
        if (layer.empty()) return "no frontier layer found at depth " + std::to_string(d);
        for (int v : layer) {
            alive[v] = false;
            depth[v] = d;
        }
        std::fill(outdeg.begin(), outdeg.end(), 0);
        for (auto& e : X.edges)
            if (alive[e.src] && alive[e.dst]) outdeg[e.src]++;
    }
    return std::nullopt;
}

std::string validate_volcano_layers(const Digraph& X, int64_t l, int D,
                                    const std::vector<int>& depth, bool crater_is_cycle,
                                    bool tectonic) {
    // edge layering and per-vertex degree counts with frontier exemption
    for (auto& e : X.edges) {
        int a = depth[e.src], b = depth[e.dst];
        if (a == 0 && b == 0) continue;
        if (a - b != 1 && b - a != 1)
            return "edge between depths " + std::to_string(a) + " and " + std::to_string(b);
    }
    for (int v = 0; v < X.nv; ++v) {
        int up = 0, down = 0, flat = 0;
        for (int e : X.out_edges()[v]) {
            int d = depth[X.edges[e].dst];
            if (d == depth[v]) ++flat;
            else if (d == depth[v] + 1) ++down;
            else ++up;
        }
        if (depth[v] == 0) {
            int want_flat = tectonic ? 2 : (crater_is_cycle ? 1 : 0);
            int want_down;
            if (tectonic) want_down = (int)l - 1;
            else want_down = crater_is_cycle ? (int)l : (int)l + 1;
            if (D == 0) want_down = 0;
            if (flat != want_flat || down != want_down || up != 0)
                return "crater vertex " + std::to_string(v) + " has degrees flat=" +
                       std::to_string(flat) + " down=" + std::to_string(down);
        } else {
            int want_down = depth[v] == D ? 0 : (int)l;
            if (flat != 0 || up != 1 || down != want_down)
                return "depth-" + std::to_string(depth[v]) + " vertex " + std::to_string(v) +
                       " has degrees up=" + std::to_string(up) + " down=" + std::to_string(down);
        }
    }
    return "";
}

} // namespace

RecognizeResult recognize_volcano(const Digraph& X, int64_t l, int D) {
    RecognizeResult res;
    std::vector<int> depth;
    if (auto err = peel_layers(X, D, depth)) {
        res.reason = *err;
        return res;
    }
    // crater = remaining depth-0 part
    Digraph crater;
    std::vector<int> cmap(X.nv, -1);
    for (int v = 0; v < X.nv; ++v)
        if (depth[v] == 0) cmap[v] = crater.add_vertex();
    for (auto& e : X.edges)
        if (depth[e.src] == 0 && depth[e.dst] == 0) crater.add_edge(cmap[e.src], cmap[e.dst]);
    RecognizeResult cr = recognize_crater(crater);
    if (!cr.yes) {
        res.reason = "depth-0 part is not an abstract crater: " + cr.reason;
        return res;
    }
    bool cycle = crater.ne() > 0;
    std::string err = validate_volcano_layers(X, l, D, depth, cycle, false);
    if (!err.empty()) {
        res.reason = err;
        return res;
    }
    res.yes = true;
    res.reason = cycle ? "volcano with cycle crater" : "volcano with isolated crater";
    res.depth = depth;
    return res;
}

RecognizeResult recognize_tectonic_crater(const ColoredGraph& X) {
    RecognizeResult res;
    int n = X.g.nv;
    if (n == 0) {
        res.reason = "empty graph";
        return res;
    }
    // axiom (c): one blue/green in- and out-edge per vertex
    std::vector<int> B(n, -1), G(n, -1), Bin(n, 0), Gin(n, 0);
    for (int e = 0; e < X.g.ne(); ++e) {
        int s = X.g.edges[e].src, t = X.g.edges[e].dst;
        if (X.color[e] == EdgeColor::Blue) {
            if (B[s] != -1) {
                res.reason = "two blue out-edges at vertex " + std::to_string(s);
                return res;
            }
            B[s] = t;
            Bin[t]++;
        } else if (X.color[e] == EdgeColor::Green) {
            if (G[s] != -1) {
                res.reason = "two green out-edges at vertex " + std::to_string(s);
                return res;
            }
            G[s] = t;
            Gin[t]++;
        } else {
            res.reason = "uncolored edge";
            return res;
        }
    }
    for (int v = 0; v < n; ++v)
        if (B[v] < 0 || G[v] < 0 || Bin[v] != 1 || Gin[v] != 1) {
            res.reason = "vertex " + std::to_string(v) + " violates the one-per-color condition";
            return res;
        }
    // axiom (d): uniform cycle lengths
    auto cycle_len = [n](const std::vector<int>& P) -> int64_t {
        std::vector<int64_t> len(n, 0);
        int64_t common = -1;
        for (int v = 0; v < n; ++v) {
            int x = P[v];
            int64_t L = 1;
            while (x != v) {
                x = P[x];
                ++L;
            }
            if (common < 0) common = L;
            else if (common != L) return -1;
        }
        return common;
    };
    int64_t Lb = cycle_len(B), Lg = cycle_len(G);
    if (Lb < 0 || Lg < 0) {
        res.reason = "cycle lengths are not uniform";
        return res;
    }
    // powers of the two permutations
    auto powers = [n](const std::vector<int>& P, int64_t L) {
        std::vector<std::vector<int>> out(L + 1);
        out[0].resize(n);
        std::iota(out[0].begin(), out[0].end(), 0);
        for (int64_t i = 1; i <= L; ++i) {
            out[i].resize(n);
            for (int v = 0; v < n; ++v) out[i][v] = P[out[i - 1][v]];
        }
        return out;
    };
    auto Bp = powers(B, Lb), Gp = powers(G, Lg);
    // meets: all (alpha, beta) with B^alpha = G^beta pointwise
    int64_t s = -1, j = -1;
    std::set<std::pair<int64_t, int64_t>> meets;
    for (int64_t al = 1; al <= Lb; ++al)
        for (int64_t be = 1; be <= Lg; ++be)
            if (Bp[al % Lb] == Gp[be % Lg]) {
                meets.insert({al % Lb, be % Lg});
                if (s < 0) {
                    s = al;
                    j = be;
                }
            }
    if (s < 0) {
        res.reason = "blue and green paths never meet";
        return res;
    }
    if (Lb % s != 0) {
        res.reason = "meet step does not divide the blue cycle length";
        return res;
    }
    int64_t r = Lb / s;
    int64_t t = gcd64(Lg, j);
    int64_t c = j / t;
    if (r * t != Lg) {
        res.reason = "green cycle length is not r*t";
        return res;
    }
    if ((int64_t)n != r * s * t) {
        res.reason = "vertex count differs from r*s*t";
        return res;
    }
    // the meets must be exactly the multiples of (s, ct)
    std::set<std::pair<int64_t, int64_t>> expect;
    for (int64_t w = 1; w <= r; ++w) expect.insert({(w * s) % Lb, (w * j) % Lg});
    if (meets != expect) {
        res.reason = "meeting pattern is not generated by (s, c*t)";
        return res;
    }
    res.yes = true;
    res.tectonic = TectonicParams{r, s, t, c};
    res.reason = "tectonic crater (r,s,t,c)=(" + std::to_string(r) + "," + std::to_string(s) + "," +
                 std::to_string(t) + "," + std::to_string(c) + ")";
    return res;
}

RecognizeResult recognize_tectonic_crater_uncolored(const Digraph& X, int64_t cap) {
    RecognizeResult res;
    int n = X.nv;
    for (int v = 0; v < n; ++v)
        if ((int)X.out_edges()[v].size() != 2 || (int)X.in_edges()[v].size() != 2) {
            res.reason = "vertex degrees are not (2,2)";
            return res;
        }
    // assign each vertex's two out-edges to blue/green, respecting in-degrees
    std::vector<EdgeColor> color(X.ne(), EdgeColor::None);
    std::vector<int> bin(n, 0), gin(n, 0);
    int64_t explored = 0;
    std::function<bool(int)> dfs = [&](int v) -> bool {
        if (v == n) {
            ColoredGraph cg{X, color};
            RecognizeResult sub = recognize_tectonic_crater(cg);
            if (sub.yes) {
                res = sub;
                return true;
            }
            return false;
        }
        if (++explored > cap) throw CapError("tectonic coloring search exceeded cap");
        int e0 = X.out_edges()[v][0], e1 = X.out_edges()[v][1];
        for (int flip = 0; flip < 2; ++flip) {
            int be = flip ? e1 : e0, ge = flip ? e0 : e1;
            int bt = X.edges[be].dst, gt = X.edges[ge].dst;
            if (bin[bt] >= 1 || gin[gt] >= 1) continue;
            color[be] = EdgeColor::Blue;
            color[ge] = EdgeColor::Green;
            bin[bt]++;
            gin[gt]++;
            if (dfs(v + 1)) return true;
            bin[bt]--;
            gin[gt]--;
            color[be] = color[ge] = EdgeColor::None;
        }
        return false;
    };
    if (!dfs(0)) {
        if (res.reason.empty()) res.reason = "no admissible blue/green coloring";
        return res;
    }
    return res;
}

RecognizeResult recognize_tectonic_volcano(const Digraph& X, int64_t l, int D, int64_t cap) {
    RecognizeResult res;
    std::vector<int> depth;
    if (auto err = peel_layers(X, D, depth)) {
        res.reason = *err;
        return res;
    }
    Digraph crater;
    std::vector<int> cmap(X.nv, -1);
    for (int v = 0; v < X.nv; ++v)
        if (depth[v] == 0) cmap[v] = crater.add_vertex();
    for (auto& e : X.edges)
        if (depth[e.src] == 0 && depth[e.dst] == 0) crater.add_edge(cmap[e.src], cmap[e.dst]);
    RecognizeResult cr = recognize_tectonic_crater_uncolored(crater, cap);
    if (!cr.yes) {
        res.reason = "depth-0 part is not a tectonic crater: " + cr.reason;
        return res;
    }
    std::string err = validate_volcano_layers(X, l, D, depth, true, true);
    if (!err.empty()) {
        res.reason = err;
        return res;
    }
    res.yes = true;
    res.tectonic = cr.tectonic;
    res.depth = depth;
    res.reason = "tectonic volcano over " + cr.reason;
    return res;
}

RecognizeResult recognize_double_intertwinement(const Digraph& X, int64_t cap) {
    RecognizeResult res;
    int n = X.nv;
    if (n % 2 != 0) {
        res.reason = "odd vertex count";
        return res;
    }
    if (X.ne() % 4 != 0) {
        res.reason = "edge count is not a multiple of 4";
        return res;
    }
    // edge multiplicity map
    std::map<std::pair<int, int>, int64_t> mult;
    for (auto& e : X.edges) mult[{e.src, e.dst}]++;
    auto mu = [&](int a, int b) {
        auto it = mult.find({a, b});
        return it == mult.end() ? (int64_t)0 : it->second;
    };
    std::vector<int> partner(n, -1);
    int64_t explored = 0;
    // consistency of a newly paired (a, abar) against all settled pairs
    auto consistent = [&](int a, int abar) {
        for (int b = 0; b < n; ++b) {
            int bbar = partner[b];
            if (bbar < 0 || b > bbar) continue;
            int64_t m1 = mu(a, b), m2 = mu(a, bbar), m3 = mu(abar, b), m4 = mu(abar, bbar);
            if (!(m1 == m2 && m2 == m3 && m3 == m4)) return false;
            m1 = mu(b, a);
            m2 = mu(b, abar);
            m3 = mu(bbar, a);
            m4 = mu(bbar, abar);
            if (!(m1 == m2 && m2 == m3 && m3 == m4)) return false;
        }
        // self pair (loops)
        int64_t m1 = mu(a, a), m2 = mu(a, abar), m3 = mu(abar, a), m4 = mu(abar, abar);
        return m1 == m2 && m2 == m3 && m3 == m4;
    };
    std::function<bool()> dfs = [&]() -> bool {
        int a = -1;
        for (int v = 0; v < n; ++v)
            if (partner[v] < 0) {
                a = v;
                break;
            }
        if (a < 0) return true;
        for (int b = a + 1; b < n; ++b) {
            if (partner[b] >= 0) continue;
            if (X.out_edges()[a].size() != X.out_edges()[b].size() ||
                X.in_edges()[a].size() != X.in_edges()[b].size())
                continue;
            if (++explored > cap) throw CapError("intertwinement pairing search exceeded cap");
            partner[a] = b;
            partner[b] = a;
            if (consistent(a, b) && dfs()) return true;
            partner[a] = partner[b] = -1;
        }
        return false;
    };
    if (n > 0 && !dfs()) {
        res.reason = "no fixed-point-free involution with the 4-fold edge structure";
        return res;
    }
    // quotient and reconstruction check
    Digraph Z;
    std::vector<int> zid(n, -1);
    std::vector<int> reps;
    for (int v = 0; v < n; ++v)
        if (v < partner[v]) {
            zid[v] = zid[partner[v]] = Z.add_vertex(X.vlabel[v]);
            reps.push_back(v);
        }
    for (size_t i = 0; i < reps.size(); ++i) {
        int a = reps[i];
        for (size_t jj = 0; jj < reps.size(); ++jj) {
            int b = reps[jj];
            int64_t m = mu(a, b);
            for (int64_t x = 0; x < m; ++x) Z.add_edge(zid[a], zid[b]);
        }
    }
    // X must equal Z^{+-} under +v = rep, -v = partner(rep)
    Digraph R = double_intertwine(Z);
    std::map<std::pair<int, int>, int64_t> mr, mx;
    auto tois = [&](int v) {
        // map X vertex to the reconstruction index
        int rep = v < partner[v] ? v : partner[v];
        int sign = v < partner[v] ? 0 : 1;
        return 2 * zid[rep] + sign;
    };
    for (auto& e : R.edges) mr[{e.src, e.dst}]++;
    for (auto& e : X.edges) mx[{tois(e.src), tois(e.dst)}]++;
    if (mr != mx) {
        res.reason = "reconstruction from the quotient does not match";
        return res;
    }
    res.yes = true;
    res.pairing = partner;
    res.quotient = Z;
    res.reason = "double intertwinement of a " + std::to_string(Z.nv) + "-vertex graph";
    return res;
}

} // namespace isotower
