#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "isotower/io.hpp"
#include "isotower/matgroup.hpp"
#include "isotower/tower.hpp"
#include "isotower/volcano.hpp"

namespace fs = std::filesystem;
using isotower::BuildScope;
using isotower::Tower;
using isotower::TowerParams;
using json = nlohmann::ordered_json;

namespace {

// exit codes: 0 ok, 1 theorem-check failure, 2 invalid parameters, 3 cap exceeded
constexpr int kExitCheck = 1, kExitParam = 2, kExitCap = 3;

struct CommonOpts {
    int64_t q = 5, l = 2, p = 3, N = 1;
    int n = 1, k = 0;
    std::string out_dir = ".";
    int64_t cap_field = isotower::Ext::kDefaultCap;
    int64_t cap_graph = 300000;
    uint64_t seed = 0;
    std::string scope = "auto";
    std::vector<std::string> seeds; // "a4/a6" curve coefficients
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--q", o.q, "base field characteristic");
    cmd->add_option("--l", o.l, "isogeny degree");
    cmd->add_option("--p", o.p, "tower prime");
    cmd->add_option("--N", o.N, "auxiliary level, coprime to pql");
    cmd->add_option("--n", o.n, "tower depth n_max");
    cmd->add_option("--k", o.k, "field degree (0 = auto)");
    cmd->add_option("--out-dir", o.out_dir, "output directory");
    cmd->add_option("--cap-field", o.cap_field, "field enumeration cap");
    cmd->add_option("--cap-graph", o.cap_graph, "graph size cap");
    cmd->add_option("--seed", o.seed, "seed for randomized property checks");
    cmd->add_option("--scope", o.scope, "auto|full|ss|seeds");
    cmd->add_option("--seed-curve", o.seeds, "seed curve a4/a6 (repeatable), e.g. 0,0,1/1,2,0");
}

TowerParams to_params(const CommonOpts& o) {
    TowerParams prm;
    prm.q = o.q;
    prm.l = o.l;
    prm.p = o.p;
    prm.N = o.N;
    prm.n_max = o.n;
    prm.k = o.k;
    prm.cap_field = o.cap_field;
    prm.cap_graph = o.cap_graph;
    return prm;
}

std::pair<BuildScope, std::vector<std::pair<std::string, std::string>>> to_scope(const CommonOpts& o) {
    std::vector<std::pair<std::string, std::string>> seeds;
    for (auto& s : o.seeds) {
        auto pos = s.find('/');
        if (pos == std::string::npos) throw isotower::ParamError("seed curve must be a4/a6");
        seeds.push_back({s.substr(0, pos), s.substr(pos + 1)});
    }
    if (o.scope == "auto") return {BuildScope::Auto, seeds};
    if (o.scope == "full") return {BuildScope::Full, seeds};
    if (o.scope == "ss") return {BuildScope::SsOnly, seeds};
    if (o.scope == "seeds") return {BuildScope::SeedComponents, seeds};
    throw isotower::ParamError("unknown scope: " + o.scope);
}

void write_file(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path().empty() ? "." : p.parent_path());
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << text;
    if (!f) throw isotower::CheckError("cannot write " + p.string());
}

json params_json(const Tower& T, const CommonOpts& o) {
    const TowerParams& prm = T.params();
    return json{{"q", prm.q},       {"k", prm.k},          {"l", prm.l},
                {"p", prm.p},       {"N", prm.N},          {"n_max", prm.n_max},
                {"scope", T.scope_note()}, {"seed", o.seed},
                {"cap_field", prm.cap_field}, {"cap_graph", prm.cap_graph}};
}

int cmd_build(const CommonOpts& o) {
    auto [scope, seeds] = to_scope(o);
    Tower T(to_params(o), scope, seeds);
    json out{{"schema", 1}, {"command", "build"}, {"params", params_json(T, o)}};
    out["field"] = {{"order", T.field()->order()}, {"modulus", T.field()->modulus_string()}};
    out["classes"] = json::array();
    for (auto& c : T.classes())
        out["classes"].push_back({{"curve", c.E.encode()},
                                  {"trace", c.trace},
                                  {"type", c.ss ? "supersingular" : "ordinary"},
                                  {"cm_disc", c.ss ? json(nullptr) : json(c.cm_disc)}});
    out["levels"] = json::array();
    for (int n = 0; n <= T.params().n_max; ++n) {
        auto st = T.level_stats(n);
        json jl{{"n", n},
                {"vertices", st.vertices},
                {"edges", st.edges},
                {"components", st.components},
                {"multiple_edges", st.multiple_edges}};
        if (st.vertices <= T.params().cap_graph) {
            auto L = T.build_direct(n);
            auto part = isotower::components(*L.G, isotower::ConnMode::Weak);
            isotower::DotOptions opt;
            opt.component = &part.comp;
            opt.vertex_labels = false;
            write_file(fs::path(o.out_dir) / ("level" + std::to_string(n) + ".dot"),
                       dot_export(*L.G, opt));
            jl["dot"] = "level" + std::to_string(n) + ".dot";
        } else {
            jl["dot"] = nullptr; // over cap; stats only
        }
        out["levels"].push_back(jl);
    }
    // the voltage assignment on the level-0 graph, as DOT and JSON
    {
        auto a = T.alpha(T.params().n_max);
        isotower::DotOptions opt;
        opt.voltage = &a.volt;
        write_file(fs::path(o.out_dir) / "x0_voltage.dot", dot_export(*a.X, opt));
        write_file(fs::path(o.out_dir) / "voltage.json",
                   isotower::json_graph(*a.X, &a.volt, a.G.get()) + "\n");
    }
    // level-0 reports
    out["components"] = json::array();
    for (auto& r : T.classify_components()) {
        json jc{{"id", r.id},
                {"classes", r.class_ids},
                {"type", r.supersingular ? "supersingular" : "ordinary"},
                {"counts", r.counts}};
        if (!r.supersingular) {
            jc["cm_disc"] = r.cm_disc;
            jc["split"] = r.split;
            jc["fitted_c"] = r.fitted_c;
            jc["exponent_class"] = r.exponent_class;
            jc["onset_reached"] = r.onset_reached;
            jc["c_ge_(p+1)p"] = r.c_ge_bound;
        }
        out["components"].push_back(jc);
    }
    write_file(fs::path(o.out_dir) / "manifest.json", out.dump(2) + "\n");
    std::cout << "wrote " << (fs::path(o.out_dir) / "manifest.json").string() << "\n";
    return 0;
}

int cmd_audit(const CommonOpts& o, const std::string& theorem) {
    auto [scope, seeds] = to_scope(o);
    Tower T(to_params(o), scope, seeds);
    json out{{"schema", 1}, {"command", "audit"}, {"params", params_json(T, o)}};
    json verdicts = json::object();
    bool failed = false;
    auto want = [&](const std::string& tag) { return theorem.empty() || theorem == tag; };
    auto record = [&](const std::string& tag, const std::string& status, json detail) {
        verdicts[tag] = {{"status", status}, {"detail", detail}};
        if (status == "fail") failed = true;
    };

    auto reports = T.classify_components();
    if (want("thm41")) {
        if (T.has_ss()) {
            json d = json::array();
            bool ok = true;
            for (int n = 0; n <= T.params().n_max; ++n) {
                int64_t got = T.ss_component_count(n);
                int64_t pn = 1;
                for (int i = 0; i < n; ++i) pn *= T.params().p;
                int64_t expect = isotower::unit_index(T.params().N * pn, T.params().l);
                d.push_back({{"n", n}, {"components", got}, {"unit_index", expect}});
                if (got != expect) ok = false;
            }
            record("thm41", ok ? "pass" : "fail", d);
        } else {
            record("thm41", "undecided", "no supersingular classes in scope");
        }
    }
    if (want("cor210")) {
        if (T.has_ss()) {
            int comp = -1;
            auto part = T.x0_components();
            for (int v = 0; v < T.X0()->nv && comp < 0; ++v)
                if (T.classes()[T.x0_class(v)].ss) comp = part.comp[v];
            auto a = T.galois_audit(comp, T.params().n_max);
            json d{{"component", comp}, {"status", a.status}, {"reason", a.reason},
                   {"deck_order", a.deck_order}};
            record("cor210", a.status == "galois" ? "pass"
                           : a.status == "undecided" ? "undecided" : "fail", d);
        } else {
            record("cor210", "undecided", "no supersingular classes in scope");
        }
    }
    if (want("thm32") || want("cor33")) {
        json d32 = json::array(), d33 = json::array();
        bool any_ord = false, ok32 = true, fired33 = false;
        for (auto& r : reports) {
            if (r.supersingular) continue;
            any_ord = true;
            d32.push_back({{"component", r.id}, {"cm_disc", r.cm_disc}, {"split", r.split},
                           {"counts", r.counts}, {"exponent_class", r.exponent_class},
                           {"onset_reached", r.onset_reached}, {"fitted_c", r.fitted_c}});
            if (T.params().n_max >= 2 && !r.onset_reached) ok32 = false;
            if (T.params().n_max >= 2) {
                int64_t d = r.counts[T.params().n_max] / r.counts[T.params().n_max - 1];
                int64_t p4 = 1;
                for (int i = 0; i < 4; ++i) p4 *= T.params().p;
                int64_t fact = 1;
                bool big = false;
                for (int64_t i = 2; i <= d; ++i) {
                    fact *= i;
                    if (fact > p4) { big = true; break; }
                }
                if (big) fired33 = true;
                d33.push_back({{"component", r.id}, {"components_above", d}, {"sheets", p4},
                               {"certificate_fires", big}});
            }
        }
        if (want("thm32"))
            record("thm32",
                   !any_ord ? "undecided"
                   : T.params().n_max < 2 ? "undecided"
                   : ok32 ? "pass"
                          : "undecided",
                   !any_ord ? json("no ordinary components in scope")
                   : T.params().n_max < 2 ? json("growth is only observable from depth 2")
                                          : d32);
        if (want("cor33"))
            record("cor33", !any_ord || T.params().n_max < 2 ? "undecided"
                           : fired33 ? "pass" : "fail",
                   d33);
    }
    if (want("cor45")) {
        if (T.has_ss() && T.params().n_max >= 1) {
            auto part = T.x0_components();
            int comp = -1;
            for (int v = 0; v < T.X0()->nv && comp < 0; ++v)
                if (T.classes()[T.x0_class(v)].ss) comp = part.comp[v];
            auto m0 = T.stabilization_m0(comp);
            if (!m0 || *m0 >= T.params().n_max) {
                record("cor45", "undecided",
                       m0 ? "stabilization only at n_max; no (n,m) pair available"
                          : "component counts/multiple edges did not stabilize below n_max");
            } else {
                auto a = T.congruence_deck_audit(comp, T.params().n_max, std::max(*m0, 1));
                record("cor45", a.pass ? "pass" : "fail",
                       json{{"m0", *m0}, {"detail", a.detail}});
            }
        } else {
            record("cor45", "undecided", "needs a supersingular component and n_max >= 1");
        }
    }
    if (want("prop53") || want("cor56")) {
        if (T.params().N > T.aut_bound_Cq() && T.params().n_max >= 1) {
            try {
                T.y_check_iso(T.params().n_max);
                if (want("prop53")) record("prop53", "pass", json{{"n", T.params().n_max}});
            } catch (const isotower::CheckError& e) {
                if (want("prop53")) record("prop53", "fail", e.what());
            }
            if (want("cor56")) {
                auto m0 = T.y_stabilization_m0();
                if (m0 && T.params().n_max > std::max(*m0, 1)) {
                    auto a = T.y_deck_audit(T.params().n_max, std::max(*m0, 1));
                    record("cor56", a.pass ? "pass" : "fail", json{{"m0", *m0}, {"detail", a.detail}});
                } else {
                    record("cor56", "undecided", "no (n,m) pair with n > m >= max(m0,1)");
                }
            }
        } else {
            std::string why = T.params().N <= T.aut_bound_Cq()
                                  ? "requires N > C_q = " + std::to_string(T.aut_bound_Cq())
                                  : "requires n_max >= 1";
            if (want("prop53")) record("prop53", "undecided", why);
            if (want("cor56")) record("cor56", "undecided", why);
        }
    }
    out["verdicts"] = verdicts;
    write_file(fs::path(o.out_dir) / "audit.json", out.dump(2) + "\n");
    std::cout << out.dump(2) << "\n";
    return failed ? kExitCheck : 0;
}

int cmd_y_tower(const CommonOpts& o) {
    auto [scope, seeds] = to_scope(o);
    Tower T(to_params(o), scope, seeds);
    json out{{"schema", 1}, {"command", "y-tower"}, {"params", params_json(T, o)}};
    out["C_q"] = T.aut_bound_Cq();
    out["pairing_root"] = T.field()->encode(T.pairing_root());
    auto counts = T.y_component_counts();
    out["component_counts"] = counts;
    json bounds = json::array();
    for (int n = 0; n <= T.params().n_max; ++n) bounds.push_back(T.y_component_bound(n));
    out["component_bounds"] = bounds;
    auto m0 = T.y_stabilization_m0();
    out["m0"] = m0 ? json(*m0) : json(nullptr);
    bool failed = false;
    int64_t base_comps = T.x0_components().count;
    out["level0_components"] = base_comps;
    for (int n = 0; n <= T.params().n_max; ++n)
        if (counts[n] > base_comps * (int64_t)bounds[n]) failed = true;
    if (T.params().N > T.aut_bound_Cq() && T.params().n_max >= 1) {
        try {
            T.y_check_iso(T.params().n_max);
            out["direct_vs_derived"] = "pass";
        } catch (const isotower::CheckError& e) {
            out["direct_vs_derived"] = std::string("fail: ") + e.what();
            failed = true;
        }
    } else {
        out["direct_vs_derived"] = "skipped (needs N > C_q)";
    }
    if (m0 && T.params().n_max > std::max(*m0, 1)) {
        auto a = T.y_deck_audit(T.params().n_max, std::max(*m0, 1));
        out["deck"] = {{"n", T.params().n_max}, {"m", std::max(*m0, 1)},
                       {"order", a.deck_order}, {"expected", a.expected},
                       {"cyclic", a.cyclic}, {"pass", a.pass}};
        if (!a.pass) failed = true;
    }
    write_file(fs::path(o.out_dir) / "y_tower.json", out.dump(2) + "\n");
    std::cout << out.dump(2) << "\n";
    return failed ? kExitCheck : 0;
}

int cmd_density(int64_t p, int64_t N, int64_t bound, const std::string& out_dir) {
    auto [gen, total] = isotower::generator_density(p, N, bound);
    double frac = total ? (double)gen / (double)total : 0.0;
    double theory = (double)isotower::euler_phi(p - 1) / (double)p;
    json out{{"schema", 1}, {"command", "density"}, {"p", p}, {"N", N}, {"bound", bound},
             {"generators", gen}, {"primes", total},
             {"fraction", frac},  {"theoretical", theory}};
    write_file(fs::path(out_dir) / "density.json", out.dump(2) + "\n");
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_volcano_gen(const std::string& kind, const std::string& params, int64_t l, int depth,
                    bool intertwine, const std::string& out_path) {
    using namespace isotower;
    Digraph g;
    std::vector<EdgeColor> colors;
    if (kind == "tectonic_crater" || kind == "tectonic_volcano") {
        TectonicParams prm;
        if (sscanf(params.c_str(), "%ld,%ld,%ld,%ld", &prm.r, &prm.s, &prm.t, &prm.c) != 4)
            throw ParamError("tectonic parameters must be r,s,t,c");
        if (kind == "tectonic_crater") {
            ColoredGraph cg = gen_tectonic_crater(prm);
            g = cg.g;
            colors = cg.color;
        } else {
            g = gen_tectonic_volcano(l, prm, depth).g;
        }
    } else if (kind == "volcano") {
        CraterSpec spec;
        char name[16];
        long sz;
        if (sscanf(params.c_str(), "%15[a-z](%ld)", name, &sz) != 2)
            throw ParamError("crater must be cycle(len) or isolated(count)");
        spec.cycle = std::string(name) == "cycle";
        spec.size = sz;
        g = gen_volcano(l, spec, depth).g;
    } else if (kind == "crater") {
        CraterSpec spec;
        char name[16];
        long sz;
        if (sscanf(params.c_str(), "%15[a-z](%ld)", name, &sz) != 2)
            throw ParamError("crater must be cycle(len) or isolated(count)");
        g = gen_volcano(l, {std::string(name) == "cycle", sz}, 0).g;
    } else {
        throw ParamError("unknown generator class: " + kind);
    }
    if (intertwine) {
        g = double_intertwine(g);
        colors.clear();
    }
    DotOptions opt;
    opt.vertex_labels = true;
    if (!colors.empty()) opt.colors = &colors;
    write_file(out_path, dot_export(g, opt));
    std::cout << "wrote " << out_path << " (" << g.nv << " vertices, " << g.ne() << " edges)\n";
    return 0;
}

int cmd_volcano_recognize(const std::string& cls, const std::string& in_path, int64_t l, int depth,
                          const std::string& out_dir) {
    using namespace isotower;
    std::ifstream f(in_path);
    if (!f) throw ParamError("cannot read " + in_path);
    std::stringstream ss;
    ss << f.rdbuf();
    ColoredGraph cg = dot_parse(ss.str());
    RecognizeResult r;
    if (cls == "crater") r = recognize_crater(cg.g);
    else if (cls == "volcano") r = recognize_volcano(cg.g, l, depth);
    else if (cls == "tectonic_crater") {
        bool colored = false;
        for (auto c : cg.color)
            if (c != EdgeColor::None) colored = true;
        r = colored ? recognize_tectonic_crater(cg) : recognize_tectonic_crater_uncolored(cg.g);
    } else if (cls == "tectonic_volcano") r = recognize_tectonic_volcano(cg.g, l, depth);
    else if (cls == "double_intertwinement") r = recognize_double_intertwinement(cg.g);
    else throw ParamError("unknown recognizer class: " + cls);
    json out{{"schema", 1}, {"command", "volcano recognize"}, {"class", cls},
             {"verdict", r.yes}, {"reason", r.reason}};
    if (r.tectonic)
        out["parameters"] = {{"r", r.tectonic->r}, {"s", r.tectonic->s},
                             {"t", r.tectonic->t}, {"c", r.tectonic->c}};
    if (r.pairing) out["pairing"] = *r.pairing;
    write_file(fs::path(out_dir) / "recognize.json", out.dump(2) + "\n");
    std::cout << out.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"isogeny tower toolkit"};
    app.require_subcommand(1);

    CommonOpts ob, oa, oy;
    std::string theorem;
    auto* build = app.add_subcommand("build", "build level graphs and write DOT/JSON");
    add_common(build, ob);
    auto* audit = app.add_subcommand("audit", "run the verification suite");
    add_common(audit, oa);
    audit->add_option("--theorem", theorem, "restrict to one check tag");
    auto* ytower = app.add_subcommand("y-tower", "pairing-quotient tower checks");
    add_common(ytower, oy);

    int64_t dp = 3, dN = 1, dbound = 100000;
    std::string ddir = ".";
    auto* density = app.add_subcommand("density", "generator density scan over primes");
    density->add_option("--p", dp);
    density->add_option("--N", dN);
    density->add_option("--bound", dbound);
    density->add_option("--out-dir", ddir);

    auto* volcano = app.add_subcommand("volcano", "volcano-type graph generators/recognizers");
    volcano->require_subcommand(1);
    std::string vkind = "tectonic_crater", vparams = "5,1,1,2", vout = "volcano.dot";
    std::string rcls = "tectonic_crater", rin;
    int64_t vl = 2;
    int vdepth = 0;
    bool vintertwine = false;
    auto* vgen = volcano->add_subcommand("gen", "generate a graph");
    vgen->add_option("--class", vkind, "crater|volcano|tectonic_crater|tectonic_volcano");
    vgen->add_option("--tectonic", vparams, "r,s,t,c parameters");
    vgen->add_option("--crater", vparams, "cycle(len) or isolated(count)");
    vgen->add_option("--l", vl);
    vgen->add_option("--depth", vdepth);
    vgen->add_flag("--intertwine", vintertwine, "apply the double intertwinement");
    vgen->add_option("--out", vout);
    auto* vrec = volcano->add_subcommand("recognize", "recognize a graph class");
    vrec->add_option("--class", rcls);
    vrec->add_option("--l", vl);
    vrec->add_option("--depth", vdepth);
    vrec->add_option("--out-dir", ddir);
    vrec->add_option("input", rin, "input DOT file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) return cmd_build(ob);
        if (*audit) return cmd_audit(oa, theorem);
        if (*ytower) return cmd_y_tower(oy);
        if (*density) return cmd_density(dp, dN, dbound, ddir);
        if (*volcano) {
            if (*vgen) {
                std::string kind = vkind;
                if (vgen->count("--tectonic") && !vgen->count("--class")) kind = "tectonic_crater";
                if (vgen->count("--crater") && !vgen->count("--class")) kind = "volcano";
                return cmd_volcano_gen(kind, vparams, vl, vdepth, vintertwine, vout);
            }
            if (*vrec) return cmd_volcano_recognize(rcls, rin, vl, vdepth, ddir);
        }
    } catch (const isotower::ParamError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParam;
    } catch (const isotower::CapError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const isotower::CheckError& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return kExitCheck;
    }
    return 0;
}
