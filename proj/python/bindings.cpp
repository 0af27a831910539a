#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "isotower/io.hpp"
#include "isotower/matgroup.hpp"
#include "isotower/tower.hpp"
#include "isotower/volcano.hpp"

namespace py = pybind11;
using namespace isotower;

namespace {

BuildScope scope_from_string(const std::string& s) {
    if (s == "auto") return BuildScope::Auto;
    if (s == "full") return BuildScope::Full;
    if (s == "ss") return BuildScope::SsOnly;
    if (s == "seeds") return BuildScope::SeedComponents;
    throw ParamError("unknown scope: " + s);
}

TowerParams make_params(int64_t q, int64_t l, int64_t p, int64_t N, int n, int k) {
    TowerParams prm;
    prm.q = q;
    prm.l = l;
    prm.p = p;
    prm.N = N;
    prm.n_max = n;
    prm.k = k;
    return prm;
}

py::dict tower_summary(const Tower& T) {
    py::dict d;
    d["q"] = T.params().q;
    d["k"] = T.params().k;
    d["l"] = T.params().l;
    d["p"] = T.params().p;
    d["N"] = T.params().N;
    d["n_max"] = T.params().n_max;
    d["scope"] = T.scope_note();
    d["field_order"] = T.field()->order();
    d["C_q"] = T.aut_bound_Cq();
    py::list classes;
    for (auto& c : T.classes()) {
        py::dict jc;
        jc["curve"] = c.E.encode();
        jc["trace"] = c.trace;
        jc["supersingular"] = c.ss;
        if (!c.ss) jc["cm_disc"] = c.cm_disc;
        classes.append(jc);
    }
    d["classes"] = classes;
    py::list levels;
    for (int n = 0; n <= T.params().n_max; ++n) {
        auto st = T.level_stats(n);
        py::dict jl;
        jl["n"] = st.n;
        jl["vertices"] = st.vertices;
        jl["edges"] = st.edges;
        jl["components"] = st.components;
        jl["multiple_edges"] = st.multiple_edges;
        levels.append(jl);
    }
    d["levels"] = levels;
    py::list comps;
    for (auto& r : T.classify_components()) {
        py::dict jc;
        jc["id"] = r.id;
        jc["supersingular"] = r.supersingular;
        jc["counts"] = r.counts;
        if (!r.supersingular) {
            jc["cm_disc"] = r.cm_disc;
            jc["split"] = r.split;
            jc["exponent_class"] = r.exponent_class;
            jc["onset_reached"] = r.onset_reached;
            jc["fitted_c"] = r.fitted_c;
        }
        comps.append(jc);
    }
    d["components"] = comps;
    return d;
}

py::dict graph_dict(const Digraph& g) {
    py::dict d;
    d["vertices"] = g.nv;
    py::list edges;
    for (auto& e : g.edges) edges.append(py::make_tuple(e.src, e.dst));
    d["edges"] = edges;
    return d;
}

} // namespace

PYBIND11_MODULE(_isotower, m) {
    m.doc() = "isogeny tower toolkit bindings";

    py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
    py::register_exception<CapError>(m, "CapError", PyExc_RuntimeError);
    py::register_exception<CheckError>(m, "CheckError", PyExc_RuntimeError);

    m.def("gl2_order", &gl2_order, py::arg("p"), py::arg("n"));
    m.def("unit_index", &unit_index, py::arg("m"), py::arg("l"));
    m.def("generator_density",
          [](int64_t p, int64_t N, int64_t bound) {
              auto [g, t] = generator_density(p, N, bound);
              return py::make_tuple(g, t);
          },
          py::arg("p"), py::arg("N"), py::arg("bound"));
    m.def("split_behavior",
          [](int64_t disc, int64_t l) { return split_name(split_behavior(disc, l)); });
    m.def("fundamental_discriminant", &fundamental_discriminant);

    struct PyField {
        ExtPtr F;
    };
    py::class_<PyField>(m, "Field")
        .def(py::init([](int64_t q, int k) { return PyField{make_extension(q, k)}; }), py::arg("q"),
             py::arg("k"))
        .def_property_readonly("order", [](const PyField& f) { return f.F->order(); })
        .def_property_readonly("q", [](const PyField& f) { return f.F->q(); })
        .def_property_readonly("k", [](const PyField& f) { return f.F->k(); })
        .def_property_readonly("modulus", [](const PyField& f) { return f.F->modulus_string(); })
        .def("add",
             [](const PyField& f, const std::string& a, const std::string& b) {
                 return f.F->encode(f.F->add(f.F->decode(a), f.F->decode(b)));
             })
        .def("mul",
             [](const PyField& f, const std::string& a, const std::string& b) {
                 return f.F->encode(f.F->mul(f.F->decode(a), f.F->decode(b)));
             })
        .def("sqrt",
             [](const PyField& f, const std::string& a) -> py::object {
                 auto r = f.F->sqrt(f.F->decode(a));
                 if (!r) return py::none();
                 return py::str(f.F->encode(*r));
             })
        .def("multiplicative_order", [](const PyField& f, const std::string& a) {
            return f.F->multiplicative_order(f.F->decode(a));
        });

    py::class_<CurveE>(m, "Curve")
        .def(py::init([](const PyField& f, const std::string& a4, const std::string& a6) {
                 return CurveE(f.F, f.F->decode(a4), f.F->decode(a6));
             }),
             py::arg("field"), py::arg("a4"), py::arg("a6"))
        .def_property_readonly("order", &CurveE::order)
        .def_property_readonly("j_invariant",
                               [](const CurveE& E) { return E.field()->encode(E.j_invariant()); })
        .def("frobenius", [](const CurveE& E) {
            auto f = frobenius_data(E);
            py::dict d;
            d["trace"] = f.trace;
            d["supersingular"] = f.supersingular;
            if (!f.supersingular) d["cm_disc"] = f.cm_disc;
            return d;
        })
        .def("torsion_full", &CurveE::torsion_full)
        .def("encode", &CurveE::encode);

    m.def("torsion_field_degree",
          [](const CurveE& E, int64_t M) { return torsion_field_degree(E, M); });

    m.def(
        "tower",
        [](int64_t q, int64_t l, int64_t p, int64_t N, int n, int k, const std::string& scope,
           std::vector<std::pair<std::string, std::string>> seeds) {
            Tower T(make_params(q, l, p, N, n, k), scope_from_string(scope), std::move(seeds));
            return tower_summary(T);
        },
        py::arg("q"), py::arg("l"), py::arg("p"), py::arg("N") = 1, py::arg("n") = 1,
        py::arg("k") = 0, py::arg("scope") = "auto",
        py::arg("seeds") = std::vector<std::pair<std::string, std::string>>{});

    m.def(
        "galois_audit",
        [](int64_t q, int64_t l, int64_t p, int64_t N, int n, int k, const std::string& scope) {
            Tower T(make_params(q, l, p, N, n, k), scope_from_string(scope));
            py::dict d;
            // audit the first supersingular component when present, else component 0
            auto part = T.x0_components();
            int comp = 0;
            for (int v = 0; v < T.X0()->nv; ++v)
                if (T.classes()[T.x0_class(v)].ss) {
                    comp = part.comp[v];
                    break;
                }
            auto a = T.galois_audit(comp, n);
            d["status"] = a.status;
            d["reason"] = a.reason;
            d["deck_order"] = a.deck_order;
            d["fiber_transitive"] = a.fiber_transitive;
            py::list ss_counts;
            for (int i = 0; i <= n; ++i) ss_counts.append(T.ss_component_count(i));
            d["ss_component_counts"] = ss_counts;
            return d;
        },
        py::arg("q"), py::arg("l"), py::arg("p"), py::arg("N") = 1, py::arg("n") = 1,
        py::arg("k") = 0, py::arg("scope") = "ss");

    m.def(
        "y_tower",
        [](int64_t q, int64_t l, int64_t p, int64_t N, int n, int k) {
            Tower T(make_params(q, l, p, N, n, k), BuildScope::SsOnly);
            py::dict d;
            d["C_q"] = T.aut_bound_Cq();
            d["component_counts"] = T.y_component_counts();
            auto m0 = T.y_stabilization_m0();
            d["m0"] = m0 ? py::object(py::int_(*m0)) : py::object(py::none());
            if (N > T.aut_bound_Cq() && n >= 1) {
                T.y_check_iso(n);
                d["direct_vs_derived"] = "pass";
                if (m0 && n > std::max(*m0, 1)) {
                    auto a = T.y_deck_audit(n, std::max(*m0, 1));
                    d["deck_order"] = a.deck_order;
                    d["deck_cyclic"] = a.cyclic;
                    d["deck_pass"] = a.pass;
                }
            } else {
                d["direct_vs_derived"] = "skipped (needs N > C_q)";
            }
            return d;
        },
        py::arg("q"), py::arg("l"), py::arg("p"), py::arg("N"), py::arg("n") = 1, py::arg("k") = 0);

    m.def("find_ordinary_seeds",
          [](int64_t q, int k, int64_t l, int64_t p, int64_t N, int n, int max_seeds) {
              auto F = make_extension(q, k);
              py::list out;
              for (auto& s : find_ordinary_seeds(F, l, p, N, n, max_seeds)) {
                  py::dict d;
                  d["a4"] = s.a4;
                  d["a6"] = s.a6;
                  d["trace"] = s.trace;
                  d["cm_disc"] = s.cm_disc;
                  d["split"] = s.split;
                  out.append(d);
              }
              return out;
          },
          py::arg("q"), py::arg("k"), py::arg("l"), py::arg("p"), py::arg("N") = 1,
          py::arg("n") = 1, py::arg("max_seeds") = 4);

    // volcano machinery
    m.def("gen_volcano", [](int64_t l, bool cycle, int64_t size, int D) {
        auto v = gen_volcano(l, {cycle, size}, D);
        py::dict d = graph_dict(v.g);
        d["depth"] = v.depth;
        return d;
    });
    m.def("gen_tectonic_crater", [](int64_t r, int64_t s, int64_t t, int64_t c) {
        auto cg = gen_tectonic_crater({r, s, t, c});
        py::dict d = graph_dict(cg.g);
        py::list colors;
        for (auto col : cg.color) colors.append(col == EdgeColor::Blue ? "blue" : "green");
        d["colors"] = colors;
        return d;
    });
    m.def("double_intertwine", [](int nv, std::vector<std::pair<int, int>> edges) {
        Digraph Z;
        for (int i = 0; i < nv; ++i) Z.add_vertex();
        for (auto [s, t] : edges) Z.add_edge(s, t);
        return graph_dict(double_intertwine(Z));
    });
    m.def("recognize", [](const std::string& cls, int nv, std::vector<std::pair<int, int>> edges,
                          std::vector<std::string> colors, int64_t l, int D) {
        Digraph X;
        for (int i = 0; i < nv; ++i) X.add_vertex();
        for (auto [s, t] : edges) X.add_edge(s, t);
        RecognizeResult r;
        if (cls == "crater") r = recognize_crater(X);
        else if (cls == "volcano") r = recognize_volcano(X, l, D);
        else if (cls == "tectonic_crater") {
            if (!colors.empty()) {
                ColoredGraph cg;
                cg.g = X;
                for (auto& c : colors)
                    cg.color.push_back(c == "blue" ? EdgeColor::Blue : EdgeColor::Green);
                r = recognize_tectonic_crater(cg);
            } else {
                r = recognize_tectonic_crater_uncolored(X);
            }
        } else if (cls == "tectonic_volcano") r = recognize_tectonic_volcano(X, l, D);
        else if (cls == "double_intertwinement") r = recognize_double_intertwinement(X);
        else throw ParamError("unknown class: " + cls);
        py::dict d;
        d["yes"] = r.yes;
        d["reason"] = r.reason;
        if (r.tectonic)
            d["parameters"] = py::make_tuple(r.tectonic->r, r.tectonic->s, r.tectonic->t,
                                             r.tectonic->c);
        if (r.pairing) d["pairing"] = *r.pairing;
        return d;
    }, py::arg("cls"), py::arg("nv"), py::arg("edges"),
       py::arg("colors") = std::vector<std::string>{}, py::arg("l") = 2, py::arg("depth") = 0);
}
