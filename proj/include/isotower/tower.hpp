#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isotower/graph.hpp"
#include "isotower/isogeny.hpp"
#include "isotower/matgroup.hpp"

namespace isotower {

struct TowerParams {
    int64_t q = 0, l = 0, p = 0, N = 1;
    int n_max = 1;
    int k = 0; // 0 = auto-select from a supersingular seed
    int64_t cap_field = Ext::kDefaultCap;
    int64_t cap_graph = 300000;

    void validate() const; // primality, distinctness, coprimality
};

enum class BuildScope { Auto, Full, SsOnly, SeedComponents };

// One isomorphism class in scope, with cached torsion data.
struct CurveClass {
    CurveE E;
    int64_t trace;
    bool ss;
    int64_t cm_disc; // ordinary only
    std::pair<Pt, Pt> basisN;     // canonical basis of E[N] ((O,O) for N=1)
    std::pair<Pt, Pt> tate;       // basis of E[p^n_max], pairing-normalized
    std::pair<Pt, Pt> merge_basis; // canonical basis of E[N p^n_max]
};

// Curve-level step together with its voltage matrix mod p^{n_max}.
struct StepRec {
    int src, dst; // class indices
    IsogenyStep step;
    std::array<int64_t, 4> volt;
};

struct LevelStats {
    int n;
    int64_t vertices, edges, components;
    bool multiple_edges;
};

struct ComponentReport {
    int id;
    std::vector<int> class_ids;
    bool supersingular;
    int64_t cm_disc = 0;      // ordinary only
    std::string split;        // behaviour of l in the CM field (ordinary only)
    std::vector<int64_t> counts; // components of the preimage at n = 0..n_max
    bool onset_reached = false;  // ratio matches p^2 or p^3 per level (ordinary)
    int exponent_class = 0;      // 2 or 3 when matched
    int64_t fitted_c = 0;        // counts[1]
    bool c_ge_bound = false;     // c >= (p+1)p
};

class Tower {
public:
    Tower(TowerParams prm, BuildScope scope = BuildScope::Auto,
          std::vector<std::pair<std::string, std::string>> seeds = {}); // (a4, a6) encodings

    const TowerParams& params() const { return prm_; }
    const ExtPtr& field() const { return F_; }
    const std::vector<CurveClass>& classes() const { return classes_; }
    const std::vector<StepRec>& steps() const { return steps_; }
    const std::vector<int>& class_steps(int cls) const { return class_steps_[cls]; }
    const std::string& scope_note() const { return scope_note_; }
    int64_t aut_bound_Cq() const { return Cq_; }
    int32_t pairing_root() const { return xi_; } // xi with <s,t> = xi for all classes

    // level-0 graph: vertices (class, R1, R2)
    const DigraphPtr& X0() const { return X0_; }
    int x0_class(int v) const { return x0_cls_[v]; }
    const std::array<Pt, 2>& x0_structure(int v) const { return x0_R_[v]; }
    const std::vector<int>& x0_edge_step() const { return x0_step_; }

    GroupPtr gl2_group(int n) const; // GL2(Z/p^n) (trivial group at n=0); cached
    VoltageAssignment alpha(int n) const;

    // direct level-n graph
    struct DirectLevel {
        DigraphPtr G;
        int n;
        std::vector<int> cls;
        std::vector<std::array<Pt, 2>> basis; // (Q1, Q2) basis of E[p^n N]
        std::vector<int> edge_step;
        std::map<std::tuple<int, Pt, Pt>, int> index; // (cls, Q1, Q2) -> vertex
    };
    DirectLevel build_direct(int n) const;

    // Verified bijection derived(alpha(n)) -> direct(n); throws on mismatch.
    std::vector<int> derived_vs_direct(int n, const DirectLevel* direct = nullptr) const;

    CoveringMap covering_between(const DirectLevel& upper, const DirectLevel& lower) const;

    // component analysis at level 0 plus per-level preimage counts
    std::vector<ComponentReport> classify_components() const;
    Partition x0_components() const;

    // number of components of the preimage of one level-0 component at level n
    int64_t preimage_component_count(int comp, int n) const;
    // component count of the full supersingular subgraph at level n, plus the
    // unit-index prediction
    int64_t ss_component_count(int n) const;
    bool has_ss() const;

    // voltage restricted to one level-0 component (reindexed base)
    VoltageAssignment alpha_on_component(int comp, int n) const;

    // multiple-edge detection at level n (voltage collisions on parallel edges)
    bool multiple_edges_at(int n) const;

    LevelStats level_stats(int n) const;

    struct GaloisAudit {
        std::string status; // "galois" | "not-galois" | "undecided"
        std::string reason;
        int64_t deck_order = -1;
        bool fiber_transitive = false;
    };
    // X_n / X_0 over one level-0 component; deck enumeration when feasible
    GaloisAudit galois_audit(int comp, int n, int64_t deck_cap = 250000) const;

    // stabilization level: counts constant from m0 on (up to n_max) and no
    // multiple edges at m0; nullopt when not reached
    std::optional<int> stabilization_m0(int comp) const;

    struct CongruenceAudit {
        bool pass;
        std::string detail;
        int64_t deck_order;
        int64_t expected; // p^{4(n-m)}
    };
    // Deck(Z_n/Z_m) vs the matrix congruence subgroup, Z_* components over comp
    CongruenceAudit congruence_deck_audit(int comp, int n, int m, int64_t deck_cap = 250000) const;

    // ----- Y-graphs (det-voltage quotients) -----
    struct YLevel {
        DigraphPtr G;
        int n;
        std::vector<std::pair<int, int64_t>> verts; // (X0 vertex, residue a)
        std::vector<int> edge_step;
        std::map<std::pair<int, int64_t>, int> index;
    };
    // direct construction per the quotient definition; pre-images chosen as
    // the lexicographically smallest (or largest) matrix of determinant a
    YLevel y_direct(int n, bool rule_largest = false) const;
    DerivedGraph y_derived(int n) const; // derived graph of det∘alpha_n
    VoltageAssignment beta(int n) const;

    // graph equality of direct and derived constructions (needs N > C_q)
    void y_check_iso(int n) const;

    CoveringMap y_covering(const YLevel& upper, const YLevel& lower) const;
    std::vector<int64_t> y_component_counts() const; // n = 0..n_max
    std::optional<int> y_stabilization_m0() const;

    struct YDeckAudit {
        bool pass;
        std::string detail;
        int64_t deck_order, expected; // p^{n-m}
        bool cyclic;
    };
    YDeckAudit y_deck_audit(int n, int m, int64_t deck_cap = 250000) const;

    // Theorem-style bound on Y component counts
    int64_t y_component_bound(int n) const;

private:
    TowerParams prm_;
    ExtPtr F_;
    std::vector<CurveClass> classes_;
    std::map<std::pair<int32_t, int32_t>, int> class_index_;
    std::vector<StepRec> steps_;
    std::vector<std::vector<int>> class_steps_;
    std::string scope_note_;
    bool closure_allowed_ = false;
    int64_t Cq_ = 2;
    int32_t xi_ = 0;

    DigraphPtr X0_;
    std::vector<int> x0_cls_;
    std::vector<std::array<Pt, 2>> x0_R_;
    std::vector<int> x0_step_;
    std::map<std::tuple<int, Pt, Pt>, int> x0_index_;

    mutable std::map<int, GroupPtr> gl2_cache_;
    // per-class, per-level torsion coordinate tables
    struct Dlp {
        std::map<Pt, std::pair<int64_t, int64_t>> coords;
        std::array<Pt, 2> basis;
    };
    mutable std::map<std::pair<int, int64_t>, Dlp> dlp_cache_; // (class, modulus)

    const Dlp& dlp(int cls, int64_t level, const std::array<Pt, 2>& basis) const;
    const Dlp& tate_dlp(int cls, int n) const; // coords wrt [p^{n_max-n}] tate

    int register_class(const CurveE& rep);
    void enumerate_scope(BuildScope scope, const std::vector<std::pair<std::string, std::string>>& seeds);
    void close_and_build_steps(std::vector<int> pending);
    void compute_voltages();
    void normalize_tate();
    void build_x0();
    bool participates(const CurveE& E) const;
    std::vector<CurveE> ss_class_candidates() const;
    std::vector<CurveE> full_class_candidates() const;
};

// smallest k with a supersingular curve having fully rational
// E[l * p^{n_max} * N] over F_{q^k}; CapError when none fits the caps
int auto_select_k(const TowerParams& prm);

// scan for ordinary classes with fully rational E[l * p^{n_max} * N]
struct OrdinarySeed {
    std::string a4, a6;
    int64_t trace, cm_disc;
    std::string split;
};
std::vector<OrdinarySeed> find_ordinary_seeds(const ExtPtr& F, int64_t l, int64_t p, int64_t N,
                                              int n_max, int max_seeds = 6,
                                              int64_t scan_curve_cap = 60000);

} // namespace isotower
