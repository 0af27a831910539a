#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isotower/util.hpp"

namespace isotower {

// Directed multigraph; parallel edges and loops allowed.
struct Digraph {
    struct Edge {
        int src, dst;
    };
    int nv = 0;
    std::vector<Edge> edges;
    std::vector<std::string> vlabel;
    std::vector<std::string> elabel;

    int add_vertex(std::string label = "");
    int add_edge(int s, int t, std::string label = "");
    int ne() const { return (int)edges.size(); }

    // adjacency caches (edge ids, ascending)
    const std::vector<std::vector<int>>& out_edges() const;
    const std::vector<std::vector<int>>& in_edges() const;

private:
    mutable std::vector<std::vector<int>> out_, in_;
    mutable bool adj_built_ = false;
    void build_adj() const;
};

using DigraphPtr = std::shared_ptr<const Digraph>;

enum class ConnMode { Weak, Strong };

struct Partition {
    std::vector<int> comp; // vertex -> component id (ids ordered by first vertex)
    int count = 0;
};

Partition components(const Digraph& X, ConnMode mode);

class FiniteGroup;
struct GroupSub;
struct GroupQuot;

// Finite group with explicit operation table.
class FiniteGroup {
public:
    static constexpr int kMaxOrder = 10000;

    int order() const { return n_; }
    int identity() const { return id_; }
    int op(int a, int b) const { return mul_[(size_t)a * n_ + b]; }
    int inverse(int a) const { return inv_[a]; }
    const std::string& label(int a) const { return label_[a]; }
    int element_order(int a) const;
    bool check_axioms() const; // exhaustive; for tests

    static FiniteGroup cyclic(int m);
    static FiniteGroup symmetric(int n); // n <= 5
    static FiniteGroup gl2(int64_t p, int n);
    static FiniteGroup units(int64_t m);
    // table from explicit permutations acting on points (composition as op)
    static FiniteGroup from_permutations(const std::vector<std::vector<int>>& perms);

    // matrix <-> index helpers, only valid for gl2 groups
    int index_of_matrix(const std::array<int64_t, 4>& e) const;
    std::array<int64_t, 4> matrix_of(int idx) const;
    int64_t modulus() const { return modulus_; }

    // subgroup spanned by the listed element indices; result carries an
    // embedding back into this group
    GroupSub subgroup(std::vector<int> gens) const;
    // quotient by a normal subgroup (throws if not normal)
    GroupQuot quotient(const std::vector<int>& normal_elems) const;

private:
    int n_ = 0, id_ = 0;
    std::vector<int32_t> mul_, inv_;
    std::vector<std::string> label_;
    int64_t modulus_ = 0;                 // gl2 groups only
    std::vector<int32_t> matidx_;         // packed entries -> index (gl2 only)
    std::vector<std::array<int64_t, 4>> mats_;

    void finish_from_mul();
    friend FiniteGroup table_group(std::vector<int32_t> mul, int n, std::vector<std::string> labels);
};

struct GroupSub {
    FiniteGroup group;
    std::vector<int> embed; // subgroup index -> parent index
};
struct GroupQuot {
    FiniteGroup group;
    std::vector<int> proj; // parent index -> coset index
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct CoveringMap {
    DigraphPtr total, base;
    std::vector<int> vmap, emap;

    void verify() const;  // incidence + local bijectivity on in/out stars
    int sheets() const;   // uniform fiber size (verified)
    std::vector<int> fiber(int base_vertex) const;
};

struct VoltageAssignment {
    DigraphPtr X;
    GroupPtr G;
    std::vector<int> volt; // per edge

    VoltageAssignment() = default;
    VoltageAssignment(DigraphPtr x, GroupPtr g, std::vector<int> v);
};

struct DerivedGraph {
    DigraphPtr Y;
    CoveringMap cov;
    // index helpers
    int vertex(int v, int g, int order) const { return v * order + g; }
};

DerivedGraph derived_graph(const VoltageAssignment& a);

// Remark-2.3 style component count: |G| / d_v with d_v the number of sheets
// over v reachable from (v, 1). Cross-checked against the materialized
// derived graph when it is small enough.
int64_t component_orbit_count(const VoltageAssignment& a, int v, bool cross_check = true);

// Deck transformations (directed formalism: orientation- and
// fiber-preserving automorphism pairs). Propagation from root images; deck
// maps on connected totals are determined by a single vertex image.
struct DeckTransform {
    std::vector<int> vperm, eperm;
};
std::vector<DeckTransform> deck_transformations(const CoveringMap& c, int64_t cap = 250000);

// Loose undirected variant: edges may match with reversed orientation.
// Exposed for diagnostics; can exceed the directed count.
int64_t deck_count_undirected_loose(const CoveringMap& c, int64_t cap = 250000);

struct GaloisVerdict {
    enum Status { Yes, No, Undecided } status;
    std::string reason;
    int64_t deck_count = -1;
    std::optional<FiniteGroup> group; // deck group when computed
};

// Galois <=> the deck group has order equal to the sheet count (equivalently,
// simply transitive fiber action). If `alpha` is the voltage assignment the
// cover came from, the d! > |G| shortcut is applied before any deck search.
GaloisVerdict is_galois(const CoveringMap& c, const VoltageAssignment* alpha = nullptr,
                        int64_t cap = 250000);

// Prop 2.5(i): the left G-action permutes derived components transitively.
bool transitivity_check(const VoltageAssignment& a);

// Voltage composed with G -> G/H for a normal subgroup H (element indices).
// Also returns the intermediate covering derived(a) -> derived(quotient).
struct QuotientResult {
    VoltageAssignment quotient;
    std::vector<int> proj; // G index -> G/H index
};
QuotientResult quotient_by_normal(const VoltageAssignment& a, const std::vector<int>& normal_elems);

// Covering map derived(a) -> derived(quotient(a)) induced by proj.
CoveringMap intermediate_covering(const VoltageAssignment& a, const DerivedGraph& da,
                                  const QuotientResult& q, const DerivedGraph& dq);

} // namespace isotower
