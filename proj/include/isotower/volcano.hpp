#pragma once

#include <optional>

#include "isotower/graph.hpp"

namespace isotower {

enum class EdgeColor { None, Blue, Green };

struct ColoredGraph {
    Digraph g;
    std::vector<EdgeColor> color;
};

struct TectonicParams {
    int64_t r = 1, s = 1, t = 1, c = 1;
    bool operator==(const TectonicParams& o) const {
        return r == o.r && s == o.s && t == o.t && c == o.c;
    }
};

struct CraterSpec {
    bool cycle = true; // cycle(size) or isolated(size)
    int64_t size = 1;
};

// depth-D truncation; frontier vertices keep no descending edges
struct DepthDecomposition {
    Digraph g;
    std::vector<int> depth;
    int frontier = 0;
};

DepthDecomposition gen_volcano(int64_t l, CraterSpec crater, int D);

// translation model on Z_{rs} x Z_t; ParamError when the parameters admit no model
ColoredGraph gen_tectonic_crater(const TectonicParams& prm);

DepthDecomposition gen_tectonic_volcano(int64_t l, const TectonicParams& prm, int D,
                                        ColoredGraph* crater_out = nullptr);

Digraph double_intertwine(const Digraph& Z);

struct RecognizeResult {
    bool yes = false;
    std::string reason;
    std::optional<TectonicParams> tectonic;
    std::optional<std::vector<int>> depth;
    std::optional<std::vector<int>> pairing; // vertex -> partner
    std::optional<Digraph> quotient;
};

RecognizeResult recognize_crater(const Digraph& X);
RecognizeResult recognize_volcano(const Digraph& X, int64_t l, int D);
RecognizeResult recognize_tectonic_crater(const ColoredGraph& X);
RecognizeResult recognize_tectonic_crater_uncolored(const Digraph& X, int64_t cap = 1000000);
RecognizeResult recognize_tectonic_volcano(const Digraph& X, int64_t l, int D,
                                           int64_t cap = 1000000);
RecognizeResult recognize_double_intertwinement(const Digraph& X, int64_t cap = 2000000);

} // namespace isotower
