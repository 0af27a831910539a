#pragma once

#include <string>

#include "isotower/graph.hpp"
#include "isotower/volcano.hpp"

namespace isotower {

struct DotOptions {
    bool vertex_labels = true;
    const std::vector<int>* voltage = nullptr;       // per-edge group element index
    const std::vector<EdgeColor>* colors = nullptr;  // per-edge color attr
    const std::vector<int>* component = nullptr;     // per-vertex component id
};

std::string dot_export(const Digraph& g, const DotOptions& opt = {});

// reads the dialect written by dot_export: vertex lines "vN [...];" and edge
// lines "vA -> vB [...];", with optional color attributes
ColoredGraph dot_parse(const std::string& text);

std::string json_graph(const Digraph& g, const std::vector<int>* voltage = nullptr,
                       const FiniteGroup* group = nullptr);

} // namespace isotower
