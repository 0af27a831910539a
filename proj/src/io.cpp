#include "isotower/io.hpp"

#include <map>
#include <sstream>

#include "json.hpp"

namespace isotower {

namespace {
std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}
} // namespace

std::string dot_export(const Digraph& g, const DotOptions& opt) {
    std::ostringstream os;
    os << "digraph G {\n";
    static const char* palette[] = {"lightblue", "lightyellow", "lightpink", "lightgreen",
                                    "lavender",  "mistyrose",   "honeydew",  "aliceblue"};
    for (int v = 0; v < g.nv; ++v) {
        os << "  v" << v;
        std::vector<std::string> attrs;
        if (opt.vertex_labels && !g.vlabel[v].empty())
            attrs.push_back("label=\"" + escape(g.vlabel[v]) + "\"");
        if (opt.component) {
            attrs.push_back("style=filled");
            attrs.push_back(std::string("fillcolor=") + palette[(*opt.component)[v] % 8]);
        }
        if (!attrs.empty()) {
            os << " [";
            for (size_t i = 0; i < attrs.size(); ++i) os << (i ? "," : "") << attrs[i];
            os << "]";
        }
        os << ";\n";
    }
    for (int e = 0; e < g.ne(); ++e) {
        os << "  v" << g.edges[e].src << " -> v" << g.edges[e].dst;
        std::vector<std::string> attrs;
        if (!g.elabel[e].empty()) attrs.push_back("label=\"" + escape(g.elabel[e]) + "\"");
        if (opt.voltage) attrs.push_back("voltage=\"" + std::to_string((*opt.voltage)[e]) + "\"");
        if (opt.colors) {
            EdgeColor c = (*opt.colors)[e];
            if (c == EdgeColor::Blue) attrs.push_back("color=blue");
            else if (c == EdgeColor::Green) attrs.push_back("color=green");
        }
        if (!attrs.empty()) {
            os << " [";
            for (size_t i = 0; i < attrs.size(); ++i) os << (i ? "," : "") << attrs[i];
            os << "]";
        }
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

ColoredGraph dot_parse(const std::string& text) {
    ColoredGraph out;
    std::istringstream is(text);
    std::string line;
    std::map<std::string, int> vid;
    auto vertex = [&](const std::string& name) {
        auto it = vid.find(name);
        if (it != vid.end()) return it->second;
        int id = out.g.add_vertex(name);
        vid[name] = id;
        return id;
    };
    while (std::getline(is, line)) {
        // strip comments and whitespace
        auto h = line.find("//");
        if (h != std::string::npos) line = line.substr(0, h);
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r;");
        line = line.substr(b, e - b + 1);
        if (line.empty() || line[0] == '{' || line[0] == '}') continue;
        if (line.rfind("digraph", 0) == 0 || line.rfind("graph", 0) == 0) continue;
        // split off attributes
        std::string attrs;
        auto br = line.find('[');
        if (br != std::string::npos) {
            attrs = line.substr(br);
            line = line.substr(0, br);
            while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) line.pop_back();
        }
        auto arrow = line.find("->");
        if (arrow == std::string::npos) {
            if (!line.empty()) vertex(line);
            continue;
        }
        std::string a = line.substr(0, arrow), bb = line.substr(arrow + 2);
        auto trim = [](std::string s) {
            size_t x = s.find_first_not_of(" \t");
            size_t y = s.find_last_not_of(" \t");
            return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
        };
        int src = vertex(trim(a)), dst = vertex(trim(bb));
        out.g.add_edge(src, dst);
        EdgeColor c = EdgeColor::None;
        if (attrs.find("color=blue") != std::string::npos) c = EdgeColor::Blue;
        else if (attrs.find("color=green") != std::string::npos) c = EdgeColor::Green;
        out.color.push_back(c);
    }
    return out;
}

std::string json_graph(const Digraph& g, const std::vector<int>* voltage,
                       const FiniteGroup* group) {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (int v = 0; v < g.nv; ++v)
        j["vertices"].push_back({{"id", v}, {"label", g.vlabel[v]}});
    j["edges"] = nlohmann::ordered_json::array();
    for (int e = 0; e < g.ne(); ++e) {
        nlohmann::ordered_json je{{"src", g.edges[e].src}, {"dst", g.edges[e].dst}};
        if (!g.elabel[e].empty()) je["label"] = g.elabel[e];
        if (voltage) je["voltage"] = (*voltage)[e];
        j["edges"].push_back(je);
    }
    if (group) {
        j["group"] = {{"order", group->order()}, {"identity", group->identity()}};
        nlohmann::ordered_json labels = nlohmann::ordered_json::array();
        for (int i = 0; i < group->order(); ++i) labels.push_back(group->label(i));
        j["group"]["elements"] = labels;
    }
    return j.dump(2);
}

} // namespace isotower
