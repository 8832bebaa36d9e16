#include "forge/graph_io.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace forge {

namespace {

bool parse_long(std::istringstream& ss, long long& v) {
    ss >> v;
    return !ss.fail();
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long n = -1;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        std::string rest;
        if (n < 0) {
            if (!parse_long(ss, n) || n < 0 || n > (1LL << 30)) throw ParseError(lineno, "expected vertex count");
            if (ss >> rest) throw ParseError(lineno, "trailing text after vertex count");
            continue;
        }
        long long u = 0, v = 0;
        if (!parse_long(ss, u) || !parse_long(ss, v)) throw ParseError(lineno, "malformed edge line '" + line + "'");
        if (ss >> rest) throw ParseError(lineno, "trailing text on edge line");
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw ParseError(lineno, "vertex out of range in '" + line + "'");
        }
        if (u == v) throw ParseError(lineno, "self-loop at vertex " + std::to_string(u));
        Edge e{static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))};
        if (!seen.insert(e).second) {
            throw ParseError(lineno, "duplicate edge " + std::to_string(e.first) + " " + std::to_string(e.second));
        }
        edges.push_back(e);
    }
    if (n < 0) throw ParseError(lineno, "missing vertex count");
    return Graph::from_edges(static_cast<Vertex>(n), edges);
}

Graph read_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open " + path.string());
    return parse_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
    out << g.order() << '\n';
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_graph(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw GraphError("cannot write " + path.string());
    write_edge_list(g, out);
}

nlohmann::json graph_to_json(const Graph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return {{"n", g.order()}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
    try {
        Vertex n = j.at("n").get<Vertex>();
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            Vertex u = e.at(0).get<Vertex>(), v = e.at(1).get<Vertex>();
            edges.emplace_back(std::min(u, v), std::max(u, v));
        }
        return Graph::from_edges(n, edges);
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(std::string("bad graph JSON: ") + e.what());
    }
}

}  // namespace forge
