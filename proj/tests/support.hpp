#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/graph.hpp"

namespace forge::test {

inline nlohmann::json fixture(const std::string& name) {
    std::ifstream f(std::string(FORGE_FIXTURE_DIR) + "/" + name);
    if (!f) throw std::runtime_error("missing fixture " + name);
    return nlohmann::json::parse(f);
}

inline Graph graph_of(const nlohmann::json& entry) {
    std::vector<Edge> edges;
    for (const auto& e : entry.at("edges")) edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    return Graph::from_edges(entry.at("n").get<Vertex>(), edges);
}

inline VertexSet set_of(Vertex n, std::initializer_list<Vertex> v) { return VertexSet(n, v); }

}  // namespace forge::test
