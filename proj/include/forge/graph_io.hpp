#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "forge/graph.hpp"

namespace forge {

class ParseError : public GraphError {
public:
    ParseError(int line, const std::string& what)
        : GraphError("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Edge-list text: first non-comment line is n, then one "u v" pair per line.
// Blank lines and lines starting with '#' are ignored.
Graph parse_edge_list(std::istream& in);
Graph read_graph(const std::filesystem::path& path);
void write_edge_list(const Graph& g, std::ostream& out);
void write_graph(const Graph& g, const std::filesystem::path& path);

nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

}  // namespace forge
