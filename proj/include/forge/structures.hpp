#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "forge/graph.hpp"

namespace forge {

struct Star {
    Vertex center = 0;
    std::vector<Vertex> leaves;
};

// Core u with branches u -> x_i (length <= h3), each ending at the centre of a
// star with at least h2 leaves.
struct Unit {
    Vertex core = 0;
    std::vector<Path> branches;
    std::vector<Star> stars;
    std::int64_t h2 = 1;
    std::int64_t h3 = 1;

    std::int64_t h1() const { return static_cast<std::int64_t>(branches.size()); }
};

// Core v with branches v -> u_i (length <= h5), each ending at the core of a unit.
struct Web {
    Vertex core = 0;
    std::vector<Path> branches;
    std::vector<Unit> units;
    std::int64_t h5 = 1;

    std::int64_t h4() const { return static_cast<std::int64_t>(branches.size()); }
};

struct ValidationReport {
    bool ok = true;
    std::string rule;
    std::vector<Vertex> offending;
    std::string message;

    static ValidationReport failure(std::string rule, std::vector<Vertex> offending, std::string message);
};

ValidationReport validate_unit(const Graph& g, const Unit& u);
ValidationReport validate_web(const Graph& g, const Web& w);

VertexSet vertices(const Unit& u, Vertex n);
VertexSet exterior(const Unit& u, Vertex n);
VertexSet interior(const Unit& u, Vertex n);
VertexSet vertices(const Web& w, Vertex n);
VertexSet exterior(const Web& w, Vertex n);
VertexSet interior(const Web& w, Vertex n);
VertexSet center(const Web& w, Vertex n);

struct SubdivisionCertificate {
    std::vector<Vertex> branch;
    // Key (i, j) with i < j: path from branch[i] to branch[j].
    std::map<std::pair<int, int>, Path> paths;

    int t() const { return static_cast<int>(branch.size()); }
    // Sorts branch vertices and reorients paths to match.
    SubdivisionCertificate canonical() const;
};

nlohmann::json certificate_to_json(const SubdivisionCertificate& cert);
// Throws std::invalid_argument on schema errors; does not verify against a graph.
SubdivisionCertificate certificate_from_json(const nlohmann::json& j);

struct CertificateReport {
    bool ok = true;
    std::string violation;
    std::int64_t max_path_length = 0;
    std::int64_t vertices_used = 0;
};

CertificateReport verify_certificate(const Graph& g, const SubdivisionCertificate& cert);

struct BruteForceResult {
    std::optional<SubdivisionCertificate> certificate;
    bool budget_exhausted = false;
    std::int64_t nodes = 0;
};

// Exact search over branch sets and path systems; a negative budget means
// unlimited. Without a certificate and with budget_exhausted unset, the graph
// has no TK_t.
BruteForceResult find_subdivision_bruteforce(const Graph& g, int t, std::int64_t budget = -1);

}  // namespace forge
