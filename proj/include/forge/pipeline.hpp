#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/connector.hpp"
#include "forge/expander.hpp"
#include "forge/graph.hpp"
#include "forge/rational.hpp"
#include "forge/structures.hpp"

namespace forge {

enum class PipelineMode { theory, desk };

// Structural counts and caps used in desk mode. Zero means "derive".
struct DeskOverrides {
    std::int64_t h1 = 4;            // second-level branches per unit
    std::int64_t h2 = 2;            // leaves per unit star
    std::int64_t h3 = 4;            // unit branch length cap
    std::int64_t h4 = 6;            // branches per web
    std::int64_t h5 = 0;            // web branch length cap
    std::int64_t unit_count = 0;    // units harvested per web round
    std::int64_t web_count = 8;
    std::int64_t star_leaves = 3;   // leaves per harvested star
    std::int64_t web_link_cap = 6;  // ball-to-leaf path through V2
    std::int64_t link_cap = 12;     // leaf-to-leaf path between webs
    std::int64_t ell = 0;           // ball radius
};

struct PipelineConfig {
    PipelineMode mode = PipelineMode::desk;
    Rational alpha{1, 16};
    Rational beta{1, 2};
    double eps = 0.1;
    double k = 0;  // 0: eps * d
    DeskOverrides desk;
    std::uint64_t seed = 1;
    int bipartition_retries = 5;
    int connect_retries = 5;
    double c = 0.25;
    double T = 16;
    double p = 1;                 // log power in the crux-descent k
    double x = 25;
    double sparse_log_power = 1;  // sparse branch when d <= (n / ln^a n)^(1/3)
    double dense_m_power = 0;     // expander-web branch when C/ln C >= d^2 m^b
    bool bounded_degree = false;
    double degree_cap_factor = 10;
    double degree_cap_log_power = 10;
    std::int64_t crux_budget = 200'000;
    bool salvage = true;

    static PipelineConfig theory();
    static PipelineConfig desk_default() { return {}; }
    // Throws std::invalid_argument on non-positive overrides or bad ranges.
    void validate() const;
};

nlohmann::json config_to_json(const PipelineConfig& cfg);
// Missing keys keep their defaults; unknown keys throw std::invalid_argument.
PipelineConfig config_from_json(const nlohmann::json& j, PipelineConfig base = {});

// Used / over-used / bad labels computed from a path collection.
struct LinkLabels {
    // [web][unit][branch]
    std::vector<std::vector<std::vector<bool>>> used;
    std::vector<std::vector<bool>> over_used;
    std::vector<std::vector<bool>> occupied;
    std::vector<bool> bad;

    bool operator==(const LinkLabels&) const = default;
};

struct LinkRecord {
    int web_a = 0;
    int web_b = 0;
    int unit_a = -1;
    int unit_b = -1;
    // Unit core to unit core, through V2.
    Path path;
    std::string note;
};

struct WebRecord {
    Web web;
    std::int64_t interior_v1 = 0;
    std::int64_t interior_v2 = 0;
    std::int64_t units_offered = 0;
    std::int64_t dropped_branches = 0;
    std::vector<std::string> notes;
};

struct BuildTrace {
    std::string branch;
    std::vector<std::string> decisions;
    Vertex expander_order = 0;
    std::optional<std::int64_t> crux_lo, crux_hi;
    std::int64_t ell = 0;
    std::vector<std::uint64_t> bipartition_seeds;
    // Local ids of the graph the webs were built in, with its origin map.
    std::vector<Vertex> web_arena_origin;
    std::vector<WebRecord> webs;
    std::vector<LinkRecord> links;
    LinkLabels labels;
    std::vector<int> linked_webs;
    std::string certificate_source;
    std::optional<SubdivisionCertificate> certificate;
    std::vector<std::string> diagnostics;
};

nlohmann::json trace_to_json(const BuildTrace& trace);

// Harvests disjoint units in g[arena]. Their vertices avoid forbidden.
std::vector<Unit> build_units(const Graph& g, const VertexSet& arena, const VertexSet& forbidden,
                              const PipelineConfig& cfg, std::vector<std::string>* notes = nullptr);

// Context for one web: core choice inside V1 minus prior webs, branches to
// units through V2.
WebRecord build_web(const Graph& g, const Bipartition& part, const std::vector<Web>& prior,
                    const std::vector<Unit>& units, std::int64_t ell, std::int64_t ball_target,
                    const PipelineConfig& cfg);

// Labels exactly as defined from webs and the recorded links.
LinkLabels replay_labels(const Graph& g, const std::vector<Web>& webs, const std::vector<LinkRecord>& links);

struct LinkOutcome {
    std::vector<LinkRecord> links;
    LinkLabels labels;
    std::vector<int> chosen;  // good webs that are pairwise linked
    std::optional<SubdivisionCertificate> certificate;
    std::vector<std::string> diagnostics;
};

LinkOutcome link_webs(const Graph& g, const Bipartition& part, const std::vector<Web>& webs,
                      const PipelineConfig& cfg);

// Greedy: highest-degree branch candidates, pairwise shortest-path routing
// with used-vertex exclusion, shrinking t until every pair routes.
SubdivisionCertificate dense_fallback(const Graph& g, const PipelineConfig& cfg,
                                      std::vector<std::string>* notes = nullptr);

struct BoundedDegreeResult {
    ExpanderWitness witness;
    bool applied = false;
    std::int64_t cap = 0;
    std::vector<std::string> notes;
};

BoundedDegreeResult bounded_degree_pass(const Graph& root, const ExpanderWitness& w, const PipelineConfig& cfg);

// Full construction on root ids. Any certificate in the trace passes
// verify_certificate on g.
BuildTrace dispatch(const Graph& g, const PipelineConfig& cfg);

}  // namespace forge
