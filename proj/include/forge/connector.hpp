#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "forge/expander.hpp"
#include "forge/graph.hpp"
#include "forge/structures.hpp"

namespace forge {

struct PathRequest {
    VertexSet x1;
    VertexSet x2;
    VertexSet forbidden;
    // Negative: use the operation's default cap.
    std::int64_t length_cap = -1;

    // Throws std::invalid_argument when x1 or x2 is empty or meets forbidden.
    void validate(const Graph& g) const;
};

struct ConnectResult {
    std::optional<Path> path;
    std::int64_t cap = 0;
    std::vector<std::string> notes;
};

// ceil((2/eps) ln^3(15n/k)), at least 1.
std::int64_t robust_length_cap(Vertex n, const ExpansionParams& params);

// Shortest x1-x2 path in g - forbidden (ties to smaller ids).
ConnectResult robust_connect(const Graph& g, const PathRequest& req, const ExpansionParams& params);

struct ConsecutivePaths {
    Vertex origin = 0;
    VertexSet arena;
    std::vector<Path> paths;

    // arena minus every stored path, origin kept.
    VertexSet residual() const;
};

class UnreachableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Appends a shortest origin-target path inside the residual arena.
ConsecutivePaths extend_consecutive(const Graph& g, const ConsecutivePaths& cp, Vertex target);
// Each stored path is a shortest path in the arena left by its predecessors.
bool revalidate_consecutive(const Graph& g, const ConsecutivePaths& cp, std::string* why = nullptr);

struct BallGrowth {
    Ball ball;
    Vertex achieved = 0;
    Vertex ell = 0;
    Vertex ell_cap = 0;
    bool reached = false;
    std::vector<std::string> notes;
};

// max(1, ceil(log2(2D / min_degree))).
Vertex default_ball_radius_cap(const Graph& g, std::int64_t D);

// Grows B^l(v) in g minus all path vertices but v for l = 1, 2, ... until
// the ball has D vertices or l hits the cap (negative: default cap).
BallGrowth grow_ball_avoiding(const Graph& g, Vertex v, const ConsecutivePaths& cp, std::int64_t D,
                              Vertex ell_cap = -1, std::int64_t path_budget = -1);

struct Bipartition {
    std::uint64_t seed = 0;
    VertexSet v1;
    VertexSet v2;

    static Bipartition from_sets(const VertexSet& v1, std::uint64_t seed = 0);
    const VertexSet& side(int which) const { return which == 1 ? v1 : v2; }
};

struct BipartitionSample {
    Bipartition part;
    double d1 = 0;
    double d2 = 0;
    bool meets_third = false;
    int attempts = 1;
    std::vector<std::uint64_t> seeds_tried;
};

// One fair coin per vertex in id order; heads go to v1.
BipartitionSample sample_bipartition(const Graph& g, std::uint64_t seed);
// Draws derived seeds until both sides have average degree >= d/3.
BipartitionSample sample_bipartition(const Graph& g, std::uint64_t seed, int retries);

// ceil(2 m^2).
std::int64_t through_length_cap(double m);

// Path from x1 to x2 whose internal vertices lie on the chosen side and
// avoid forbidden.
ConnectResult connect_through(const Graph& g, const Bipartition& part, const PathRequest& req, double m,
                              int side = 2);

struct Dichotomy {
    bool a = false;
    bool b = false;
    VertexSet boundary;
    VertexSet heavy;  // vertices outside U with >= lambda neighbours in U
    double threshold_a = 0;
    double threshold_b = 0;
};

Dichotomy expansion_dichotomy(const Graph& g, const VertexSet& u, std::int64_t lambda, double m);

struct StarsOrBipartite {
    enum class Kind { stars, bipartite, shortfall };
    Kind kind = Kind::shortfall;
    std::vector<Star> stars;
    // lambda-stars centred outside U with leaves in U; their centres form X.
    std::vector<Star> lambda_stars;
    std::vector<std::string> notes;
};

StarsOrBipartite stars_or_bipartite(const Graph& g, const VertexSet& u, const VertexSet& w, std::int64_t lambda,
                                    double s, std::int64_t t_leaves, double m = 0);

struct WellExpanding {
    VertexSet subset;
    bool expands = false;    // |N(U')| >= kappa |U'|
    bool large = false;      // |U'| > |U| / (kappa m)
    std::vector<std::string> notes;
};

WellExpanding well_expanding_subset(const Graph& g, const VertexSet& u, double kappa, double m);

struct SprinkleResult {
    VertexSet reached;
    VertexSet reached_sampled;  // reached vertices that belong to the union sample
    VertexSet sampled;
    std::int64_t rounds = 0;
    std::int64_t round_cap = 0;
    double p = 0;
    bool success = false;  // |reached_sampled| > |sampled| / 2
};

// ell = max(2, ceil(m^2)) rounds; rounds 1..ell-1 sample with p solving
// (1-p)^(ell-1) (1-q) = 1/2, the last with q = 9/20.
SprinkleResult sprinkled_ball(const Graph& g, std::uint64_t seed, const VertexSet& u, const VertexSet& w, double m);

nlohmann::json to_json(const ConnectResult& r);

}  // namespace forge
