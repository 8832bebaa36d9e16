#include "forge/connector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

#include "forge/crux.hpp"
#include "forge/rng.hpp"

namespace forge {

void PathRequest::validate(const Graph& g) const {
    for (const VertexSet* s : {&x1, &x2, &forbidden}) {
        if (s->universe() != g.order()) throw std::invalid_argument("request set does not match graph order");
    }
    if (x1.empty() || x2.empty()) throw std::invalid_argument("request endpoints must be non-empty");
    if (x1.intersects(forbidden) || x2.intersects(forbidden)) {
        throw std::invalid_argument("request endpoints meet the forbidden set");
    }
}

std::int64_t robust_length_cap(Vertex n, const ExpansionParams& params) {
    double l = std::log(15.0 * n / params.k);
    if (l <= 0) return 1;
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(2.0 / params.epsilon * l * l * l - kLogTolerance)));
}

std::int64_t through_length_cap(double m) {
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(2.0 * m * m - kLogTolerance)));
}

namespace {

// Multi-source BFS from x1; internal vertices must satisfy `inner`.
std::optional<Path> shortest_between(const Graph& g, const VertexSet& x1, const VertexSet& x2,
                                     const std::function<bool(Vertex)>& inner) {
    const Vertex n = g.order();
    if (x1.intersects(x2)) return Path{(x1 & x2).to_vector().front()};
    std::vector<Vertex> parent(n, -2);
    std::vector<Vertex> queue;
    x1.for_each([&](Vertex v) {
        parent[v] = -1;
        queue.push_back(v);
    });
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex v = queue[head];
        for (Vertex y : g.neighbors(v)) {
            if (parent[y] != -2) continue;
            if (x2.contains(y)) {
                Path p{y};
                for (Vertex c = v; c != -1; c = parent[c]) p.push_back(c);
                std::reverse(p.begin(), p.end());
                return p;
            }
            if (!inner(y)) continue;
            parent[y] = v;
            queue.push_back(y);
        }
    }
    return std::nullopt;
}

void assert_path(const Graph& g, const Path& p, const PathRequest& req, std::int64_t cap, const VertexSet* side) {
    if (p.empty() || !req.x1.contains(p.front()) || !req.x2.contains(p.back())) {
        throw std::logic_error("connector returned a path with wrong endpoints");
    }
    if (static_cast<std::int64_t>(p.size()) - 1 > cap) throw std::logic_error("connector path exceeds its cap");
    VertexSet seen(g.order());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen.contains(p[i])) throw std::logic_error("connector path is not simple");
        seen.insert(p[i]);
        if (i > 0 && !g.adjacent(p[i - 1], p[i])) throw std::logic_error("connector path uses a non-edge");
        if (req.forbidden.contains(p[i])) throw std::logic_error("connector path enters the forbidden set");
        if (side && i > 0 && i + 1 < p.size() && !side->contains(p[i])) {
            throw std::logic_error("connector path leaves the through side");
        }
    }
}

}  // namespace

ConnectResult robust_connect(const Graph& g, const PathRequest& req, const ExpansionParams& params) {
    req.validate(g);
    ConnectResult out;
    out.cap = req.length_cap >= 0 ? req.length_cap : robust_length_cap(g.order(), params);
    double x = std::min(req.x1.count(), req.x2.count());
    double allowance = rho(x, params) * x / 4.0;
    if (req.forbidden.count() > allowance + kLogTolerance) {
        out.notes.push_back("forbidden set of " + std::to_string(req.forbidden.count()) +
                            " exceeds rho(x)x/4 = " + std::to_string(allowance));
    }
    auto p = shortest_between(g, req.x1, req.x2, [&](Vertex y) { return !req.forbidden.contains(y); });
    if (!p) {
        out.notes.push_back("x1 and x2 are disconnected in g - W");
        return out;
    }
    if (static_cast<std::int64_t>(p->size()) - 1 > out.cap) {
        out.notes.push_back("shortest path has length " + std::to_string(p->size() - 1) + " above cap " +
                            std::to_string(out.cap));
        return out;
    }
    assert_path(g, *p, req, out.cap, nullptr);
    out.path = std::move(p);
    return out;
}

VertexSet ConsecutivePaths::residual() const {
    VertexSet r = arena;
    for (const auto& p : paths) {
        for (Vertex v : p) r.erase(v);
    }
    r.insert(origin);
    return r;
}

namespace {

// Shortest origin -> target path inside allowed, or nullopt.
std::optional<Path> shortest_within(const Graph& g, Vertex origin, Vertex target, const VertexSet& allowed) {
    return shortest_between(g, VertexSet(g.order(), {origin}), VertexSet(g.order(), {target}),
                            [&](Vertex y) { return allowed.contains(y); });
}

}  // namespace

ConsecutivePaths extend_consecutive(const Graph& g, const ConsecutivePaths& cp, Vertex target) {
    VertexSet r = cp.residual();
    if (target == cp.origin) throw UnreachableError("target equals the origin");
    if (!r.contains(target)) {
        throw UnreachableError("target " + std::to_string(target) + " is outside the residual arena");
    }
    auto p = shortest_within(g, cp.origin, target, r);
    if (!p) throw UnreachableError("target " + std::to_string(target) + " unreachable in the residual arena");
    ConsecutivePaths out = cp;
    out.paths.push_back(std::move(*p));
    return out;
}

bool revalidate_consecutive(const Graph& g, const ConsecutivePaths& cp, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    VertexSet r = cp.arena;
    r.insert(cp.origin);
    for (std::size_t i = 0; i < cp.paths.size(); ++i) {
        const Path& p = cp.paths[i];
        std::string name = "path " + std::to_string(i);
        if (p.size() < 2 || p.front() != cp.origin) return fail(name + " does not start at the origin");
        for (std::size_t s = 0; s < p.size(); ++s) {
            if (!r.contains(p[s])) return fail(name + " leaves its residual arena at " + std::to_string(p[s]));
            if (s > 0 && !g.adjacent(p[s - 1], p[s])) return fail(name + " uses a non-edge");
        }
        auto best = shortest_within(g, cp.origin, p.back(), r);
        if (!best || best->size() != p.size()) return fail(name + " is not a shortest path in its residual arena");
        for (Vertex v : p) r.erase(v);
        r.insert(cp.origin);
    }
    return true;
}

Vertex default_ball_radius_cap(const Graph& g, std::int64_t D) {
    Vertex delta = g.min_degree();
    if (delta <= 0) return std::max<Vertex>(1, g.order());
    double v = std::ceil(std::log2(2.0 * static_cast<double>(D) / delta) - kLogTolerance);
    return std::max<Vertex>(1, static_cast<Vertex>(v));
}

BallGrowth grow_ball_avoiding(const Graph& g, Vertex v, const ConsecutivePaths& cp, std::int64_t D, Vertex ell_cap,
                              std::int64_t path_budget) {
    BallGrowth out;
    out.ell_cap = ell_cap >= 0 ? ell_cap : default_ball_radius_cap(g, D);
    out.ell_cap = std::max<Vertex>(out.ell_cap, 1);
    if (!(g.order() == 0 || min_degree_at_least_half_average(g))) {
        out.notes.push_back("minimum degree below d/2; radius bound not guaranteed");
    }
    if (path_budget >= 0 && static_cast<std::int64_t>(cp.paths.size()) > path_budget) {
        out.notes.push_back("more stored paths than the declared budget");
    }
    VertexSet blocked(g.order());
    for (const auto& p : cp.paths) {
        for (Vertex x : p) blocked.insert(x);
    }
    blocked.erase(v);
    Ball full = ball(g, VertexSet(g.order(), {v}), out.ell_cap, blocked);
    Vertex size = 0;
    Vertex ell = 0;
    for (Vertex r = 0; r <= out.ell_cap; ++r) {
        size += full.layers[r].count();
        ell = r;
        if (r >= 1 && size >= D) break;
    }
    full.layers.resize(ell + 1);
    out.ball = std::move(full);
    out.ell = ell;
    out.achieved = size;
    out.reached = size >= D;
    if (!out.reached) {
        out.notes.push_back("ball reached " + std::to_string(size) + " of " + std::to_string(D) + " at radius " +
                            std::to_string(ell));
    }
    return out;
}

Bipartition Bipartition::from_sets(const VertexSet& v1, std::uint64_t seed) {
    return {seed, v1, VertexSet::full(v1.universe()) - v1};
}

namespace {

double side_degree(const Graph& g, const VertexSet& s) {
    Vertex n = s.count();
    return n == 0 ? 0.0 : 2.0 * static_cast<double>(edges_within(g, s)) / n;
}

}  // namespace

BipartitionSample sample_bipartition(const Graph& g, std::uint64_t seed) {
    BipartitionSample out;
    Rng rng(seed);
    VertexSet v1(g.order());
    for (Vertex v = 0; v < g.order(); ++v) {
        if (fair_coin(rng)) v1.insert(v);
    }
    out.part = Bipartition::from_sets(v1, seed);
    out.d1 = side_degree(g, out.part.v1);
    out.d2 = side_degree(g, out.part.v2);
    double third = g.order() == 0 ? 0.0 : g.average_degree_real() / 3.0;
    out.meets_third = out.d1 >= third - kLogTolerance && out.d2 >= third - kLogTolerance;
    out.seeds_tried = {seed};
    return out;
}

BipartitionSample sample_bipartition(const Graph& g, std::uint64_t seed, int retries) {
    std::vector<std::uint64_t> tried;
    BipartitionSample last;
    for (int a = 0; a <= std::max(0, retries); ++a) {
        std::uint64_t s = a == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(a));
        last = sample_bipartition(g, s);
        tried.push_back(s);
        if (last.meets_third) break;
    }
    last.attempts = static_cast<int>(tried.size());
    last.seeds_tried = std::move(tried);
    return last;
}

ConnectResult connect_through(const Graph& g, const Bipartition& part, const PathRequest& req, double m, int side) {
    req.validate(g);
    if (side != 1 && side != 2) throw std::invalid_argument("side must be 1 or 2");
    const VertexSet& through = part.side(side);
    ConnectResult out;
    out.cap = req.length_cap >= 0 ? req.length_cap : through_length_cap(m);
    auto p = shortest_between(g, req.x1, req.x2,
                              [&](Vertex y) { return through.contains(y) && !req.forbidden.contains(y); });
    if (!p) {
        auto dist = bfs_distances(g, req.x1, req.forbidden);
        Vertex touched = 0;
        for (Vertex v = 0; v < g.order(); ++v) touched += dist[v] >= 0 && through.contains(v) ? 1 : 0;
        out.notes.push_back("no path through side " + std::to_string(side) + "; " + std::to_string(touched) +
                            " side vertices reachable in g - W");
        return out;
    }
    if (static_cast<std::int64_t>(p->size()) - 1 > out.cap) {
        out.notes.push_back("shortest path through side has length " + std::to_string(p->size() - 1) +
                            " above cap " + std::to_string(out.cap));
        return out;
    }
    assert_path(g, *p, req, out.cap, &through);
    out.path = std::move(p);
    return out;
}

Dichotomy expansion_dichotomy(const Graph& g, const VertexSet& u, std::int64_t lambda, double m) {
    if (u.empty()) throw std::invalid_argument("expansion_dichotomy needs a non-empty U");
    if (m <= 0 || lambda <= 0) throw std::invalid_argument("lambda and m must be positive");
    Dichotomy out;
    out.boundary = neighborhood(g, u);
    out.heavy = VertexSet(g.order());
    out.boundary.for_each([&](Vertex v) {
        std::int64_t c = 0;
        for (Vertex x : g.neighbors(v)) c += u.contains(x) ? 1 : 0;
        if (c >= lambda) out.heavy.insert(v);
    });
    const double size = u.count();
    out.threshold_a = g.average_degree_real() * size / (static_cast<double>(lambda) * m);
    out.threshold_b = size / m;
    out.a = out.boundary.count() >= out.threshold_a - kLogTolerance;
    out.b = out.heavy.count() >= out.threshold_b - kLogTolerance;
    return out;
}

StarsOrBipartite stars_or_bipartite(const Graph& g, const VertexSet& u, const VertexSet& w, std::int64_t lambda,
                                    double s, std::int64_t t_leaves, double m) {
    StarsOrBipartite out;
    if (u.empty()) throw std::invalid_argument("stars_or_bipartite needs a non-empty U");
    if (m <= 0) m = s / 8.0;
    if (s < 8 * m - kLogTolerance) out.notes.push_back("precondition s >= 8m unmet");
    if (t_leaves < 2 * lambda) out.notes.push_back("precondition t >= 2 lambda unmet");
    if (g.order() > 0 && g.average_degree_real() < 10.0 * t_leaves * m * lambda) {
        out.notes.push_back("precondition d >= 10 t m lambda unmet");
    }
    const double size = u.count();
    VertexSet taken = u | w;
    u.for_each([&](Vertex c) {
        if (w.contains(c)) return;
        std::vector<Vertex> leaves;
        for (Vertex y : g.neighbors(c)) {
            if (!taken.contains(y)) leaves.push_back(y);
            if (static_cast<std::int64_t>(leaves.size()) == t_leaves) break;
        }
        if (static_cast<std::int64_t>(leaves.size()) < t_leaves) return;
        for (Vertex y : leaves) taken.insert(y);
        out.stars.push_back({c, std::move(leaves)});
    });
    if (static_cast<double>(out.stars.size()) >= size / s - kLogTolerance && !out.stars.empty()) {
        out.kind = StarsOrBipartite::Kind::stars;
        return out;
    }
    std::vector<std::int64_t> load(g.order(), 0);
    const std::int64_t cap = 2 * t_leaves;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (u.contains(v) || w.contains(v)) continue;
        std::vector<Vertex> leaves;
        for (Vertex x : g.neighbors(v)) {
            if (u.contains(x) && !w.contains(x) && load[x] < cap) leaves.push_back(x);
            if (static_cast<std::int64_t>(leaves.size()) == lambda) break;
        }
        if (static_cast<std::int64_t>(leaves.size()) < lambda) continue;
        for (Vertex x : leaves) ++load[x];
        out.lambda_stars.push_back({v, std::move(leaves)});
    }
    if (static_cast<double>(out.lambda_stars.size()) >= size / (4.0 * m) - kLogTolerance &&
        !out.lambda_stars.empty()) {
        out.kind = StarsOrBipartite::Kind::bipartite;
        return out;
    }
    out.kind = StarsOrBipartite::Kind::shortfall;
    out.notes.push_back("only " + std::to_string(out.stars.size()) + " stars and " +
                        std::to_string(out.lambda_stars.size()) + " lambda-stars");
    return out;
}

WellExpanding well_expanding_subset(const Graph& g, const VertexSet& u, double kappa, double m) {
    if (u.empty()) throw std::invalid_argument("well_expanding_subset needs a non-empty U");
    WellExpanding out;
    out.subset = VertexSet(g.order());
    if (m > 0 && g.order() > 0 && kappa > g.average_degree_real() / m + kLogTolerance) {
        out.notes.push_back("kappa above d/m");
    }
    std::vector<char> in_sub(g.order(), 0), in_nb(g.order(), 0);
    std::int64_t boundary = 0;
    std::int64_t count = 0;
    std::vector<Vertex> pool = u.to_vector();
    while (true) {
        Vertex best = -1;
        std::int64_t best_boundary = -1;
        for (Vertex c : pool) {
            if (in_sub[c]) continue;
            std::int64_t fresh = 0;
            for (Vertex y : g.neighbors(c)) fresh += !in_sub[y] && !in_nb[y] ? 1 : 0;
            std::int64_t nb = boundary - (in_nb[c] ? 1 : 0) + fresh;
            if (nb > best_boundary) {
                best_boundary = nb;
                best = c;
            }
        }
        if (best < 0 || best_boundary < kappa * (count + 1) - kLogTolerance) break;
        in_sub[best] = 1;
        out.subset.insert(best);
        if (in_nb[best]) in_nb[best] = 0;
        for (Vertex y : g.neighbors(best)) {
            if (!in_sub[y]) in_nb[y] = 1;
        }
        boundary = best_boundary;
        ++count;
    }
    out.expands = count > 0 && boundary >= kappa * count - kLogTolerance;
    out.large = m > 0 && kappa > 0 && count > u.count() / (kappa * m);
    if (count == 0) out.notes.push_back("no single vertex of U expands by kappa");
    else if (!out.large) out.notes.push_back("subset not larger than |U|/(kappa m)");
    return out;
}

SprinkleResult sprinkled_ball(const Graph& g, std::uint64_t seed, const VertexSet& u, const VertexSet& w, double m) {
    const Vertex n = g.order();
    SprinkleResult out;
    const double q = 9.0 / 20.0;
    const std::int64_t ell = std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(m * m - kLogTolerance)));
    out.round_cap = ell;
    out.p = 1.0 - std::pow(10.0 / 11.0, 1.0 / static_cast<double>(ell - 1));
    const double early = 1.0 / 11.0;  // 1 - (1-p)^(ell-1)
    constexpr std::int64_t never = std::numeric_limits<std::int64_t>::max();

    // First round each vertex is sampled in.
    std::vector<std::int64_t> first(n, never);
    Rng rng(seed);
    const double log_keep = std::log1p(-out.p);
    out.sampled = VertexSet(n);
    for (Vertex v = 0; v < n; ++v) {
        double x = uniform_unit(rng);
        double y = uniform_unit(rng);
        if (x < early) {
            auto j = static_cast<std::int64_t>(std::floor(std::log1p(-x) / log_keep)) + 1;
            first[v] = std::clamp<std::int64_t>(j, 1, ell - 1);
        } else if (y < q) {
            first[v] = ell;
        }
        if (first[v] != never) out.sampled.insert(v);
    }

    std::vector<std::int64_t> entry(n, never);
    using Event = std::pair<std::int64_t, Vertex>;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
    Vertex live = 0;
    for (Vertex v = 0; v < n; ++v) live += w.contains(v) ? 0 : 1;
    Vertex reached = 0;
    u.for_each([&](Vertex v) {
        if (w.contains(v)) return;
        entry[v] = 0;
        ++reached;
        events.emplace(0, v);
    });
    while (!events.empty() && reached < live) {
        auto [r, v] = events.top();
        events.pop();
        if (r >= ell) break;
        for (Vertex z : g.neighbors(v)) {
            if (w.contains(z) || entry[z] != never) continue;
            entry[z] = r + 1;
            ++reached;
            out.rounds = std::max(out.rounds, r + 1);
            std::int64_t fire = std::max(r + 1, first[z]);
            if (first[z] != never && fire < ell) events.emplace(fire, z);
        }
    }
    out.reached = VertexSet(n);
    for (Vertex v = 0; v < n; ++v) {
        if (entry[v] != never) out.reached.insert(v);
    }
    out.reached_sampled = out.reached & out.sampled;
    out.success = 2 * static_cast<std::int64_t>(out.reached_sampled.count()) > out.sampled.count();
    return out;
}

nlohmann::json to_json(const ConnectResult& r) {
    nlohmann::json j = {{"cap", r.cap}, {"notes", r.notes}};
    j["path"] = r.path ? nlohmann::json(*r.path) : nlohmann::json(nullptr);
    return j;
}

}  // namespace forge
