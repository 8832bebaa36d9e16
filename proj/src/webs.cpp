#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "forge/pipeline.hpp"

namespace forge {

namespace {

// BFS from `from` up to depth cap; vertices in `stop` are reached but not
// expanded. Returns the first reached vertex accepted by want(vertex, parent).
std::optional<Path> nearest(const Graph& g, Vertex from, std::int64_t cap, const VertexSet& allowed,
                            const VertexSet& stop, const std::function<bool(Vertex, Vertex)>& want) {
    std::vector<Vertex> parent(g.order(), -2), depth(g.order(), 0);
    std::vector<Vertex> queue{from};
    parent[from] = -1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex v = queue[head];
        if (depth[v] >= cap) continue;
        for (Vertex y : g.neighbors(v)) {
            if (parent[y] != -2 || !allowed.contains(y)) continue;
            parent[y] = v;
            depth[y] = depth[v] + 1;
            if (want(y, v)) {
                Path p;
                for (Vertex c = y; c != -1; c = parent[c]) p.push_back(c);
                std::reverse(p.begin(), p.end());
                return p;
            }
            if (!stop.contains(y)) queue.push_back(y);
        }
    }
    return std::nullopt;
}

// Hub plus h1 shortest branches, each ending at the nearest vertex that still
// has h2 free neighbours off the path; those neighbours become its leaves.
std::optional<Unit> grow_unit(const Graph& g, Vertex hub, const VertexSet& free, const DeskOverrides& dk) {
    VertexSet allowed = free;
    allowed.erase(hub);
    const VertexSet none(g.order());
    Unit u;
    u.core = hub;
    u.h2 = dk.h2;
    u.h3 = dk.h3;
    auto leaf_room = [&](Vertex c, Vertex parent) {
        std::int64_t k = 0;
        for (Vertex y : g.neighbors(c)) k += allowed.contains(y) && y != parent ? 1 : 0;
        return k;
    };
    while (u.h1() < dk.h1) {
        auto p = nearest(g, hub, dk.h3, allowed, none,
                         [&](Vertex c, Vertex parent) { return leaf_room(c, parent) >= dk.h2; });
        if (!p) return std::nullopt;
        for (std::size_t i = 1; i < p->size(); ++i) allowed.erase((*p)[i]);
        Star st{p->back(), {}};
        for (Vertex y : g.neighbors(st.center)) {
            if (!allowed.contains(y)) continue;
            st.leaves.push_back(y);
            allowed.erase(y);
            if (static_cast<std::int64_t>(st.leaves.size()) == dk.star_leaves) break;
        }
        u.branches.push_back(std::move(*p));
        u.stars.push_back(std::move(st));
    }
    return u;
}

}  // namespace

std::vector<Unit> build_units(const Graph& g, const VertexSet& arena, const VertexSet& forbidden,
                              const PipelineConfig& cfg, std::vector<std::string>* notes) {
    const auto& dk = cfg.desk;
    const std::int64_t want = dk.unit_count > 0 ? dk.unit_count : 2 * dk.h4;
    VertexSet free = arena - forbidden;
    std::vector<Unit> units;
    for (Vertex hub = 0; hub < g.order() && static_cast<std::int64_t>(units.size()) < want; ++hub) {
        if (!free.contains(hub)) continue;
        std::int64_t room = 0;
        for (Vertex y : g.neighbors(hub)) room += free.contains(y) ? 1 : 0;
        if (room < dk.h1) continue;
        auto u = grow_unit(g, hub, free, dk);
        if (!u) continue;
        auto report = validate_unit(g, *u);
        if (!report.ok) throw std::logic_error("built an invalid unit: " + report.message);
        free -= vertices(*u, g.order());
        units.push_back(std::move(*u));
    }
    if (notes && static_cast<std::int64_t>(units.size()) < want) {
        notes->push_back("built " + std::to_string(units.size()) + " of " + std::to_string(want) + " units");
    }
    return units;
}

namespace {

std::int64_t web_star_floor(const PipelineConfig& cfg) { return std::max<std::int64_t>(1, (cfg.desk.h2 + 1) / 2); }
std::int64_t web_unit_floor(const PipelineConfig& cfg) { return std::max<std::int64_t>(1, (cfg.desk.h1 + 1) / 2); }

VertexSet all_vertices(const std::vector<Web>& webs, Vertex n) {
    VertexSet s(n);
    for (const auto& w : webs) s |= vertices(w, n);
    return s;
}

bool simple(const Path& p) {
    std::vector<Vertex> s = p;
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
}

}  // namespace

WebRecord build_web(const Graph& g, const Bipartition& part, const std::vector<Web>& prior,
                    const std::vector<Unit>& units, std::int64_t ell, std::int64_t ball_target,
                    const PipelineConfig& cfg) {
    const Vertex n = g.order();
    const auto& dk = cfg.desk;
    WebRecord rec;
    rec.units_offered = static_cast<std::int64_t>(units.size());
    if (units.empty()) {
        rec.notes.push_back("no units available");
        return rec;
    }
    ell = std::max<std::int64_t>(1, ell);
    const VertexSet w1 = all_vertices(prior, n);
    Subgraph side = induced(g, part.v1 - w1);
    Subgraph h = side.compose(min_degree_peel(side.graph));
    if (h.graph.size() == 0) {
        rec.notes.push_back("V1 minus earlier webs has no edges");
        return rec;
    }
    {
        Subgraph full = induced(g, part.v1);
        Subgraph hh = full.compose(min_degree_peel(full.graph));
        double dh = hh.graph.average_degree_real();
        double dw = side.graph.order() ? side.graph.average_degree_real() : 0.0;
        if (dw < dh / 10.0) rec.notes.push_back("d(H - W1) below d(H)/10");
    }
    Vertex core_local = 0;
    for (Vertex v = 1; v < h.graph.order(); ++v) {
        if (h.graph.degree(v) > h.graph.degree(core_local)) core_local = v;
    }
    const Vertex core = h.lift(core_local);

    ConsecutivePaths cp;
    cp.origin = core_local;
    cp.arena = ball(h.graph, VertexSet(h.graph.order(), {core_local}), static_cast<Vertex>(ell)).vertices();

    VertexSet w4(n);
    std::vector<std::pair<int, int>> leaf_owner(n, {-1, -1});
    for (std::size_t i = 0; i < units.size(); ++i) {
        w4 |= interior(units[i], n);
        for (std::size_t s = 0; s < units[i].stars.size(); ++s) {
            for (Vertex l : units[i].stars[s].leaves) leaf_owner[l] = {static_cast<int>(i), static_cast<int>(s)};
        }
    }
    std::vector<char> endpoint(units.size(), 0);
    VertexSet qv2(n);
    std::vector<Path> qs;
    std::vector<std::pair<int, int>> ends;
    const std::int64_t target = std::max<std::int64_t>(1, ball_target);

    for (std::int64_t s = 0; s < dk.h4; ++s) {
        BallGrowth grown = grow_ball_avoiding(h.graph, core_local, cp, target, static_cast<Vertex>(ell));
        VertexSet x1 = h.lift(grown.ball.vertices(), n);
        VertexSet x2(n);
        for (std::size_t i = 0; i < units.size(); ++i) {
            if (endpoint[i]) continue;
            exterior(units[i], n).for_each([&](Vertex l) {
                if (!qv2.contains(l) && !w1.contains(l)) x2.insert(l);
            });
        }
        if (x2.empty()) {
            rec.notes.push_back("no available units after " + std::to_string(s) + " branches");
            break;
        }
        PathRequest req{x1, x2, w1 | w4 | qv2, dk.web_link_cap};
        ConnectResult res = connect_through(g, part, req, 0, 2);
        if (!res.path) {
            rec.notes.push_back("branch " + std::to_string(s) + ": " +
                                (res.notes.empty() ? std::string("no path") : res.notes.front()));
            break;
        }
        const Path& q = *res.path;
        Vertex w = q.front();
        Path p{core};
        if (w != core) {
            cp = extend_consecutive(h.graph, cp, h.local(w));
            p = h.lift(cp.paths.back());
        }
        auto [ui, si] = leaf_owner[q.back()];
        const Unit& u = units[ui];
        Path r{u.stars[si].center};
        const Path& b = u.branches[si];
        for (auto it = b.rbegin() + 1; it != b.rend(); ++it) r.push_back(*it);
        Path full = p;
        full.insert(full.end(), q.begin() + 1, q.end());
        full.insert(full.end(), r.begin(), r.end());
        if (!simple(full)) throw std::logic_error("web branch is not simple");
        for (Vertex v : full) {
            if (part.v2.contains(v)) qv2.insert(v);
        }
        endpoint[ui] = 1;
        qs.push_back(std::move(full));
        ends.push_back({ui, si});
    }

    Web web;
    web.core = core;
    web.h5 = dk.h5 > 0 ? dk.h5 : ell + dk.web_link_cap + dk.h3 + 1;
    VertexSet ctr(n);
    for (const auto& q : qs) ctr |= VertexSet(n, q);
    const std::int64_t star_floor = web_star_floor(cfg);
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (static_cast<std::int64_t>(qs[i].size()) - 1 > web.h5) {
            ++rec.dropped_branches;
            rec.notes.push_back("branch " + std::to_string(i) + " longer than h5");
            continue;
        }
        const Unit& src = units[ends[i].first];
        Unit u;
        u.core = src.core;
        u.h2 = star_floor;
        u.h3 = src.h3;
        for (std::size_t s = 0; s < src.stars.size(); ++s) {
            if (static_cast<int>(s) == ends[i].second) continue;
            Star st = src.stars[s];
            std::erase_if(st.leaves, [&](Vertex l) { return ctr.contains(l); });
            // Overused: at least half of the leaves sit on web branches.
            if (static_cast<std::int64_t>(st.leaves.size()) < star_floor) continue;
            u.branches.push_back(src.branches[s]);
            u.stars.push_back(std::move(st));
        }
        if (static_cast<std::int64_t>(u.branches.size()) < web_unit_floor(cfg)) {
            ++rec.dropped_branches;
            rec.notes.push_back("unit behind branch " + std::to_string(i) + " is bad");
            continue;
        }
        web.branches.push_back(qs[i]);
        web.units.push_back(std::move(u));
    }
    if (web.branches.empty()) {
        rec.notes.push_back("web at core " + std::to_string(core) + " has no branches");
        return rec;
    }
    auto report = validate_web(g, web);
    if (!report.ok) throw std::logic_error("built an invalid web: " + report.rule + ": " + report.message);
    VertexSet in = interior(web, n);
    rec.interior_v1 = (in & part.v1).count();
    rec.interior_v2 = (in & part.v2).count();
    rec.web = std::move(web);
    return rec;
}

LinkLabels replay_labels(const Graph& g, const std::vector<Web>& webs, const std::vector<LinkRecord>& links) {
    const Vertex n = g.order();
    VertexSet vp(n);
    for (const auto& l : links) {
        for (Vertex v : l.path) vp.insert(v);
    }
    LinkLabels out;
    for (std::size_t w = 0; w < webs.size(); ++w) {
        const Web& web = webs[w];
        auto& used = out.used.emplace_back();
        auto& over = out.over_used.emplace_back();
        out.occupied.emplace_back(web.units.size(), false);
        std::int64_t over_count = 0;
        for (const Unit& u : web.units) {
            auto& ub = used.emplace_back();
            std::int64_t used_count = 0;
            for (std::size_t b = 0; b < u.branches.size(); ++b) {
                std::int64_t hit = 0;
                for (Vertex l : u.stars[b].leaves) hit += vp.contains(l) ? 1 : 0;
                bool on_branch = false;
                for (std::size_t i = 1; i < u.branches[b].size(); ++i) on_branch |= vp.contains(u.branches[b][i]);
                bool x = 2 * hit > static_cast<std::int64_t>(u.stars[b].leaves.size()) || on_branch;
                ub.push_back(x);
                used_count += x ? 1 : 0;
            }
            bool o = 2 * used_count > static_cast<std::int64_t>(u.branches.size());
            over.push_back(o);
            over_count += o ? 1 : 0;
        }
        // Bad: more than a quarter of the units over-used.
        out.bad.push_back(4 * over_count > static_cast<std::int64_t>(web.units.size()));
    }
    for (const auto& l : links) {
        if (l.unit_a >= 0) out.occupied[l.web_a][l.unit_a] = true;
        if (l.unit_b >= 0) out.occupied[l.web_b][l.unit_b] = true;
    }
    return out;
}

namespace {

// Largest vertex set of `cand` pairwise joined in adj; lexicographically
// smallest among the largest.
std::vector<int> max_clique(const std::vector<int>& cand, const std::vector<std::vector<char>>& adj) {
    std::vector<int> best, cur;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (cur.size() > best.size()) best = cur;
        for (std::size_t i = from; i < cand.size(); ++i) {
            if (cur.size() + (cand.size() - i) <= best.size()) return;
            int v = cand[i];
            bool ok = std::all_of(cur.begin(), cur.end(), [&](int u) { return adj[u][v] != 0; });
            if (!ok) continue;
            cur.push_back(v);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return best;
}

// Unit core -> branch -> star centre -> leaf.
Path unit_route(const Unit& u, int branch, Vertex leaf) {
    Path p = u.branches[branch];
    p.push_back(leaf);
    return p;
}

}  // namespace

LinkOutcome link_webs(const Graph& g, const Bipartition& part, const std::vector<Web>& webs,
                      const PipelineConfig& cfg) {
    const Vertex n = g.order();
    LinkOutcome out;
    VertexSet blocked(n);
    std::vector<std::tuple<int, int, int>> owner(n, {-1, -1, -1});
    for (std::size_t w = 0; w < webs.size(); ++w) {
        blocked |= center(webs[w], n);
        for (std::size_t u = 0; u < webs[w].units.size(); ++u) {
            const Unit& un = webs[w].units[u];
            blocked |= interior(un, n);
            for (std::size_t b = 0; b < un.stars.size(); ++b) {
                for (Vertex l : un.stars[b].leaves) owner[l] = {static_cast<int>(w), static_cast<int>(u), static_cast<int>(b)};
            }
        }
    }
    VertexSet vp(n);
    std::vector<std::vector<char>> linked(webs.size(), std::vector<char>(webs.size(), 0));
    auto open_leaves = [&](int w) {
        LinkLabels now = replay_labels(g, webs, out.links);
        VertexSet x(n);
        const Web& web = webs[w];
        for (std::size_t u = 0; u < web.units.size(); ++u) {
            if (now.occupied[w][u] || now.over_used[w][u]) continue;
            for (std::size_t b = 0; b < web.units[u].stars.size(); ++b) {
                if (now.used[w][u][b]) continue;
                for (Vertex l : web.units[u].stars[b].leaves) {
                    if (!vp.contains(l)) x.insert(l);
                }
            }
        }
        return x;
    };
    for (std::size_t a = 0; a < webs.size(); ++a) {
        for (std::size_t b = a + 1; b < webs.size(); ++b) {
            VertexSet xa = open_leaves(static_cast<int>(a));
            VertexSet xb = open_leaves(static_cast<int>(b));
            std::string pair = std::to_string(a) + "-" + std::to_string(b);
            if (xa.empty() || xb.empty()) {
                out.diagnostics.push_back("pair " + pair + ": no open leaves");
                continue;
            }
            PathRequest req{xa, xb, blocked | vp, cfg.desk.link_cap};
            ConnectResult res = connect_through(g, part, req, 0, 2);
            if (!res.path) {
                out.diagnostics.push_back("pair " + pair + ": " +
                                          (res.notes.empty() ? std::string("no path") : res.notes.front()));
                continue;
            }
            auto [wa, ua, ba] = owner[res.path->front()];
            auto [wb, ub, bb] = owner[res.path->back()];
            Path full = unit_route(webs[wa].units[ua], ba, res.path->front());
            full.insert(full.end(), res.path->begin() + 1, res.path->end());
            Path tail = unit_route(webs[wb].units[ub], bb, res.path->back());
            full.insert(full.end(), tail.rbegin() + 1, tail.rend());
            if (!simple(full)) throw std::logic_error("link path is not simple");
            for (Vertex v : full) vp.insert(v);
            linked[a][b] = linked[b][a] = 1;
            out.links.push_back({wa, wb, ua, ub, std::move(full), ""});
        }
    }
    out.labels = replay_labels(g, webs, out.links);
    std::vector<int> good;
    for (std::size_t w = 0; w < webs.size(); ++w) {
        if (!out.labels.bad[w]) good.push_back(static_cast<int>(w));
    }
    for (std::size_t i = 0; i < good.size(); ++i) {
        for (std::size_t j = i + 1; j < good.size(); ++j) {
            if (!linked[good[i]][good[j]]) {
                out.diagnostics.push_back("good webs " + std::to_string(good[i]) + " and " + std::to_string(good[j]) +
                                          " are not linked");
            }
        }
    }
    out.chosen = max_clique(good, linked);
    if (out.chosen.empty()) return out;
    std::map<std::pair<int, int>, const LinkRecord*> by_pair;
    for (const auto& l : out.links) by_pair[{l.web_a, l.web_b}] = &l;
    SubdivisionCertificate cert;
    for (int w : out.chosen) cert.branch.push_back(webs[w].core);
    for (std::size_t i = 0; i < out.chosen.size(); ++i) {
        for (std::size_t j = i + 1; j < out.chosen.size(); ++j) {
            const LinkRecord& l = *by_pair.at({out.chosen[i], out.chosen[j]});
            Path p = webs[l.web_a].branches[l.unit_a];
            p.insert(p.end(), l.path.begin() + 1, l.path.end());
            const Path& back = webs[l.web_b].branches[l.unit_b];
            p.insert(p.end(), back.rbegin() + 1, back.rend());
            cert.paths[{static_cast<int>(i), static_cast<int>(j)}] = std::move(p);
        }
    }
    auto report = verify_certificate(g, cert);
    if (!report.ok) throw std::logic_error("linked webs gave an invalid certificate: " + report.violation);
    out.certificate = std::move(cert);
    return out;
}

SubdivisionCertificate dense_fallback(const Graph& g, const PipelineConfig&, std::vector<std::string>* notes) {
    const Vertex n = g.order();
    if (n == 0) throw std::invalid_argument("dense_fallback on the empty graph");
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    int t = static_cast<int>(std::min<Vertex>(n, g.max_degree() + 1));
    while (t >= 1) {
        SubdivisionCertificate cert;
        cert.branch.assign(order.begin(), order.begin() + t);
        VertexSet blocked(n, cert.branch);
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < t; ++i) {
            for (int j = i + 1; j < t; ++j) pairs.push_back({i, j});
        }
        std::stable_partition(pairs.begin(), pairs.end(), [&](auto pr) {
            return g.adjacent(cert.branch[pr.first], cert.branch[pr.second]);
        });
        std::int64_t routed = 0;
        bool ok = true;
        for (auto [i, j] : pairs) {
            VertexSet allowed = VertexSet::full(n) - blocked;
            allowed.insert(cert.branch[j]);
            auto p = nearest(g, cert.branch[i], n, allowed, VertexSet(n),
                             [&](Vertex y, Vertex) { return y == cert.branch[j]; });
            if (!p) {
                ok = false;
                break;
            }
            for (std::size_t s = 1; s + 1 < p->size(); ++s) blocked.insert((*p)[s]);
            cert.paths[{i, j}] = std::move(*p);
            ++routed;
        }
        if (ok) {
            auto report = verify_certificate(g, cert);
            if (!report.ok) throw std::logic_error("dense fallback produced an invalid certificate: " + report.violation);
            return cert;
        }
        // Jump to the largest t whose pair count fits what was routed.
        int fit = static_cast<int>(std::floor((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(routed))) / 2.0));
        int next = std::min(t - 1, std::max(fit + 1, 1));
        if (notes) notes->push_back("t=" + std::to_string(t) + " routed " + std::to_string(routed) + " pairs");
        t = next;
    }
    throw std::logic_error("dense fallback failed on a non-empty graph");
}

}  // namespace forge
