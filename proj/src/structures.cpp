#include "forge/structures.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>
#include <stdexcept>

namespace forge {

ValidationReport ValidationReport::failure(std::string rule, std::vector<Vertex> offending, std::string message) {
    ValidationReport r;
    r.ok = false;
    r.rule = std::move(rule);
    r.offending = std::move(offending);
    r.message = std::move(message);
    return r;
}

namespace {

bool in_range(const Graph& g, Vertex v) { return v >= 0 && v < g.order(); }

// Walk of adjacent, distinct vertices from `from` to `to`.
std::optional<ValidationReport> check_path(const Graph& g, const Path& p, Vertex from, Vertex to,
                                           std::int64_t max_len, const std::string& what) {
    if (p.size() < 2) return ValidationReport::failure("branch_length", p, what + " has no edge");
    if (p.front() != from || p.back() != to) {
        return ValidationReport::failure("branch_endpoints", {p.front(), p.back()}, what + " has wrong endpoints");
    }
    if (static_cast<std::int64_t>(p.size()) - 1 > max_len) {
        return ValidationReport::failure("branch_length", p, what + " longer than " + std::to_string(max_len));
    }
    std::set<Vertex> seen;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (!in_range(g, p[i])) return ValidationReport::failure("vertex_range", {p[i]}, what + " leaves the graph");
        if (!seen.insert(p[i]).second) return ValidationReport::failure("path_simple", {p[i]}, what + " repeats a vertex");
        if (i > 0 && !g.adjacent(p[i - 1], p[i])) {
            return ValidationReport::failure("path_edge", {p[i - 1], p[i]}, what + " uses a non-edge");
        }
    }
    return std::nullopt;
}

// Paths sharing only `hub`.
std::optional<ValidationReport> check_internally_disjoint(const std::vector<Path>& paths, Vertex hub,
                                                          const std::string& what) {
    std::map<Vertex, std::size_t> owner;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        for (Vertex v : paths[i]) {
            if (v == hub) continue;
            auto [it, fresh] = owner.emplace(v, i);
            if (!fresh) {
                return ValidationReport::failure("branch_disjoint", {v},
                                                 what + " " + std::to_string(it->second) + " and " +
                                                     std::to_string(i) + " share a vertex");
            }
        }
    }
    return std::nullopt;
}

}  // namespace

ValidationReport validate_unit(const Graph& g, const Unit& u) {
    if (u.branches.empty()) return ValidationReport::failure("degenerate", {u.core}, "unit without branches");
    if (u.stars.size() != u.branches.size()) {
        return ValidationReport::failure("star_count", {u.core}, "need one star per branch");
    }
    if (!in_range(g, u.core)) return ValidationReport::failure("vertex_range", {u.core}, "core outside graph");
    for (std::size_t i = 0; i < u.branches.size(); ++i) {
        const auto& b = u.branches[i];
        Vertex end = b.empty() ? -1 : b.back();
        if (end != u.stars[i].center) {
            return ValidationReport::failure("star_center", {u.stars[i].center},
                                             "star " + std::to_string(i) + " is not centred at its branch end");
        }
        if (auto bad = check_path(g, b, u.core, end, u.h3, "branch " + std::to_string(i))) return *bad;
    }
    if (auto bad = check_internally_disjoint(u.branches, u.core, "branches")) return *bad;
    VertexSet on_branches(g.order());
    for (const auto& b : u.branches) on_branches |= VertexSet(g.order(), b);
    VertexSet leaves(g.order());
    for (std::size_t i = 0; i < u.stars.size(); ++i) {
        const auto& s = u.stars[i];
        if (static_cast<std::int64_t>(s.leaves.size()) < u.h2) {
            return ValidationReport::failure("star_size", {s.center},
                                             "star " + std::to_string(i) + " has fewer than " + std::to_string(u.h2) +
                                                 " leaves");
        }
        for (Vertex l : s.leaves) {
            if (!in_range(g, l)) return ValidationReport::failure("vertex_range", {l}, "leaf outside graph");
            if (!g.adjacent(l, s.center)) {
                return ValidationReport::failure("star_edge", {s.center, l}, "leaf not adjacent to its centre");
            }
            if (on_branches.contains(l)) {
                return ValidationReport::failure("leaf_on_branch", {l}, "leaf lies on a branch");
            }
            if (leaves.contains(l)) return ValidationReport::failure("star_disjoint", {l}, "leaf used twice");
            leaves.insert(l);
        }
    }
    return {};
}

ValidationReport validate_web(const Graph& g, const Web& w) {
    if (w.branches.empty()) return ValidationReport::failure("degenerate", {w.core}, "web without branches");
    if (w.units.size() != w.branches.size()) {
        return ValidationReport::failure("unit_count", {w.core}, "need one unit per branch");
    }
    if (!in_range(g, w.core)) return ValidationReport::failure("vertex_range", {w.core}, "core outside graph");
    for (std::size_t i = 0; i < w.branches.size(); ++i) {
        if (auto bad = check_path(g, w.branches[i], w.core, w.units[i].core, w.h5,
                                  "web branch " + std::to_string(i))) {
            return *bad;
        }
    }
    if (auto bad = check_internally_disjoint(w.branches, w.core, "web branches")) return *bad;
    VertexSet ctr = center(w, g.order());
    VertexSet taken(g.order());
    for (std::size_t i = 0; i < w.units.size(); ++i) {
        const Unit& u = w.units[i];
        auto inner = validate_unit(g, u);
        if (!inner.ok) {
            inner.message = "unit " + std::to_string(i) + ": " + inner.message;
            return inner;
        }
        VertexSet vu = vertices(u, g.order());
        if (vu.intersects(taken)) {
            return ValidationReport::failure("unit_disjoint", (vu & taken).to_vector(), "units overlap");
        }
        taken |= vu;
        VertexSet ext = exterior(u, g.order());
        if (ext.intersects(ctr)) {
            return ValidationReport::failure("ext_ctr_overlap", (ext & ctr).to_vector(),
                                             "unit " + std::to_string(i) + " leaf lies on a web branch");
        }
        VertexSet rest = vu;
        rest.erase(u.core);
        if (rest.intersects(ctr)) {
            return ValidationReport::failure("unit_branch_overlap", (rest & ctr).to_vector(),
                                             "unit " + std::to_string(i) + " meets a web branch");
        }
    }
    return {};
}

VertexSet vertices(const Unit& u, Vertex n) {
    VertexSet s(n);
    s.insert(u.core);
    for (const auto& b : u.branches) {
        for (Vertex v : b) s.insert(v);
    }
    for (const auto& st : u.stars) {
        s.insert(st.center);
        for (Vertex l : st.leaves) s.insert(l);
    }
    return s;
}

VertexSet exterior(const Unit& u, Vertex n) {
    VertexSet s(n);
    for (const auto& st : u.stars) {
        for (Vertex l : st.leaves) s.insert(l);
    }
    return s;
}

VertexSet interior(const Unit& u, Vertex n) { return vertices(u, n) - exterior(u, n); }

VertexSet vertices(const Web& w, Vertex n) {
    VertexSet s = center(w, n);
    for (const auto& u : w.units) s |= vertices(u, n);
    return s;
}

VertexSet exterior(const Web& w, Vertex n) {
    VertexSet s(n);
    for (const auto& u : w.units) s |= exterior(u, n);
    return s;
}

VertexSet interior(const Web& w, Vertex n) { return vertices(w, n) - exterior(w, n); }

VertexSet center(const Web& w, Vertex n) {
    VertexSet s(n);
    s.insert(w.core);
    for (const auto& b : w.branches) {
        for (Vertex v : b) s.insert(v);
    }
    return s;
}

SubdivisionCertificate SubdivisionCertificate::canonical() const {
    std::vector<int> order(branch.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return branch[a] < branch[b]; });
    std::vector<int> rank(branch.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);
    SubdivisionCertificate out;
    for (int i : order) out.branch.push_back(branch[i]);
    for (const auto& [key, p] : paths) {
        int a = rank[key.first], b = rank[key.second];
        Path q = p;
        if (a > b) {
            std::swap(a, b);
            std::reverse(q.begin(), q.end());
        }
        out.paths[{a, b}] = std::move(q);
    }
    return out;
}

nlohmann::json certificate_to_json(const SubdivisionCertificate& cert) {
    nlohmann::json paths = nlohmann::json::object();
    for (const auto& [key, p] : cert.paths) {
        paths[std::to_string(key.first) + "-" + std::to_string(key.second)] = p;
    }
    return {{"t", cert.t()}, {"branch", cert.branch}, {"paths", paths}};
}

SubdivisionCertificate certificate_from_json(const nlohmann::json& j) {
    try {
        SubdivisionCertificate cert;
        cert.branch = j.at("branch").get<std::vector<Vertex>>();
        if (j.contains("t") && j.at("t").get<int>() != cert.t()) {
            throw std::invalid_argument("t does not match the number of branch vertices");
        }
        for (const auto& [key, value] : j.at("paths").items()) {
            auto dash = key.find('-');
            if (dash == std::string::npos) throw std::invalid_argument("path key '" + key + "' is not 'i-j'");
            int a = std::stoi(key.substr(0, dash));
            int b = std::stoi(key.substr(dash + 1));
            cert.paths[{a, b}] = value.get<Path>();
        }
        return cert;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad certificate JSON: ") + e.what());
    } catch (const std::logic_error& e) {
        throw std::invalid_argument(std::string("bad certificate JSON: ") + e.what());
    }
}

CertificateReport verify_certificate(const Graph& g, const SubdivisionCertificate& cert) {
    CertificateReport r;
    auto fail = [&](std::string why) {
        r.ok = false;
        r.violation = std::move(why);
        return r;
    };
    const int t = cert.t();
    if (t < 1) return fail("no branch vertices");
    std::vector<int> branch_index(g.order(), -1);
    for (int i = 0; i < t; ++i) {
        Vertex b = cert.branch[i];
        if (!in_range(g, b)) return fail("branch vertex " + std::to_string(b) + " outside the graph");
        if (branch_index[b] >= 0) return fail("branch vertex " + std::to_string(b) + " listed twice");
        branch_index[b] = i;
    }
    const std::size_t expected = static_cast<std::size_t>(t) * (t - 1) / 2;
    if (cert.paths.size() != expected) {
        return fail("expected " + std::to_string(expected) + " paths, got " + std::to_string(cert.paths.size()));
    }
    std::vector<char> used(g.order(), 0);
    r.vertices_used = t;
    for (const auto& [key, p] : cert.paths) {
        auto [i, j] = key;
        std::string name = std::to_string(i) + "-" + std::to_string(j);
        if (i < 0 || j < 0 || i >= t || j >= t || i >= j) return fail("bad pair key " + name);
        if (p.size() < 2) return fail("path " + name + " has no edge");
        if (p.front() != cert.branch[i] || p.back() != cert.branch[j]) return fail("path " + name + " has wrong endpoints");
        for (std::size_t s = 0; s < p.size(); ++s) {
            if (!in_range(g, p[s])) return fail("path " + name + " leaves the graph");
            if (s > 0 && !g.adjacent(p[s - 1], p[s])) {
                return fail("path " + name + " uses non-edge " + std::to_string(p[s - 1]) + " " + std::to_string(p[s]));
            }
            if (s == 0 || s + 1 == p.size()) continue;
            if (branch_index[p[s]] >= 0) return fail("path " + name + " passes through branch vertex " + std::to_string(p[s]));
            if (used[p[s]]) return fail("path " + name + " reuses vertex " + std::to_string(p[s]));
            used[p[s]] = 1;
            ++r.vertices_used;
        }
        r.max_path_length = std::max<std::int64_t>(r.max_path_length, static_cast<std::int64_t>(p.size()) - 1);
    }
    return r;
}

namespace {

class PathSystemSearch {
public:
    PathSystemSearch(const Graph& g, std::vector<Vertex> branch, std::atomic<std::int64_t>& nodes,
                     std::int64_t budget)
        : g_(g), branch_(std::move(branch)), nodes_(nodes), budget_(budget), used_(g.order(), 0),
          index_(g.order(), -1), on_path_(g.order(), 0) {
        const int t = static_cast<int>(branch_.size());
        for (int i = 0; i < t; ++i) index_[branch_[i]] = i;
        for (int i = 0; i < t; ++i) {
            for (int j = i + 1; j < t; ++j) pairs_.emplace_back(i, j);
        }
        // Adjacent pairs first: they are cheap and constrain the rest.
        std::stable_sort(pairs_.begin(), pairs_.end(), [&](auto a, auto b) {
            return adjacent(a) > adjacent(b);
        });
        pending_.assign(t, t - 1);
    }

    bool solve() { return step(0); }
    bool exhausted() const { return exhausted_; }
    SubdivisionCertificate certificate() const {
        SubdivisionCertificate c;
        c.branch = branch_;
        c.paths = chosen_;
        return c;
    }

private:
    bool adjacent(std::pair<int, int> p) const { return g_.adjacent(branch_[p.first], branch_[p.second]); }

    bool tick() {
        std::int64_t n = ++nodes_;
        if (budget_ >= 0 && n > budget_) exhausted_ = true;
        return !exhausted_;
    }

    bool free(Vertex v) const { return index_[v] < 0 && !used_[v]; }

    // Each branch vertex needs a distinct first edge per pending path.
    bool ports_ok() const {
        for (std::size_t a = 0; a < branch_.size(); ++a) {
            if (pending_[a] == 0) continue;
            int avail = 0;
            for (Vertex y : g_.neighbors(branch_[a])) {
                if (free(y)) {
                    ++avail;
                } else if (index_[y] >= 0 && !chosen_.contains(std::minmax(static_cast<int>(a), index_[y]))) {
                    ++avail;
                }
            }
            if (avail < pending_[a]) return false;
        }
        return true;
    }

    bool step(std::size_t k) {
        if (!tick()) return false;
        if (k == pairs_.size()) return true;
        if (!ports_ok()) return false;
        auto [i, j] = pairs_[k];
        Vertex from = branch_[i], to = branch_[j];
        auto accept = [&](const Path& p) {
            for (std::size_t s = 1; s + 1 < p.size(); ++s) used_[p[s]] = 1;
            chosen_[{i, j}] = p;
            --pending_[i];
            --pending_[j];
            bool done = step(k + 1);
            if (!done) {
                ++pending_[i];
                ++pending_[j];
                chosen_.erase({i, j});
                for (std::size_t s = 1; s + 1 < p.size(); ++s) used_[p[s]] = 0;
            }
            return done;
        };
        if (g_.adjacent(from, to) && accept(Path{from, to})) return true;
        if (exhausted_) return false;
        Path walk{from};
        on_path_[from] = 1;
        bool done = extend(walk, to, accept);
        on_path_[from] = 0;
        return done;
    }

    template <class Accept>
    bool extend(Path& walk, Vertex to, Accept& accept) {
        if (!tick()) return false;
        for (Vertex y : g_.neighbors(walk.back())) {
            if (y == to && walk.size() >= 2) {
                walk.push_back(to);
                bool done = accept(walk);
                walk.pop_back();
                if (done) return true;
                if (exhausted_) return false;
                continue;
            }
            if (!free(y) || on_path_[y]) continue;
            walk.push_back(y);
            on_path_[y] = 1;
            bool done = extend(walk, to, accept);
            on_path_[y] = 0;
            walk.pop_back();
            if (done) return true;
            if (exhausted_) return false;
        }
        return false;
    }

    const Graph& g_;
    std::vector<Vertex> branch_;
    std::atomic<std::int64_t>& nodes_;
    std::int64_t budget_;
    std::vector<char> used_;
    std::vector<int> index_;
    std::vector<char> on_path_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> pending_;
    std::map<std::pair<int, int>, Path> chosen_;
    bool exhausted_ = false;
};

void combinations(const std::vector<Vertex>& pool, int t, std::vector<std::vector<Vertex>>& out) {
    std::vector<int> idx(t);
    for (int i = 0; i < t; ++i) idx[i] = i;
    const int m = static_cast<int>(pool.size());
    while (true) {
        std::vector<Vertex> c(t);
        for (int i = 0; i < t; ++i) c[i] = pool[idx[i]];
        out.push_back(std::move(c));
        int i = t - 1;
        while (i >= 0 && idx[i] == m - t + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

BruteForceResult find_subdivision_bruteforce(const Graph& g, int t, std::int64_t budget) {
    if (t < 1) throw std::invalid_argument("t must be positive");
    BruteForceResult out;
    std::vector<Vertex> pool;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (g.degree(v) >= t - 1) pool.push_back(v);
    }
    if (static_cast<int>(pool.size()) < t) return out;
    std::vector<std::vector<Vertex>> combos;
    combinations(pool, t, combos);
    std::atomic<std::int64_t> nodes{0};
    std::atomic<std::int64_t> best{std::numeric_limits<std::int64_t>::max()};
    std::atomic<bool> exhausted{false};
    std::vector<std::optional<SubdivisionCertificate>> found(combos.size());
    const auto count = static_cast<std::int64_t>(combos.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < count; ++c) {
        if (c > best.load() || exhausted.load()) continue;
        PathSystemSearch search(g, combos[c], nodes, budget);
        if (search.solve()) {
            found[c] = search.certificate().canonical();
            std::int64_t cur = best.load();
            while (c < cur && !best.compare_exchange_weak(cur, c)) {
            }
        } else if (search.exhausted()) {
            exhausted = true;
        }
    }
    out.nodes = nodes.load();
    for (std::int64_t c = 0; c < count; ++c) {
        if (found[c]) {
            out.certificate = found[c];
            return out;
        }
    }
    out.budget_exhausted = exhausted.load();
    return out;
}

}  // namespace forge
