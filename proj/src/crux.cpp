#include "forge/crux.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "forge/kernels.hpp"
#include "forge/rng.hpp"

namespace forge {

namespace {

using Wide = __int128;

void require_alpha(const Rational& alpha) {
    if (alpha <= Rational(0) || alpha >= Rational(1)) {
        throw std::invalid_argument("alpha must lie strictly between 0 and 1, got " + alpha.str());
    }
}

// e(S) * n * q >= p * e(G) * |S|
bool crux_condition(const Graph& g, const Rational& alpha, std::int64_t edges, std::int64_t order) {
    if (order <= 0) return false;
    Wide lhs = static_cast<Wide>(edges) * g.order() * alpha.den();
    Wide rhs = static_cast<Wide>(alpha.num()) * g.size() * order;
    return lhs >= rhs;
}

// Peels G[members] by minimum inner degree, returning the smallest prefix
// that is still an alpha-crux of g.
std::optional<std::vector<Vertex>> peel_smallest_crux(const Graph& g, const Rational& alpha,
                                                      const std::vector<Vertex>& members) {
    VertexSet alive(g.order(), members);
    std::vector<Vertex> deg(g.order(), 0);
    std::set<std::pair<Vertex, Vertex>> queue;
    std::int64_t edges = 0;
    for (Vertex v : members) {
        for (Vertex u : g.neighbors(v)) deg[v] += alive.contains(u) ? 1 : 0;
        edges += deg[v];
        queue.emplace(deg[v], v);
    }
    edges /= 2;
    std::int64_t order = static_cast<std::int64_t>(members.size());
    std::vector<Vertex> removal;
    std::int64_t best_order = -1;
    std::size_t best_removed = 0;
    while (!queue.empty()) {
        if (crux_condition(g, alpha, edges, order)) {
            best_order = order;
            best_removed = removal.size();
        }
        auto [dv, v] = *queue.begin();
        queue.erase(queue.begin());
        alive.erase(v);
        removal.push_back(v);
        --order;
        edges -= dv;
        for (Vertex u : g.neighbors(v)) {
            if (!alive.contains(u)) continue;
            queue.erase({deg[u], u});
            --deg[u];
            queue.emplace(deg[u], u);
        }
    }
    if (best_order < 0) return std::nullopt;
    VertexSet keep(g.order(), members);
    for (std::size_t i = 0; i < best_removed; ++i) keep.erase(removal[i]);
    return keep.to_vector();
}

bool set_less(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

std::vector<Vertex> top_degree(const Graph& g, std::span<const Vertex> pool, std::size_t count) {
    std::vector<Vertex> v(pool.begin(), pool.end());
    std::stable_sort(v.begin(), v.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    if (v.size() > count) v.resize(count);
    return v;
}

}  // namespace

bool is_alpha_crux(const Graph& g, const Rational& alpha, std::span<const Vertex> s) {
    if (s.empty()) return false;
    return crux_condition(g, alpha, edges_within(g, s), static_cast<std::int64_t>(s.size()));
}

std::int64_t crux_edge_need(const Graph& g, const Rational& alpha, std::int64_t s) {
    Wide num = static_cast<Wide>(alpha.num()) * g.size() * s;
    Wide den = static_cast<Wide>(g.order()) * alpha.den();
    return static_cast<std::int64_t>((num + den - 1) / den);
}

CruxResult crux_exact(const Graph& g, const Rational& alpha) {
    require_alpha(alpha);
    if (g.order() > 22) throw std::invalid_argument("crux_exact needs n <= 22");
    if (g.order() == 0) throw std::invalid_argument("crux of the empty graph");
    CruxResult out;
    out.alpha = alpha;
    out.status = CruxStatus::exact;
    auto mg = kernels::MaskGraph::from(g);
    for (Vertex s = 1; s <= g.order(); ++s) {
        auto search = kernels::crux_search(mg, s, crux_edge_need(g, alpha, s), kernels::Exec::parallel);
        out.nodes += search.nodes;
        if (search.witness) {
            out.lo = out.hi = s;
            out.witness = kernels::mask_members(*search.witness);
            return out;
        }
    }
    throw std::logic_error("no alpha-crux found, yet G itself is one");
}

CruxResult crux_bounded(const Graph& g, const Rational& alpha, std::int64_t budget) {
    require_alpha(alpha);
    if (g.order() == 0) throw std::invalid_argument("crux of the empty graph");
    CruxResult out;
    out.alpha = alpha;
    std::vector<Vertex> all(g.order());
    for (Vertex v = 0; v < g.order(); ++v) all[v] = v;

    std::vector<Vertex> best = all;
    auto consider = [&](const std::optional<std::vector<Vertex>>& cand) {
        if (cand && set_less(*cand, best)) best = *cand;
    };
    consider(peel_smallest_crux(g, alpha, all));
    const VertexSet none(g.order());
    auto probe_balls = [&](std::span<const Vertex> centers) {
        for (Vertex c : centers) {
            Ball b = ball(g, VertexSet(g.order(), {c}), 2, none);
            VertexSet acc(g.order());
            for (Vertex r = 0; r <= 2; ++r) {
                acc |= b.layers[r];
                if (acc.count() >= static_cast<Vertex>(best.size()) && r > 0) break;
                consider(peel_smallest_crux(g, alpha, acc.to_vector()));
            }
        }
    };
    probe_balls(top_degree(g, all, 16));
    probe_balls(top_degree(g, best, 16));
    out.hi = static_cast<std::int64_t>(best.size());
    out.witness = best;

    // alpha*d(G) <= d(H) <= |H| - 1.
    Rational clique_bound = alpha * g.average_degree();
    out.lo = std::min<std::int64_t>(out.hi, clique_bound.ceil() + 1);
    out.lo = std::max<std::int64_t>(out.lo, 1);
    if (clique_bound == Rational(0)) out.lo = 1;

    std::int64_t remaining = budget;
    if (g.order() <= kernels::kMaxMaskOrder && out.lo < out.hi) {
        auto mg = kernels::MaskGraph::from(g);
        for (std::int64_t s = out.lo; s < out.hi && remaining > 0; ++s) {
            auto search = kernels::crux_search(mg, static_cast<Vertex>(s), crux_edge_need(g, alpha, s),
                                               kernels::Exec::serial, remaining);
            out.nodes += search.nodes;
            remaining -= search.nodes;
            if (search.witness) {
                out.hi = s;
                out.witness = kernels::mask_members(*search.witness);
                out.lo = s;
                break;
            }
            if (search.exhausted) break;
            out.lo = s + 1;
        }
    } else if (out.lo < out.hi) {
        out.assumptions.push_back("graph too large for exhaustive refinement; lo is the clique bound");
    }
    if (out.lo == out.hi) {
        out.status = CruxStatus::exact;
        // Canonical witness: smallest lexicographic set of the final order.
        if (g.order() <= kernels::kMaxMaskOrder && remaining > 0) {
            auto mg = kernels::MaskGraph::from(g);
            auto search = kernels::crux_search(mg, static_cast<Vertex>(out.hi),
                                               crux_edge_need(g, alpha, out.hi), kernels::Exec::serial, remaining);
            out.nodes += search.nodes;
            if (search.witness) out.witness = kernels::mask_members(*search.witness);
        }
    }

    // Expansion probe in the spirit of the K-expansion fact: if small probed
    // sets expand by K, guess C_alpha >= (K+1) * L. Not a proof.
    if (min_degree_at_least_half_average(g) && alpha <= Rational(1, 4)) {
        const double K = 1.0 / (2.0 * alpha.to_double()) - 1.0;
        std::int64_t smallest_bad = g.order();
        std::int64_t largest_ok = 0;
        std::vector<std::pair<std::int64_t, bool>> probes;
        for (Vertex c : top_degree(g, all, 32)) {
            Ball b = ball(g, VertexSet(g.order(), {c}), 3, none);
            VertexSet acc(g.order());
            for (Vertex r = 0; r <= 3; ++r) {
                acc |= b.layers[r];
                Vertex size = acc.count();
                if (size == g.order()) break;
                bool ok = neighborhood(g, acc).count() >= K * size - kLogTolerance;
                if (!ok) smallest_bad = std::min<std::int64_t>(smallest_bad, size);
                probes.emplace_back(size, ok);
            }
        }
        for (auto [size, ok] : probes) {
            if (ok && size < smallest_bad) largest_ok = std::max(largest_ok, size);
        }
        auto guess = static_cast<std::int64_t>(std::floor((K + 1.0) * largest_ok));
        out.heuristic_lo = std::clamp<std::int64_t>(guess, out.lo, out.hi);
        out.assumptions.push_back("heuristic_lo assumes every set of size <= " + std::to_string(largest_ok) +
                                  " expands by K=" + std::to_string(K) +
                                  " as the probed balls around 32 top-degree vertices do");
    }
    return out;
}

DenseReport is_dense(const Graph& g, const DenseParams& p, CheckMode mode) {
    if (p.D < 1) throw std::invalid_argument("D must be at least 1");
    if (p.mu <= Rational(0) || p.mu > Rational(1)) throw std::invalid_argument("mu must lie in (0,1]");
    DenseReport out;
    out.mode = mode;
    const Vertex n = g.order();
    if (n == 0) return out;
    const Wide E = g.size();
    std::vector<std::int64_t> need(n + 1, -1);
    for (std::int64_t w = 0; w < std::min<std::int64_t>(p.D, n); ++w) {
        // e(G-W) * n * den >= num * E * (n - w)
        Wide num = static_cast<Wide>(p.mu.num()) * E * (n - w);
        Wide den = static_cast<Wide>(n) * p.mu.den();
        need[w] = static_cast<std::int64_t>((num + den - 1) / den);
    }
    if (mode.kind == CheckMode::Kind::exhaustive) {
        if (n > 20) throw std::invalid_argument("exhaustive density check needs n <= 20");
        auto scan = kernels::dense_scan(kernels::MaskGraph::from(g), need, kernels::Exec::parallel);
        out.checked = scan.checked;
        if (scan.violator) {
            out.pass = false;
            out.violating = kernels::mask_members(*scan.violator);
        }
        return out;
    }
    auto remaining_edges = [&](const std::vector<Vertex>& w) {
        VertexSet ws(n, w);
        std::int64_t removed = 0;
        for (Vertex v : w) removed += g.degree(v);
        return g.size() - removed + edges_within(g, ws);
    };
    std::vector<std::vector<Vertex>> tried;
    const std::int64_t max_w = std::min<std::int64_t>(p.D - 1, n - 1);
    std::vector<Vertex> by_degree(n);
    for (Vertex v = 0; v < n; ++v) by_degree[v] = v;
    std::stable_sort(by_degree.begin(), by_degree.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    for (std::int64_t s = 1; s <= max_w; ++s) {
        std::vector<Vertex> w(by_degree.begin(), by_degree.begin() + s);
        std::sort(w.begin(), w.end());
        tried.push_back(std::move(w));
    }
    for (int t = 0; t < mode.trials && max_w >= 1; ++t) {
        Rng rng(derive_seed(mode.seed, static_cast<std::uint64_t>(t)));
        auto s = static_cast<Vertex>(1 + uniform_below(rng, static_cast<std::uint64_t>(max_w)));
        std::vector<Vertex> perm(n);
        for (Vertex i = 0; i < n; ++i) perm[i] = i;
        for (Vertex i = 0; i < s; ++i) std::swap(perm[i], perm[i + uniform_below(rng, n - i)]);
        perm.resize(s);
        std::sort(perm.begin(), perm.end());
        tried.push_back(std::move(perm));
    }
    for (const auto& w : tried) {
        ++out.checked;
        if (remaining_edges(w) < need[w.size()]) {
            if (out.pass || set_less(w, out.violating)) out.violating = w;
            out.pass = false;
        }
    }
    return out;
}

std::string to_string(CheckOutcome o) {
    switch (o) {
        case CheckOutcome::pass: return "pass";
        case CheckOutcome::fail: return "fail";
        case CheckOutcome::precondition_violated: return "precondition_violated";
    }
    return "unknown";
}

bool min_degree_at_least_half_average(const Graph& g) {
    if (g.order() == 0) return false;
    // delta >= e/n
    return static_cast<std::int64_t>(g.min_degree()) * g.order() >= g.size();
}

TheoremCheck check_lemma_robust(const Graph& g, const Rational& alpha) {
    TheoremCheck out;
    if (g.order() == 0 || g.order() > 20) {
        out.outcome = CheckOutcome::precondition_violated;
        out.detail = "needs 1 <= n <= 20 for exhaustive checking";
        return out;
    }
    if (!min_degree_at_least_half_average(g)) {
        out.outcome = CheckOutcome::precondition_violated;
        out.detail = "minimum degree below d/2";
        return out;
    }
    if (alpha <= Rational(0) || alpha > Rational(1, 5)) {
        out.outcome = CheckOutcome::precondition_violated;
        out.detail = "alpha must lie in (0, 1/5]";
        return out;
    }
    auto crux = crux_exact(g, alpha);
    out.crux = crux.hi;
    DenseParams p{(crux.hi + 1) / 2, (Rational(1) - Rational(3) * alpha) / Rational(4)};
    auto report = is_dense(g, p, CheckMode::exhaustive());
    if (report.pass) {
        out.detail = "dense with D=" + std::to_string(p.D) + ", mu=" + p.mu.str();
    } else {
        out.outcome = CheckOutcome::fail;
        out.counterexample = report.violating;
        out.detail = "removing the counterexample drops d below mu*d(G) with D=" + std::to_string(p.D) +
                     ", mu=" + p.mu.str();
    }
    return out;
}

TheoremCheck check_lemma_kexpan(const Graph& g, const Rational& alpha, const Rational& K) {
    TheoremCheck out;
    if (g.order() == 0 || g.order() > 18) {
        out.outcome = CheckOutcome::precondition_violated;
        out.detail = "needs 1 <= n <= 18 for exhaustive checking";
        return out;
    }
    if (!min_degree_at_least_half_average(g)) {
        out.outcome = CheckOutcome::precondition_violated;
        out.detail = "minimum degree below d/2";
        return out;
    }
    if (K <= Rational(0) || alpha <= Rational(0) || alpha > Rational(1) / (Rational(2) * K + Rational(2))) {
        out.outcome = CheckOutcome::precondition_violated;
        out.detail = "needs K > 0 and 0 < alpha <= 1/(2K+2)";
        return out;
    }
    auto crux = crux_exact(g, alpha);
    out.crux = crux.hi;
    const std::int64_t limit = (Rational(crux.hi) / (K + Rational(1))).floor();
    const Vertex n = g.order();
    std::vector<std::int64_t> need(n + 1, -1);
    for (std::int64_t s = 1; s <= std::min<std::int64_t>(limit, n); ++s) need[s] = (K * Rational(s)).ceil();
    auto scan = kernels::expansion_scan(kernels::MaskGraph::from(g), need, kernels::Exec::parallel);
    if (scan.violators.empty()) {
        out.detail = "all " + std::to_string(scan.checked) + " sets of size <= " + std::to_string(limit) +
                     " expand by " + K.str();
    } else {
        out.outcome = CheckOutcome::fail;
        out.counterexample = kernels::mask_members(scan.violators.front());
        out.detail = "set with |N(X)| < K|X| inside the guaranteed size range";
    }
    return out;
}

}  // namespace forge
