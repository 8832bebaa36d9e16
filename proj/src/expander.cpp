#include "forge/expander.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "forge/kernels.hpp"
#include "forge/rng.hpp"

namespace forge {

void ExpansionParams::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
    if (!(k >= 1.0)) throw std::invalid_argument("k must be at least 1");
}

double rho(double x, const ExpansionParams& params) {
    if (x < params.k / 5.0) return 0.0;
    double l = std::log(15.0 * x / params.k);
    return params.epsilon / (l * l);
}

std::pair<Vertex, Vertex> expansion_window(Vertex n, const ExpansionParams& params) {
    Vertex lo = std::max<Vertex>(1, static_cast<Vertex>(std::ceil(params.k / 2.0 - kLogTolerance)));
    Vertex hi = static_cast<Vertex>((2 * static_cast<std::int64_t>(n)) / 3);
    return {lo, hi};
}

std::string CheckMode::str() const {
    if (kind == Kind::exhaustive) return "exhaustive";
    return "sampled(" + std::to_string(trials) + "," + std::to_string(seed) + ")";
}

std::string to_string(Certification c) {
    switch (c) {
        case Certification::verified_exhaustive: return "verified_exhaustive";
        case Certification::verified_sampled: return "verified_sampled";
        case Certification::extracted_unverified: return "extracted_unverified";
    }
    return "unknown";
}

namespace {

// Smallest integer boundary size that is not a violation for |X| = s.
std::int64_t required_boundary(Vertex s, const ExpansionParams& params) {
    return static_cast<std::int64_t>(std::ceil(rho(s, params) * s - kLogTolerance));
}

std::vector<std::int64_t> need_table(Vertex n, const ExpansionParams& params) {
    auto [lo, hi] = expansion_window(n, params);
    std::vector<std::int64_t> need(n + 1, -1);
    for (Vertex s = lo; s <= std::min(hi, n); ++s) need[s] = required_boundary(s, params);
    return need;
}

// Deletes the cut edges of the boundary vertices that are cheapest to cut off
// from x, within the edge budget. Cheapest-first removes the most boundary
// vertices possible for this x.
ExpansionViolation adversarial_cut(const Graph& g, const std::vector<Vertex>& x, double budget) {
    VertexSet in(g.order(), x);
    std::vector<std::pair<Vertex, Vertex>> cost;  // (crossing edges, vertex)
    neighborhood(g, in).for_each([&](Vertex y) {
        Vertex c = 0;
        for (Vertex u : g.neighbors(y)) c += in.contains(u) ? 1 : 0;
        cost.emplace_back(c, y);
    });
    std::sort(cost.begin(), cost.end());
    ExpansionViolation out;
    out.set = x;
    double spent = 0;
    std::size_t removed = 0;
    for (auto [c, y] : cost) {
        if (spent + c > budget + kLogTolerance) break;
        spent += c;
        ++removed;
        for (Vertex u : g.neighbors(y)) {
            if (in.contains(u)) out.deleted.emplace_back(std::min(u, y), std::max(u, y));
        }
    }
    std::sort(out.deleted.begin(), out.deleted.end());
    out.boundary = static_cast<Vertex>(cost.size() - removed);
    return out;
}

void record(ExpansionReport& report, ExpansionViolation v) {
    report.pass = false;
    ++report.violation_count;
    if (report.violations.size() < kMaxReportedViolations) report.violations.push_back(std::move(v));
}

std::vector<Vertex> random_subset(Vertex n, Vertex size, Rng& rng) {
    std::vector<Vertex> perm(n);
    for (Vertex i = 0; i < n; ++i) perm[i] = i;
    for (Vertex i = 0; i < size; ++i) {
        Vertex j = i + static_cast<Vertex>(uniform_below(rng, n - i));
        std::swap(perm[i], perm[j]);
    }
    perm.resize(size);
    std::sort(perm.begin(), perm.end());
    return perm;
}

}  // namespace

ExpansionReport check_expander(const Graph& g, const ExpansionParams& params, CheckMode mode, bool robust) {
    params.validate();
    ExpansionReport report;
    report.mode = mode;
    report.robust = robust;
    const Vertex n = g.order();
    if (n == 0) return report;
    const double d = g.average_degree_real();
    auto [lo, hi] = expansion_window(n, params);
    if (robust) report.note = "robust check deletes cut edges adversarially per tested set";

    if (mode.kind == CheckMode::Kind::exhaustive) {
        if (n > 20) throw std::invalid_argument("exhaustive expansion check needs n <= 20");
        auto mg = kernels::MaskGraph::from(g);
        auto need = need_table(n, params);
        auto scan = kernels::expansion_scan(mg, need, kernels::Exec::parallel);
        report.sets_checked = scan.checked;
        std::vector<kernels::Mask> failing = scan.violators;
        if (robust) {
            // Every set in the window is tried against the adversary, so the
            // merged list stays in (size, lex) order.
            failing.clear();
            std::set<kernels::Mask> plain(scan.violators.begin(), scan.violators.end());
            for (std::uint64_t xm = 0; xm < (std::uint64_t{1} << n); ++xm) {
                auto x = static_cast<kernels::Mask>(xm);
                if (need[std::popcount(x)] < 0) continue;
                failing.push_back(x);
            }
            std::sort(failing.begin(), failing.end(), kernels::mask_less);
            for (auto x : failing) {
                auto members = kernels::mask_members(x);
                double r = rho(members.size(), params);
                double required = r * members.size();
                if (plain.contains(x)) {
                    record(report, {members, static_cast<Vertex>(std::popcount(mg.boundary(x))), required, {}});
                    continue;
                }
                auto cut = adversarial_cut(g, members, d * r * members.size());
                if (cut.boundary < required - kLogTolerance) {
                    cut.required = required;
                    record(report, std::move(cut));
                }
            }
            return report;
        }
        for (auto x : failing) {
            auto members = kernels::mask_members(x);
            record(report, {members, static_cast<Vertex>(std::popcount(mg.boundary(x))),
                            rho(members.size(), params) * members.size(), {}});
        }
        return report;
    }

    if (lo > hi) return report;
    const int trials = std::max(0, mode.trials);
    std::vector<std::optional<ExpansionViolation>> found(trials);
#pragma omp parallel for schedule(dynamic, 8)
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(mode.seed, static_cast<std::uint64_t>(t)));
        Vertex size = lo + static_cast<Vertex>(uniform_below(rng, hi - lo + 1));
        auto x = random_subset(n, size, rng);
        double r = rho(size, params);
        double required = r * size;
        Vertex boundary = neighborhood(g, VertexSet(n, x)).count();
        if (boundary < required - kLogTolerance) {
            found[t] = ExpansionViolation{x, boundary, required, {}};
        } else if (robust) {
            auto cut = adversarial_cut(g, x, d * r * size);
            if (cut.boundary < required - kLogTolerance) {
                cut.required = required;
                found[t] = std::move(cut);
            }
        }
    }
    report.sets_checked = trials;
    for (auto& f : found) {
        if (f) record(report, std::move(*f));
    }
    return report;
}

Subgraph min_degree_peel(const Graph& g) {
    const Vertex n = g.order();
    std::vector<Vertex> deg(n);
    std::set<std::pair<Vertex, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        queue.emplace(deg[v], v);
    }
    VertexSet alive = VertexSet::full(n);
    std::int64_t edges = g.size();
    std::int64_t count = n;
    while (!queue.empty()) {
        auto [dv, v] = *queue.begin();
        if (static_cast<std::int64_t>(dv) * count >= edges) break;
        queue.erase(queue.begin());
        alive.erase(v);
        --count;
        edges -= dv;
        for (Vertex u : g.neighbors(v)) {
            if (!alive.contains(u)) continue;
            queue.erase({deg[u], u});
            --deg[u];
            queue.emplace(deg[u], u);
        }
    }
    return induced(g, alive);
}

namespace {

struct Candidates {
    std::vector<std::vector<Vertex>> sets;
    bool exhaustive = false;
};

constexpr std::size_t kCandidateLimit = 64;
constexpr Vertex kProbeCenters = 32;

Candidates find_violators(const Graph& h, const ExpansionParams& params) {
    Candidates out;
    const Vertex n = h.order();
    auto [lo, hi] = expansion_window(n, params);
    if (n <= 20) {
        out.exhaustive = true;
        auto need = need_table(n, params);
        auto scan = kernels::expansion_scan(kernels::MaskGraph::from(h), need, kernels::Exec::parallel);
        for (std::size_t i = 0; i < scan.violators.size() && i < kCandidateLimit; ++i) {
            out.sets.push_back(kernels::mask_members(scan.violators[i]));
        }
        return out;
    }
    auto in_window = [&](Vertex s) { return s >= lo && s <= hi; };
    std::set<std::vector<Vertex>> found;
    for (auto& comp : components(h)) {
        if (in_window(static_cast<Vertex>(comp.size())) && required_boundary(comp.size(), params) > 0) {
            found.insert(comp);
        }
    }
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return h.degree(a) < h.degree(b); });
    std::vector<Vertex> centers(order.begin(), order.begin() + std::min(n, kProbeCenters / 2));
    for (Vertex i = 0; i < kProbeCenters / 2; ++i) centers.push_back(static_cast<Vertex>((static_cast<std::int64_t>(i) * n) / (kProbeCenters / 2)));
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
    const VertexSet none(n);
    for (Vertex c : centers) {
        auto dist = bfs_distances(h, VertexSet(n, {c}), none);
        Vertex radius = *std::max_element(dist.begin(), dist.end());
        std::vector<Vertex> layer_size(radius + 2, 0);
        for (Vertex v = 0; v < n; ++v) {
            if (dist[v] >= 0) ++layer_size[dist[v]];
        }
        Vertex inside = 0;
        for (Vertex r = 0; r <= radius; ++r) {
            inside += layer_size[r];
            Vertex boundary = layer_size[r + 1];
            if (in_window(inside) && boundary < required_boundary(inside, params)) {
                std::vector<Vertex> x;
                for (Vertex v = 0; v < n; ++v) {
                    if (dist[v] >= 0 && dist[v] <= r) x.push_back(v);
                }
                found.insert(std::move(x));
            }
            Vertex outside = n - inside;
            if (outside > 0 && in_window(outside) && layer_size[r] < required_boundary(outside, params)) {
                std::vector<Vertex> x;
                for (Vertex v = 0; v < n; ++v) {
                    if (dist[v] < 0 || dist[v] > r) x.push_back(v);
                }
                // Layer r is only an upper bound on N(X); confirm.
                VertexSet xs(n, x);
                if (neighborhood(h, xs).count() < required_boundary(outside, params)) found.insert(std::move(x));
            }
        }
    }
    out.sets.assign(found.begin(), found.end());
    std::stable_sort(out.sets.begin(), out.sets.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    if (out.sets.size() > kCandidateLimit) out.sets.resize(kCandidateLimit);
    return out;
}

}  // namespace

ExpanderWitness extract_expander(const Graph& g, const ExpansionParams& params) {
    params.validate();
    if (g.size() == 0) throw std::invalid_argument("extract_expander needs at least one edge");
    const Rational floor = g.average_degree() / Rational(2);
    ExpanderWitness w;
    w.params = params;
    w.sub = Subgraph::identity(g).compose(min_degree_peel(g));
    bool certified = false;
    const int max_rounds = 4 * g.order() + 8;
    for (int round = 0; round < max_rounds; ++round) {
        const Graph& h = w.sub.graph;
        auto cands = find_violators(h, params);
        if (cands.sets.empty()) {
            certified = cands.exhaustive;
            break;
        }
        bool moved = false;
        for (const auto& x : cands.sets) {
            VertexSet xs(h.order(), x);
            VertexSet closed = xs | neighborhood(h, xs);
            std::vector<Subgraph> options;
            if (closed.count() < h.order()) options.push_back(induced(h, closed));
            options.push_back(induced(h, VertexSet::full(h.order()) - xs));
            options.push_back(induced(h, xs));
            const Subgraph* best = nullptr;
            for (const auto& o : options) {
                if (o.graph.size() == 0 || o.graph.average_degree() < floor) continue;
                if (!best || o.graph.average_degree() > best->graph.average_degree()) best = &o;
            }
            if (!best) continue;
            Subgraph next = w.sub.compose(*best);
            w.sub = next.compose(min_degree_peel(next.graph));
            ++w.descents;
            moved = true;
            break;
        }
        if (!moved) {
            w.notes.push_back("no violating set admits a descent keeping d >= d(G)/2; stopped with " +
                              std::to_string(cands.sets.size()) + " known violators");
            break;
        }
    }
    const Graph& h = w.sub.graph;
    Rational dh = h.average_degree();
    if (dh < floor || Rational(2 * static_cast<std::int64_t>(h.min_degree())) < dh) {
        throw std::logic_error("extracted subgraph breaks the degree bounds");
    }
    w.certified = certified ? Certification::verified_exhaustive : Certification::extracted_unverified;
    return w;
}

double robust_removal_threshold(const Graph& h, const ExpansionParams& params) {
    const double n = h.order();
    if (n == 0 || h.max_degree() == 0) return 0.0;
    return n * rho(n, params) * h.average_degree_real() / (4.0 * h.max_degree());
}

ExpanderWitness robust_subset_removal(const ExpanderWitness& h, const VertexSet& x) {
    const Graph& g = h.sub.graph;
    if (x.universe() != g.order()) throw std::invalid_argument("removal set does not match witness order");
    if (x.empty()) return h;
    const double threshold = robust_removal_threshold(g, h.params);
    const Vertex removed = x.count();
    if (removed >= threshold) {
        throw PreconditionError("removal set of size " + std::to_string(removed) +
                                    " reaches the threshold " + std::to_string(threshold),
                                threshold);
    }
    const Rational floor = g.average_degree() / Rational(2);
    const double n = g.order();
    const double bound = n - (2.0 * g.max_degree() / g.average_degree_real()) * (removed / rho(n, h.params));

    // Strip non-expanding pieces off V \ X while the size bound allows it.
    Subgraph rest = induced(g, VertexSet::full(g.order()) - x);
    bool certified = false;
    std::vector<std::string> notes;
    while (true) {
        auto cands = find_violators(rest.graph, h.params);
        if (cands.sets.empty()) {
            certified = cands.exhaustive;
            break;
        }
        const auto& z = cands.sets.front();
        if (rest.graph.order() - static_cast<double>(z.size()) <= bound) {
            notes.push_back("stopped stripping: next violator would break the size bound");
            break;
        }
        rest = rest.compose(induced(rest.graph, VertexSet::full(rest.graph.order()) - VertexSet(rest.graph.order(), z)));
    }
    if (rest.graph.order() <= bound || rest.graph.order() == 0 || rest.graph.average_degree() < floor) {
        throw std::runtime_error("re-extraction after removal misses the size or density bound");
    }
    ExpanderWitness out = h;
    out.sub = h.sub.compose(rest);
    out.certified = certified ? Certification::verified_exhaustive : Certification::extracted_unverified;
    out.notes = std::move(notes);
    return out;
}

}  // namespace forge
