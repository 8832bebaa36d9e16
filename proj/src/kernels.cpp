#include "forge/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

#ifdef FORGE_HAVE_OPENMP
#include <omp.h>
#endif

namespace forge::kernels {

MaskGraph MaskGraph::from(const Graph& g) {
    if (g.order() > kMaxMaskOrder) {
        throw std::invalid_argument("graph with " + std::to_string(g.order()) +
                                    " vertices is too large for an exhaustive scan");
    }
    MaskGraph m;
    m.n = g.order();
    m.nbr.assign(m.n, 0);
    for (Vertex v = 0; v < m.n; ++v) {
        for (Vertex u : g.neighbors(v)) m.nbr[v] |= Mask{1} << u;
    }
    return m;
}

Mask MaskGraph::boundary(Mask x) const {
    Mask out = 0;
    for (Mask rest = x; rest != 0; rest &= rest - 1) out |= nbr[std::countr_zero(rest)];
    return out & ~x;
}

std::int64_t MaskGraph::edges_in(Mask x) const {
    std::int64_t twice = 0;
    for (Mask rest = x; rest != 0; rest &= rest - 1) twice += std::popcount(nbr[std::countr_zero(rest)] & x);
    return twice / 2;
}

bool mask_less(Mask a, Mask b) {
    int ca = std::popcount(a), cb = std::popcount(b);
    if (ca != cb) return ca < cb;
    if (a == b) return false;
    Mask low = (a ^ b) & (~(a ^ b) + 1);
    return (a & low) != 0;
}

std::vector<Vertex> mask_members(Mask m) {
    std::vector<Vertex> out;
    for (; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
}

Mask mask_of(std::span<const Vertex> members) {
    Mask m = 0;
    for (Vertex v : members) m |= Mask{1} << v;
    return m;
}

namespace {

std::uint64_t mask_count(Vertex n) { return std::uint64_t{1} << n; }

bool expansion_violates(const MaskGraph& g, std::span<const std::int64_t> need, Mask x) {
    std::int64_t want = need[std::popcount(x)];
    return want >= 0 && std::popcount(g.boundary(x)) < want;
}

}  // namespace

ExpansionScan expansion_scan(const MaskGraph& g, std::span<const std::int64_t> need, Exec exec) {
    if (need.size() != static_cast<std::size_t>(g.n) + 1) throw std::invalid_argument("need table size mismatch");
    ExpansionScan out;
    const std::uint64_t total = mask_count(g.n);
    std::int64_t checked = 0;
    if (exec == Exec::serial) {
        for (std::uint64_t x = 0; x < total; ++x) {
            if (need[std::popcount(static_cast<Mask>(x))] < 0) continue;
            ++checked;
            if (expansion_violates(g, need, static_cast<Mask>(x))) out.violators.push_back(static_cast<Mask>(x));
        }
    } else {
#ifdef FORGE_HAVE_OPENMP
#pragma omp parallel reduction(+ : checked)
        {
            std::vector<Mask> local;
#pragma omp for schedule(static) nowait
            for (std::int64_t x = 0; x < static_cast<std::int64_t>(total); ++x) {
                if (need[std::popcount(static_cast<Mask>(x))] < 0) continue;
                ++checked;
                if (expansion_violates(g, need, static_cast<Mask>(x))) local.push_back(static_cast<Mask>(x));
            }
#pragma omp critical
            out.violators.insert(out.violators.end(), local.begin(), local.end());
        }
#else
        return expansion_scan(g, need, Exec::serial);
#endif
    }
    std::sort(out.violators.begin(), out.violators.end(), mask_less);
    out.checked = checked;
    return out;
}

namespace {

class CruxSearcher {
public:
    CruxSearcher(const MaskGraph& g, Vertex s, std::int64_t need, std::int64_t budget)
        : g_(g), s_(s), need_(need), budget_(budget) {}

    // Searches subsets whose smallest member is first.
    std::optional<Mask> from(Vertex first) {
        Mask chosen = Mask{1} << first;
        if (dfs(chosen, first + 1, 1, 0)) return found_;
        return std::nullopt;
    }

    std::int64_t nodes() const { return nodes_; }
    bool exhausted() const { return exhausted_; }

private:
    bool dfs(Mask chosen, Vertex next, Vertex size, std::int64_t edges) {
        ++nodes_;
        if (budget_ >= 0 && nodes_ > budget_) {
            exhausted_ = true;
            return false;
        }
        if (size == s_) {
            if (edges >= need_) {
                found_ = chosen;
                return true;
            }
            return false;
        }
        Vertex r = s_ - size;
        if (g_.n - next < r) return false;
        if (edges + bound(chosen, next, r) < need_) return false;
        for (Vertex v = next; v <= g_.n - r; ++v) {
            std::int64_t gain = std::popcount(g_.nbr[v] & chosen);
            if (dfs(chosen | (Mask{1} << v), v + 1, size + 1, edges + gain)) return true;
            if (exhausted_) return false;
        }
        return false;
    }

    // Upper bound on the edges that r more vertices from {next..n-1} can add.
    std::int64_t bound(Mask chosen, Vertex next, Vertex r) const {
        Mask cand = next >= 32 ? 0 : ~((Mask{1} << next) - 1);
        if (g_.n < 32) cand &= (Mask{1} << g_.n) - 1;
        std::int64_t scores[kMaxMaskOrder];
        int k = 0;
        for (Mask rest = cand; rest != 0; rest &= rest - 1) {
            Vertex v = std::countr_zero(rest);
            std::int64_t inner = std::min<std::int64_t>(r - 1, std::popcount(g_.nbr[v] & cand));
            scores[k++] = 2 * std::popcount(g_.nbr[v] & chosen) + inner;
        }
        if (k > r) std::nth_element(scores, scores + r, scores + k, std::greater<>());
        std::int64_t sum = 0;
        for (int i = 0; i < std::min<int>(k, r); ++i) sum += scores[i];
        return sum / 2;
    }

    const MaskGraph& g_;
    Vertex s_;
    std::int64_t need_;
    std::int64_t budget_;
    std::int64_t nodes_ = 0;
    bool exhausted_ = false;
    Mask found_ = 0;
};

}  // namespace

CruxSearch crux_search(const MaskGraph& g, Vertex s, std::int64_t need_edges, Exec exec, std::int64_t budget) {
    CruxSearch out;
    if (s <= 0 || s > g.n) return out;
    if (budget >= 0 || exec == Exec::serial) {
        std::int64_t remaining = budget;
        for (Vertex first = 0; first + s <= g.n; ++first) {
            CruxSearcher searcher(g, s, need_edges, remaining);
            auto hit = searcher.from(first);
            out.nodes += searcher.nodes();
            if (remaining >= 0) remaining = std::max<std::int64_t>(0, remaining - searcher.nodes());
            if (hit) {
                out.witness = hit;
                return out;
            }
            if (searcher.exhausted()) {
                out.exhausted = true;
                return out;
            }
        }
        return out;
    }
#ifdef FORGE_HAVE_OPENMP
    const Vertex firsts = g.n - s + 1;
    std::vector<std::optional<Mask>> hits(firsts);
    std::atomic<Vertex> best{std::numeric_limits<Vertex>::max()};
    std::int64_t nodes = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : nodes)
    for (Vertex first = 0; first < firsts; ++first) {
        if (first > best.load(std::memory_order_relaxed)) continue;
        CruxSearcher searcher(g, s, need_edges, -1);
        hits[first] = searcher.from(first);
        nodes += searcher.nodes();
        if (hits[first]) {
            Vertex cur = best.load();
            while (first < cur && !best.compare_exchange_weak(cur, first)) {
            }
        }
    }
    out.nodes = nodes;
    for (const auto& h : hits) {
        if (h) {
            out.witness = h;
            break;
        }
    }
    return out;
#else
    return crux_search(g, s, need_edges, Exec::serial);
#endif
}

DenseScan dense_scan(const MaskGraph& g, std::span<const std::int64_t> need, Exec exec) {
    if (need.size() != static_cast<std::size_t>(g.n) + 1) throw std::invalid_argument("need table size mismatch");
    DenseScan out;
    const std::uint64_t total = mask_count(g.n);
    const Mask all = static_cast<Mask>(total - 1);
    auto violates = [&](Mask w) {
        std::int64_t want = need[std::popcount(w)];
        return want >= 0 && g.edges_in(all & ~w) < want;
    };
    std::int64_t checked = 0;
    std::optional<Mask> best;
    if (exec == Exec::serial) {
        for (std::uint64_t x = 0; x < total; ++x) {
            Mask w = static_cast<Mask>(x);
            if (need[std::popcount(w)] < 0) continue;
            ++checked;
            if (violates(w) && (!best || mask_less(w, *best))) best = w;
        }
    } else {
#ifdef FORGE_HAVE_OPENMP
#pragma omp parallel reduction(+ : checked)
        {
            std::optional<Mask> local;
#pragma omp for schedule(static) nowait
            for (std::int64_t x = 0; x < static_cast<std::int64_t>(total); ++x) {
                Mask w = static_cast<Mask>(x);
                if (need[std::popcount(w)] < 0) continue;
                ++checked;
                if (violates(w) && (!local || mask_less(w, *local))) local = w;
            }
#pragma omp critical
            if (local && (!best || mask_less(*local, *best))) best = local;
        }
#else
        return dense_scan(g, need, Exec::serial);
#endif
    }
    out.violator = best;
    out.checked = checked;
    return out;
}

}  // namespace forge::kernels
