#include "forge/graph.hpp"

#include <algorithm>

namespace forge {

Graph::Graph(Vertex n) {
    if (n < 0) throw GraphError("negative vertex count");
    offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
}

Graph Graph::from_edges(Vertex n, std::span<const Edge> edges) {
    Graph g(n);
    std::vector<std::int64_t> deg(n, 0);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw GraphError("edge " + std::to_string(u) + " " + std::to_string(v) +
                             " out of range for n=" + std::to_string(n));
        }
        if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
        ++deg[u];
        ++deg[v];
    }
    for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.adj_.resize(g.offsets_[n]);
    std::vector<std::int64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
        g.adj_[fill[u]++] = v;
        g.adj_[fill[v]++] = u;
    }
    for (Vertex v = 0; v < n; ++v) {
        auto first = g.adj_.begin() + g.offsets_[v];
        auto last = g.adj_.begin() + g.offsets_[v + 1];
        std::sort(first, last);
        if (auto dup = std::adjacent_find(first, last); dup != last) {
            throw GraphError("duplicate edge " + std::to_string(std::min(v, *dup)) + " " +
                             std::to_string(std::max(v, *dup)));
        }
    }
    return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

Vertex Graph::min_degree() const {
    Vertex best = 0;
    for (Vertex v = 0; v < order(); ++v) best = v == 0 ? degree(v) : std::min(best, degree(v));
    return best;
}

Vertex Graph::max_degree() const {
    Vertex best = 0;
    for (Vertex v = 0; v < order(); ++v) best = std::max(best, degree(v));
    return best;
}

Rational Graph::average_degree() const {
    if (order() == 0) throw GraphError("average degree of the empty graph");
    return Rational(2 * size(), order());
}

double Graph::average_degree_real() const {
    if (order() == 0) throw GraphError("average degree of the empty graph");
    return 2.0 * static_cast<double>(size()) / order();
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(size());
    for (Vertex u = 0; u < order(); ++u) {
        for (Vertex v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

Subgraph Subgraph::identity(const Graph& g) {
    Subgraph s{g, {}};
    s.origin.resize(g.order());
    for (Vertex v = 0; v < g.order(); ++v) s.origin[v] = v;
    return s;
}

Path Subgraph::lift(const Path& p) const {
    Path out;
    out.reserve(p.size());
    for (Vertex v : p) out.push_back(origin[v]);
    return out;
}

VertexSet Subgraph::lift(const VertexSet& s, Vertex parent_order) const {
    VertexSet out(parent_order);
    s.for_each([&](Vertex v) { out.insert(origin[v]); });
    return out;
}

Vertex Subgraph::local(Vertex parent) const {
    auto it = std::lower_bound(origin.begin(), origin.end(), parent);
    if (it == origin.end() || *it != parent) return -1;
    return static_cast<Vertex>(it - origin.begin());
}

Subgraph Subgraph::compose(const Subgraph& inner) const {
    Subgraph out{inner.graph, {}};
    out.origin.reserve(inner.origin.size());
    for (Vertex v : inner.origin) out.origin.push_back(origin[v]);
    return out;
}

Subgraph induced(const Graph& g, const VertexSet& s) {
    if (s.universe() != g.order()) throw GraphError("vertex set does not match graph order");
    Subgraph out;
    out.origin = s.to_vector();
    std::vector<Vertex> local(g.order(), -1);
    for (std::size_t i = 0; i < out.origin.size(); ++i) local[out.origin[i]] = static_cast<Vertex>(i);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < out.origin.size(); ++i) {
        for (Vertex w : g.neighbors(out.origin[i])) {
            if (local[w] > static_cast<Vertex>(i)) edges.emplace_back(static_cast<Vertex>(i), local[w]);
        }
    }
    out.graph = Graph::from_edges(static_cast<Vertex>(out.origin.size()), edges);
    return out;
}

VertexSet Ball::vertices() const {
    VertexSet all(layers.front().universe());
    for (const auto& l : layers) all |= l;
    return all;
}

Vertex Ball::size() const {
    Vertex total = 0;
    for (const auto& l : layers) total += l.count();
    return total;
}

Ball ball(const Graph& g, const VertexSet& w, Vertex r, const VertexSet& forbidden) {
    if (w.intersects(forbidden)) throw GraphError("ball centre meets the forbidden set");
    Ball b;
    b.layers.reserve(r + 1);
    b.layers.push_back(w);
    VertexSet seen = w | forbidden;
    for (Vertex i = 0; i < r; ++i) {
        VertexSet next(g.order());
        b.layers.back().for_each([&](Vertex v) {
            for (Vertex x : g.neighbors(v)) {
                if (!seen.contains(x)) {
                    next.insert(x);
                    seen.insert(x);
                }
            }
        });
        b.layers.push_back(std::move(next));
    }
    return b;
}

Ball ball(const Graph& g, const VertexSet& w, Vertex r) { return ball(g, w, r, VertexSet(g.order())); }

VertexSet neighborhood(const Graph& g, const VertexSet& x) {
    VertexSet out(g.order());
    x.for_each([&](Vertex v) {
        for (Vertex u : g.neighbors(v)) {
            if (!x.contains(u)) out.insert(u);
        }
    });
    return out;
}

std::int64_t edges_within(const Graph& g, const VertexSet& s) {
    std::int64_t twice = 0;
    s.for_each([&](Vertex v) {
        for (Vertex u : g.neighbors(v)) twice += s.contains(u) ? 1 : 0;
    });
    return twice / 2;
}

std::int64_t edges_within(const Graph& g, std::span<const Vertex> s) {
    return edges_within(g, VertexSet(g.order(), s));
}

std::vector<std::vector<Vertex>> components(const Graph& g) {
    std::vector<std::vector<Vertex>> out;
    std::vector<char> seen(g.order(), 0);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> comp;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (Vertex u : g.neighbors(v)) {
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<Vertex> bfs_distances(const Graph& g, const VertexSet& src, const VertexSet& forbidden) {
    std::vector<Vertex> dist(g.order(), -1);
    std::vector<Vertex> queue;
    src.for_each([&](Vertex v) {
        if (!forbidden.contains(v)) {
            dist[v] = 0;
            queue.push_back(v);
        }
    });
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex v = queue[head];
        for (Vertex u : g.neighbors(v)) {
            if (dist[u] < 0 && !forbidden.contains(u)) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    return dist;
}

}  // namespace forge
