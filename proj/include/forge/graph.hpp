#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "forge/rational.hpp"
#include "forge/vertex_set.hpp"

namespace forge {

using Edge = std::pair<Vertex, Vertex>;
using Path = std::vector<Vertex>;

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Simple undirected graph in compressed adjacency form. Immutable after
// construction; neighbor lists are sorted by id.
class Graph {
public:
    Graph() : offsets_(1, 0) {}
    explicit Graph(Vertex n);

    // Throws GraphError on self-loops, duplicate edges or out-of-range ids.
    static Graph from_edges(Vertex n, std::span<const Edge> edges);

    Vertex order() const { return static_cast<Vertex>(offsets_.size() - 1); }
    std::int64_t size() const { return static_cast<std::int64_t>(adj_.size() / 2); }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    Vertex degree(Vertex v) const { return static_cast<Vertex>(offsets_[v + 1] - offsets_[v]); }
    bool adjacent(Vertex u, Vertex v) const;

    Vertex min_degree() const;
    Vertex max_degree() const;
    // 2e/n; throws GraphError when n = 0.
    Rational average_degree() const;
    double average_degree_real() const;

    // Each edge once as (u, v) with u < v, ordered lexicographically.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph& a, const Graph& b) = default;

private:
    std::vector<std::int64_t> offsets_;
    std::vector<Vertex> adj_;
};

// An induced subgraph together with the id of each of its vertices in the
// parent graph it was cut from.
struct Subgraph {
    Graph graph;
    std::vector<Vertex> origin;

    static Subgraph identity(const Graph& g);

    Vertex lift(Vertex v) const { return origin[v]; }
    Path lift(const Path& p) const;
    VertexSet lift(const VertexSet& s, Vertex parent_order) const;
    // Local id of a parent vertex, or -1.
    Vertex local(Vertex parent) const;
    // Re-express a subgraph of this.graph in this subgraph's parent ids.
    Subgraph compose(const Subgraph& inner) const;
};

Subgraph induced(const Graph& g, const VertexSet& s);

struct Ball {
    std::vector<VertexSet> layers;

    Vertex radius() const { return static_cast<Vertex>(layers.size()) - 1; }
    VertexSet vertices() const;
    Vertex size() const;
};

// BFS layers 0..r from w inside g - forbidden. Always returns r + 1 layers.
Ball ball(const Graph& g, const VertexSet& w, Vertex r, const VertexSet& forbidden);
Ball ball(const Graph& g, const VertexSet& w, Vertex r);

// N(X): vertices outside X with a neighbor in X.
VertexSet neighborhood(const Graph& g, const VertexSet& x);
// Number of edges with both ends in s.
std::int64_t edges_within(const Graph& g, const VertexSet& s);
std::int64_t edges_within(const Graph& g, std::span<const Vertex> s);
// Connected components, each sorted, ordered by smallest member.
std::vector<std::vector<Vertex>> components(const Graph& g);
// Hop distance from every vertex of src, avoiding forbidden; -1 if unreachable.
std::vector<Vertex> bfs_distances(const Graph& g, const VertexSet& src, const VertexSet& forbidden);

}  // namespace forge
