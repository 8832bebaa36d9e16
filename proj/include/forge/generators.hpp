#pragma once

#include <cstdint>
#include <string_view>

#include "forge/graph.hpp"

namespace forge {

Graph empty_graph(Vertex n);
Graph complete(Vertex n);
Graph complete_bipartite(Vertex a, Vertex b);
Graph star(Vertex leaves);
Graph cycle(Vertex n);
Graph path_graph(Vertex n);
Graph grid(Vertex rows, Vertex cols);
Graph hypercube(Vertex dim);
Graph petersen();
Graph gnp(Vertex n, double p, std::uint64_t seed);
// Uniform-ish simple d-regular graph by sequential pairing with restarts.
// Throws GraphError when n*d is odd or d >= n.
Graph random_regular(Vertex n, Vertex d, std::uint64_t seed);
// Vertex v becomes the independent set v*f .. v*f+f-1; edges become K_{f,f}.
Graph blowup(const Graph& base, Vertex factor);
// Vertices of b are shifted by a.order().
Graph disjoint_union(const Graph& a, const Graph& b);

// Parses expressions such as "random_regular(20,3,7)" or
// "blowup(random_regular(60,3,1),20)". Throws GraphError on bad input.
Graph generate(std::string_view spec);

}  // namespace forge
