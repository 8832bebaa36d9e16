#include "forge/generators.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>
#include <unordered_set>
#include <variant>

#include "forge/rng.hpp"

namespace forge {

Graph empty_graph(Vertex n) { return Graph(n); }

Graph complete(Vertex n) {
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
    }
    return Graph::from_edges(n, e);
}

Graph complete_bipartite(Vertex a, Vertex b) {
    std::vector<Edge> e;
    for (Vertex u = 0; u < a; ++u) {
        for (Vertex v = 0; v < b; ++v) e.emplace_back(u, a + v);
    }
    return Graph::from_edges(a + b, e);
}

Graph star(Vertex leaves) { return complete_bipartite(1, leaves); }

Graph cycle(Vertex n) {
    if (n < 3) throw GraphError("cycle needs at least 3 vertices");
    std::vector<Edge> e;
    for (Vertex v = 0; v < n; ++v) e.emplace_back(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
    return Graph::from_edges(n, e);
}

Graph path_graph(Vertex n) {
    std::vector<Edge> e;
    for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
    return Graph::from_edges(n, e);
}

Graph grid(Vertex rows, Vertex cols) {
    std::vector<Edge> e;
    for (Vertex r = 0; r < rows; ++r) {
        for (Vertex c = 0; c < cols; ++c) {
            Vertex v = r * cols + c;
            if (c + 1 < cols) e.emplace_back(v, v + 1);
            if (r + 1 < rows) e.emplace_back(v, v + cols);
        }
    }
    return Graph::from_edges(rows * cols, e);
}

Graph hypercube(Vertex dim) {
    if (dim < 0 || dim > 20) throw GraphError("hypercube dimension out of range");
    Vertex n = Vertex{1} << dim;
    std::vector<Edge> e;
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex b = 0; b < dim; ++b) {
            Vertex u = v ^ (Vertex{1} << b);
            if (v < u) e.emplace_back(v, u);
        }
    }
    return Graph::from_edges(n, e);
}

Graph petersen() {
    std::vector<Edge> e;
    for (Vertex i = 0; i < 5; ++i) {
        e.emplace_back(std::min(i, (i + 1) % 5), std::max(i, (i + 1) % 5));
        e.emplace_back(i, i + 5);
        Vertex a = 5 + i, b = 5 + (i + 2) % 5;
        e.emplace_back(std::min(a, b), std::max(a, b));
    }
    return Graph::from_edges(10, e);
}

Graph gnp(Vertex n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw GraphError("edge probability outside [0,1]");
    Rng rng(seed);
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (uniform_unit(rng) < p) e.emplace_back(u, v);
        }
    }
    return Graph::from_edges(n, e);
}

namespace {

std::uint64_t edge_key(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

bool try_pairing(Vertex n, Vertex d, Rng& rng, std::vector<Edge>& out) {
    std::vector<Vertex> points;
    points.reserve(static_cast<std::size_t>(n) * d);
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex i = 0; i < d; ++i) points.push_back(v);
    }
    std::unordered_set<std::uint64_t> present;
    out.clear();
    while (!points.empty()) {
        const std::size_t len = points.size();
        bool paired = false;
        for (std::size_t attempt = 0; attempt < 64 * len && !paired; ++attempt) {
            std::size_t i = uniform_below(rng, len);
            std::size_t j = uniform_below(rng, len);
            Vertex u = points[i], v = points[j];
            if (i == j || u == v || present.contains(edge_key(u, v))) continue;
            present.insert(edge_key(u, v));
            out.emplace_back(std::min(u, v), std::max(u, v));
            if (i < j) std::swap(i, j);
            points[i] = points.back();
            points.pop_back();
            points[j] = points.back();
            points.pop_back();
            paired = true;
        }
        if (!paired) return false;
    }
    return true;
}

}  // namespace

Graph random_regular(Vertex n, Vertex d, std::uint64_t seed) {
    if (n <= 0 || d < 0) throw GraphError("random_regular needs n > 0 and d >= 0");
    if (d >= n) throw GraphError("random_regular needs d < n");
    if ((static_cast<std::int64_t>(n) * d) % 2 != 0) {
        throw GraphError("random_regular: n*d must be even (n=" + std::to_string(n) +
                         ", d=" + std::to_string(d) + ")");
    }
    std::vector<Edge> edges;
    for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
        Rng rng(derive_seed(seed, attempt));
        if (try_pairing(n, d, rng, edges)) {
            std::sort(edges.begin(), edges.end());
            return Graph::from_edges(n, edges);
        }
    }
    throw GraphError("random_regular: pairing failed after 1000 restarts");
}

Graph blowup(const Graph& base, Vertex factor) {
    if (factor < 1) throw GraphError("blow-up factor must be positive");
    std::vector<Edge> e;
    for (auto [u, v] : base.edges()) {
        for (Vertex i = 0; i < factor; ++i) {
            for (Vertex j = 0; j < factor; ++j) e.emplace_back(u * factor + i, v * factor + j);
        }
    }
    return Graph::from_edges(base.order() * factor, e);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<Edge> e = a.edges();
    for (auto [u, v] : b.edges()) e.emplace_back(u + a.order(), v + a.order());
    return Graph::from_edges(a.order() + b.order(), e);
}

namespace {

using Arg = std::variant<double, Graph>;

class SpecParser {
public:
    explicit SpecParser(std::string_view text) : text_(text) {}

    Graph parse() {
        Graph g = graph();
        skip();
        if (pos_ != text_.size()) fail("trailing input");
        return g;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw GraphError("bad generator spec '" + std::string(text_) + "' at " +
                         std::to_string(pos_) + ": " + what);
    }

    void skip() {
        while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
    }

    Graph graph() {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        std::string name(text_.substr(start, pos_ - start));
        if (name.empty()) fail("expected a family name");
        std::vector<Arg> args;
        skip();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            skip();
            if (pos_ < text_.size() && text_[pos_] == ')') {
                ++pos_;
            } else {
                while (true) {
                    args.push_back(argument());
                    skip();
                    if (pos_ >= text_.size()) fail("unterminated argument list");
                    if (text_[pos_] == ')') {
                        ++pos_;
                        break;
                    }
                    if (text_[pos_] != ',') fail("expected ',' or ')'");
                    ++pos_;
                }
            }
        }
        return build(name, args);
    }

    Arg argument() {
        skip();
        if (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) return graph();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '.' || text_[pos_] == '-' || text_[pos_] == 'e')) {
            ++pos_;
        }
        double v = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc() || ptr != text_.data() + pos_) fail("expected a number");
        return v;
    }

    double number(const std::vector<Arg>& args, std::size_t i) const {
        if (i >= args.size() || !std::holds_alternative<double>(args[i])) fail("expected numeric argument");
        return std::get<double>(args[i]);
    }

    Vertex count(const std::vector<Arg>& args, std::size_t i) const {
        double v = number(args, i);
        if (v < 0 || v != static_cast<double>(static_cast<std::int64_t>(v)) || v > 1e8) {
            fail("expected a non-negative integer argument");
        }
        return static_cast<Vertex>(v);
    }

    const Graph& sub(const std::vector<Arg>& args, std::size_t i) const {
        if (i >= args.size() || !std::holds_alternative<Graph>(args[i])) fail("expected graph argument");
        return std::get<Graph>(args[i]);
    }

    void arity(const std::vector<Arg>& args, std::size_t n) const {
        if (args.size() != n) fail("expected " + std::to_string(n) + " arguments");
    }

    Graph build(const std::string& name, const std::vector<Arg>& args) const {
        if (name == "complete") return arity(args, 1), complete(count(args, 0));
        if (name == "empty") return arity(args, 1), empty_graph(count(args, 0));
        if (name == "complete_bipartite") return arity(args, 2), complete_bipartite(count(args, 0), count(args, 1));
        if (name == "star") return arity(args, 1), star(count(args, 0));
        if (name == "cycle") return arity(args, 1), cycle(count(args, 0));
        if (name == "path") return arity(args, 1), path_graph(count(args, 0));
        if (name == "grid") return arity(args, 2), grid(count(args, 0), count(args, 1));
        if (name == "hypercube") return arity(args, 1), hypercube(count(args, 0));
        if (name == "petersen") return arity(args, 0), petersen();
        if (name == "gnp") return arity(args, 3), gnp(count(args, 0), number(args, 1), count(args, 2));
        if (name == "random_regular") {
            return arity(args, 3), random_regular(count(args, 0), count(args, 1), count(args, 2));
        }
        if (name == "blowup") return arity(args, 2), blowup(sub(args, 0), count(args, 1));
        if (name == "disjoint_union") return arity(args, 2), disjoint_union(sub(args, 0), sub(args, 1));
        fail("unknown family '" + name + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Graph generate(std::string_view spec) { return SpecParser(spec).parse(); }

}  // namespace forge
