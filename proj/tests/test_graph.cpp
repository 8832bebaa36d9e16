#include <doctest.h>

#include <sstream>

#include "forge/generators.hpp"
#include "forge/graph.hpp"
#include "forge/graph_io.hpp"
#include "forge/rational.hpp"
#include "forge/rng.hpp"
#include "support.hpp"

using namespace forge;

TEST_CASE("rational arithmetic is exact") {
    Rational a = Rational::parse("2/6");
    CHECK(a == Rational(1, 3));
    CHECK(Rational::parse("0.7") == Rational(7, 10));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(2, 3) < Rational(7, 10));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS(Rational::parse("x/2"));
}

TEST_CASE("vertex set algebra") {
    VertexSet a(130, {0, 64, 129}), b(130, {64, 5});
    CHECK((a | b).count() == 4);
    CHECK((a & b).to_vector() == std::vector<Vertex>{64});
    CHECK((a - b).to_vector() == std::vector<Vertex>{0, 129});
    CHECK(a.intersects(b));
    CHECK(VertexSet(130, {64}).is_subset_of(a));
    CHECK_THROWS(a |= VertexSet(10));
    CHECK_THROWS_AS(a.insert(130), std::out_of_range);
}

TEST_CASE("average degree") {
    CHECK(complete(4).average_degree() == Rational(3));
    CHECK(cycle(6).average_degree() == Rational(2));
    CHECK(petersen().average_degree() == Rational(3));
    CHECK(petersen().size() == 15);
    CHECK_THROWS_AS(empty_graph(0).average_degree(), GraphError);
}

TEST_CASE("from_edges rejects loops and duplicates") {
    std::vector<Edge> loop{{1, 1}}, dup{{0, 1}, {1, 0}}, out{{0, 3}};
    CHECK_THROWS_AS(Graph::from_edges(3, loop), GraphError);
    CHECK_THROWS_AS(Graph::from_edges(3, dup), GraphError);
    CHECK_THROWS_AS(Graph::from_edges(3, out), GraphError);
}

TEST_CASE("balls") {
    Graph p = path_graph(5);
    Ball b = ball(p, VertexSet(5, {0}), 2);
    REQUIRE(b.layers.size() == 3);
    CHECK(b.layers[1].to_vector() == std::vector<Vertex>{1});
    CHECK(b.layers[2].to_vector() == std::vector<Vertex>{2});

    Ball cut = ball(p, VertexSet(5, {0}), 2, VertexSet(5, {1}));
    REQUIRE(cut.layers.size() == 3);
    CHECK(cut.layers[1].empty());
    CHECK(cut.layers[2].empty());

    Graph pt = petersen();
    for (Vertex v = 0; v < 10; ++v) CHECK(ball(pt, VertexSet(10, {v}), 2).size() == 10);
}

TEST_CASE("induced subgraphs") {
    Subgraph s = induced(complete(5), VertexSet(5, {0, 2, 4}));
    CHECK(s.graph == complete(3));
    CHECK(s.origin == std::vector<Vertex>{0, 2, 4});
    CHECK(s.local(2) == 1);
    CHECK(s.local(1) == -1);

    CHECK(induced(cycle(6), VertexSet(6, {0, 2, 4})).graph.size() == 0);
    Subgraph c4 = induced(complete_bipartite(4, 4), VertexSet(8, {0, 1, 4, 5}));
    CHECK(c4.graph.size() == 4);
    CHECK(c4.graph.min_degree() == 2);
}

TEST_CASE("generators") {
    CHECK(complete_bipartite(2, 2).size() == 4);
    CHECK(complete_bipartite(2, 2).min_degree() == 2);
    Graph oct = blowup(complete(3), 2);
    CHECK(oct.order() == 6);
    CHECK(oct.size() == 12);
    CHECK(oct.min_degree() == 4);

    Graph r = random_regular(20, 3, 7);
    CHECK(r.order() == 20);
    CHECK(r.min_degree() == 3);
    CHECK(r.max_degree() == 3);
    CHECK(r == random_regular(20, 3, 7));
    CHECK_THROWS_AS(random_regular(7, 3, 1), GraphError);
    CHECK_THROWS_AS(random_regular(4, 4, 1), GraphError);

    Graph base = random_regular(12, 3, 2);
    Graph b = blowup(base, 3);
    CHECK(b.order() == 36);
    CHECK(b.size() == base.size() * 9);

    CHECK(generate("blowup(complete(3),2)") == oct);
    CHECK(generate("disjoint_union(complete(8),complete(4))").size() == 28 + 6);
    CHECK_THROWS_AS(generate("complete(3"), GraphError);
    CHECK_THROWS_AS(generate("nosuch(3)"), GraphError);
}

TEST_CASE("derived seeds are stable and distinct") {
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        CHECK(uniform_below(rng, 7) < 7);
        double u = uniform_unit(rng);
        CHECK((u >= 0.0 && u < 1.0));
    }
}

TEST_CASE("edge list parsing") {
    std::istringstream ok("# comment\n3\n\n0 1\n1 2\n");
    Graph g = parse_edge_list(ok);
    CHECK(g == path_graph(3));

    auto fails_at = [](const std::string& text, int line) {
        std::istringstream in(text);
        try {
            parse_edge_list(in);
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
            return;
        }
        FAIL("no parse error for: " << text);
    };
    fails_at("3\n0 0\n", 2);
    fails_at("3\n0 1\n1 0\n", 3);
    fails_at("3\n0 1\n0 x\n", 3);
    fails_at("3\n0 5\n", 2);
    fails_at("three\n", 1);
    fails_at("# nothing\n", 1);
}

TEST_CASE("edge list and JSON round trips") {
    Graph p = petersen();
    std::ostringstream out;
    write_edge_list(p, out);
    std::istringstream in(out.str());
    CHECK(parse_edge_list(in) == p);
    CHECK(graph_from_json(graph_to_json(p)) == p);
    CHECK_THROWS_AS(graph_from_json(nlohmann::json{{"n", 2}}), GraphError);
}

TEST_CASE("components and distances") {
    Graph g = disjoint_union(complete(3), path_graph(3));
    auto comps = components(g);
    REQUIRE(comps.size() == 2);
    CHECK(comps[1] == std::vector<Vertex>{3, 4, 5});
    auto dist = bfs_distances(g, VertexSet(6, {3}), VertexSet(6));
    CHECK(dist[5] == 2);
    CHECK(dist[0] == -1);
    CHECK(edges_within(g, VertexSet(6, {0, 1, 3})) == 1);
    CHECK(neighborhood(g, VertexSet(6, {4})).to_vector() == std::vector<Vertex>{3, 5});
}
