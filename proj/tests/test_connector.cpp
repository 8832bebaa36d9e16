#include <doctest.h>

#include <cmath>

#include "forge/connector.hpp"
#include "forge/generators.hpp"
#include "support.hpp"

using namespace forge;

namespace {

bool simple_path_in(const Graph& g, const Path& p, const VertexSet& forbidden) {
    VertexSet seen(g.order());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen.contains(p[i]) || forbidden.contains(p[i])) return false;
        seen.insert(p[i]);
        if (i > 0 && !g.adjacent(p[i - 1], p[i])) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("length caps") {
    auto derived = test::fixture("derived.json");
    CHECK(robust_length_cap(100, {0.1, 5}) == derived["robust_cap_n100_eps01_k5"].get<std::int64_t>());
    CHECK(through_length_cap(3) == derived["through_cap_m3"].get<std::int64_t>());
    CHECK(default_ball_radius_cap(complete(20), 15) == derived["ball_cap_k20_D15"].get<Vertex>());
}

TEST_CASE("robust connect") {
    Graph k = complete(6);
    ExpansionParams p{0.1, 1};
    auto adj = robust_connect(k, {VertexSet(6, {0}), VertexSet(6, {1}), VertexSet(6), -1}, p);
    REQUIRE(adj.path);
    CHECK(adj.path->size() == 2);

    Graph q = hypercube(6);
    VertexSet a = ball(q, VertexSet(64, {0}), 1).vertices();
    VertexSet b = ball(q, VertexSet(64, {63}), 1).vertices();
    VertexSet w(64, {7, 56, 21});
    auto r = robust_connect(q, {a, b, w, -1}, p);
    REQUIRE(r.path);
    CHECK(static_cast<std::int64_t>(r.path->size()) - 1 <= r.cap);
    CHECK(simple_path_in(q, *r.path, w));
    CHECK(a.contains(r.path->front()));
    CHECK(b.contains(r.path->back()));
    CHECK(r.path->size() == 5);

    Graph p5 = path_graph(5);
    auto cut = robust_connect(p5, {VertexSet(5, {0}), VertexSet(5, {4}), VertexSet(5, {2}), -1}, p);
    CHECK_FALSE(cut.path);
    CHECK_FALSE(cut.notes.empty());

    CHECK_THROWS_AS(robust_connect(p5, {VertexSet(5), VertexSet(5, {4}), VertexSet(5), -1}, p), std::invalid_argument);
    CHECK_THROWS_AS(robust_connect(p5, {VertexSet(5, {0}), VertexSet(5, {4}), VertexSet(5, {0}), -1}, p),
                    std::invalid_argument);
}

TEST_CASE("consecutive shortest paths") {
    Graph g = grid(3, 3);  // vertex r*3+c
    ConsecutivePaths cp{0, VertexSet::full(9), {}};
    cp = extend_consecutive(g, cp, 2);
    REQUIRE(cp.paths.size() == 1);
    CHECK(cp.paths[0] == Path{0, 1, 2});
    cp = extend_consecutive(g, cp, 4);
    CHECK(cp.paths[1] == Path{0, 3, 4});
    CHECK_THROWS_AS(extend_consecutive(g, cp, 5), UnreachableError);
    CHECK(revalidate_consecutive(g, cp));
    CHECK(cp.residual().contains(0));
    CHECK_FALSE(cp.residual().contains(1));

    ConsecutivePaths blocked{0, VertexSet::full(9), {{0, 1, 2}}};
    CHECK_THROWS_AS(extend_consecutive(g, blocked, 1), UnreachableError);

    ConsecutivePaths tampered = cp;
    tampered.paths[0] = {0, 3, 4, 1, 2};
    std::string why;
    CHECK_FALSE(revalidate_consecutive(g, tampered, &why));
    CHECK_FALSE(why.empty());
}

TEST_CASE("detour around an earlier path") {
    Graph g = grid(3, 3);
    ConsecutivePaths cp{4, VertexSet::full(9), {}};
    cp = extend_consecutive(g, cp, 1);
    CHECK(cp.paths[0] == Path{4, 1});
    cp = extend_consecutive(g, cp, 0);
    CHECK(cp.paths[1] == Path{4, 3, 0});
    cp = extend_consecutive(g, cp, 2);
    CHECK(cp.paths[2] == Path{4, 5, 2});
    CHECK(revalidate_consecutive(g, cp));
}

TEST_CASE("ball growth") {
    Graph k = complete(20);
    ConsecutivePaths none{0, VertexSet::full(20), {}};
    auto one = grow_ball_avoiding(k, 0, none, 10);
    CHECK(one.reached);
    CHECK(one.ell == 1);

    ConsecutivePaths cp{0, VertexSet::full(20), {{0, 1, 2}}};
    auto b = grow_ball_avoiding(k, 0, cp, 15);
    CHECK(b.reached);
    CHECK(b.ell == 1);
    CHECK(b.achieved == 18);
    CHECK_FALSE(b.ball.vertices().contains(1));

    auto big = grow_ball_avoiding(path_graph(10), 0, ConsecutivePaths{0, VertexSet::full(10), {}}, 50, 20);
    CHECK_FALSE(big.reached);
    CHECK(big.achieved == 10);
    CHECK_FALSE(big.notes.empty());
}

TEST_CASE("bipartitions") {
    Graph g = random_regular(10000, 20, 5);
    auto a = sample_bipartition(g, 3, 5);
    auto b = sample_bipartition(g, 3, 5);
    CHECK(a.part.v1 == b.part.v1);
    CHECK((a.part.v1 | a.part.v2) == VertexSet::full(10000));
    CHECK_FALSE(a.part.v1.intersects(a.part.v2));
    CHECK(a.meets_third);
    CHECK(a.d1 >= 20.0 / 3);
    CHECK(a.d2 >= 20.0 / 3);
    CHECK(sample_bipartition(g, 4).part.v1 != a.part.v1);

    auto e = sample_bipartition(empty_graph(0), 1);
    CHECK(e.part.v1.empty());
    CHECK(e.d1 == 0);
    CHECK(e.d2 == 0);
}

TEST_CASE("connect through the second side") {
    Graph g = complete(5);
    Bipartition part = Bipartition::from_sets(VertexSet(5, {0, 1}));
    auto r = connect_through(g, part, {VertexSet(5, {0}), VertexSet(5, {1}), VertexSet(5), -1}, 2);
    REQUIRE(r.path);
    CHECK(r.path->size() <= 3);

    Graph p = path_graph(4);
    Bipartition lonely = Bipartition::from_sets(VertexSet(4, {0, 1, 2, 3}));
    auto none = connect_through(p, lonely, {VertexSet(4, {0}), VertexSet(4, {3}), VertexSet(4), -1}, 2);
    CHECK_FALSE(none.path);
    CHECK_FALSE(none.notes.empty());

    // Regression on a random cubic graph: radius-3 balls, five forbidden V2 vertices.
    Graph cubic = random_regular(2000, 3, 11);
    const std::vector<std::size_t> expected{13, 4, 4, 11, 4};
    for (std::uint64_t s = 1; s <= 5; ++s) {
        auto bp = sample_bipartition(cubic, s).part;
        PathRequest req{ball(cubic, VertexSet(2000, {0}), 3).vertices(),
                        ball(cubic, VertexSet(2000, {1999}), 3).vertices(), VertexSet(2000), -1};
        int k = 0;
        for (Vertex v = 500; v < 2000 && k < 5; ++v) {
            if (bp.v2.contains(v) && !req.x1.contains(v) && !req.x2.contains(v)) {
                req.forbidden.insert(v);
                ++k;
            }
        }
        auto c = connect_through(cubic, bp, req, 4);
        REQUIRE(c.path);
        CHECK(c.path->size() == expected[s - 1]);
        CHECK(simple_path_in(cubic, *c.path, req.forbidden));
        for (std::size_t i = 1; i + 1 < c.path->size(); ++i) CHECK(bp.v2.contains((*c.path)[i]));
    }
}

TEST_CASE("expansion dichotomy") {
    auto derived = test::fixture("derived.json");
    auto k = expansion_dichotomy(complete(10), VertexSet(10, {0, 1, 2}), 2, 4);
    CHECK(k.a);
    CHECK(k.b);
    CHECK(k.heavy.count() == 7);
    CHECK(k.threshold_a == doctest::Approx(derived["k10_dichotomy_threshold_a_m4"].get<double>()));
    CHECK(k.threshold_b == doctest::Approx(derived["k10_dichotomy_threshold_b_m4"].get<double>()));
    CHECK_FALSE(expansion_dichotomy(complete(10), VertexSet(10, {0, 1, 2}), 2, 1.5).a);

    auto s = expansion_dichotomy(star(6), VertexSet(7, {0}), 2, 1);
    CHECK(s.boundary.count() == 6);
    CHECK(s.heavy.empty());
    CHECK(s.a);
    CHECK_THROWS_AS(expansion_dichotomy(star(6), VertexSet(7), 2, 1), std::invalid_argument);
}

TEST_CASE("stars or bipartite") {
    std::vector<Edge> e;
    for (Vertex c = 0; c < 3; ++c) {
        for (Vertex j = 0; j < 3; ++j) e.emplace_back(c, 3 + 3 * c + j);
    }
    Graph forest = Graph::from_edges(12, e);
    auto s = stars_or_bipartite(forest, VertexSet(12, {0, 1, 2}), VertexSet(12), 1, 1, 3);
    CHECK(s.kind == StarsOrBipartite::Kind::stars);
    CHECK(s.stars.size() == 3);

    Graph kb = complete_bipartite(20, 20);
    VertexSet side(40);
    for (Vertex v = 0; v < 20; ++v) side.insert(v);
    auto b = stars_or_bipartite(kb, side, VertexSet(40), 2, 8, 25);
    CHECK(b.kind == StarsOrBipartite::Kind::bipartite);
    CHECK(b.lambda_stars.size() == 20);
    for (const auto& st : b.lambda_stars) {
        CHECK(st.center >= 20);
        CHECK(st.leaves.size() == 2);
    }

    auto none = stars_or_bipartite(path_graph(4), VertexSet(4, {0}), VertexSet(4), 2, 8, 5);
    CHECK(none.kind == StarsOrBipartite::Kind::shortfall);
    CHECK_FALSE(none.notes.empty());
}

TEST_CASE("well-expanding subsets") {
    auto k = well_expanding_subset(complete(10), VertexSet(10, {0, 1, 2, 3, 4}), 1, 1);
    CHECK(k.subset == VertexSet(10, {0, 1, 2, 3, 4}));
    CHECK(k.expands);

    auto hub = well_expanding_subset(star(8), VertexSet(9, {0}), 4, 1);
    CHECK(hub.subset == VertexSet(9, {0}));
    CHECK(hub.expands);

    auto huge = well_expanding_subset(complete(10), VertexSet(10, {0, 1}), 100, 1);
    CHECK(huge.subset.empty());
    CHECK_FALSE(huge.expands);
    CHECK_FALSE(huge.notes.empty());
}

TEST_CASE("sprinkled balls") {
    Graph g = random_regular(200, 4, 2);
    auto all = sprinkled_ball(g, 1, VertexSet::full(200), VertexSet(200), 3);
    CHECK(all.reached == VertexSet::full(200));
    CHECK(all.rounds == 0);
    CHECK(all.round_cap == 9);

    Graph two = disjoint_union(random_regular(100, 4, 1), random_regular(100, 4, 2));
    VertexSet left(200);
    for (Vertex v = 0; v < 10; ++v) left.insert(v);
    auto r = sprinkled_ball(two, 5, left, VertexSet(200), 3);
    for (Vertex v = 100; v < 200; ++v) CHECK_FALSE(r.reached.contains(v));
    CHECK(r.reached_sampled.is_subset_of(r.sampled));
    CHECK(r.rounds <= r.round_cap);

    VertexSet wall(200, {10, 11, 12});
    auto skip = sprinkled_ball(two, 5, left, wall, 3);
    CHECK_FALSE(skip.reached.intersects(wall));
}

TEST_CASE("sprinkling regression fixture") {
    auto fx = test::fixture("sprinkle.json");
    auto derived = test::fixture("derived.json");
    Graph g = generate(fx["graph"].get<std::string>());
    const Vertex us = fx["u"].get<Vertex>();
    double m = std::pow(std::log(static_cast<double>(g.order()) / us), 4);
    CHECK(m == doctest::Approx(derived["sprinkle_m"].get<double>()));
    VertexSet u(g.order());
    for (Vertex v = 0; v < us; ++v) u.insert(v);
    for (const auto& run : fx["runs"]) {
        auto r = sprinkled_ball(g, run["seed"].get<std::uint64_t>(), u, VertexSet(g.order()), m);
        CHECK(r.round_cap == derived["sprinkle_ell"].get<std::int64_t>());
        CHECK(r.p == doctest::Approx(derived["sprinkle_p"].get<double>()).epsilon(1e-6));
        CHECK(r.reached.count() == run["reached"].get<Vertex>());
        CHECK(r.sampled.count() == run["sampled"].get<Vertex>());
        CHECK(r.reached_sampled.count() == run["reached_sampled"].get<Vertex>());
        CHECK(r.rounds == run["rounds"].get<std::int64_t>());
        CHECK(r.success == run["success"].get<bool>());
    }
}
