#include <doctest.h>

#include <cmath>

#include "forge/expander.hpp"
#include "forge/generators.hpp"
#include "support.hpp"

using namespace forge;

TEST_CASE("rho and the window") {
    ExpansionParams p{0.1, 10};
    CHECK(rho(1, p) == 0.0);
    CHECK(rho(10, p) == doctest::Approx(0.1 / std::pow(std::log(15.0), 2)).epsilon(1e-12));
    CHECK(rho(10, p) == doctest::Approx(0.013637).epsilon(1e-4));
    auto [lo, hi] = expansion_window(30, p);
    CHECK(lo == 5);
    CHECK(hi == 20);
    CHECK_THROWS_AS((ExpansionParams{1.0, 2}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ExpansionParams{0.5, 0.5}.validate()), std::invalid_argument);
}

TEST_CASE("exhaustive checks match the subset oracle") {
    auto cases = test::fixture("expansion.json");
    REQUIRE(cases.size() > 40);
    for (const auto& c : cases) {
        Graph g = test::graph_of(c);
        ExpansionParams p{c["eps"].get<double>(), c["k"].get<double>()};
        auto rep = check_expander(g, p, CheckMode::exhaustive());
        INFO(c["name"].get<std::string>() << " eps=" << p.epsilon << " k=" << p.k);
        CHECK(rep.pass == c["pass"].get<bool>());
        CHECK(rep.violation_count == c["violations"].get<std::int64_t>());
    }
}

TEST_CASE("expansion examples") {
    CHECK(check_expander(complete(8), {0.05, 4}, CheckMode::exhaustive()).pass);

    auto two = check_expander(disjoint_union(complete(8), complete(8)), {0.05, 4}, CheckMode::exhaustive());
    CHECK_FALSE(two.pass);
    bool whole_clique = false;
    for (const auto& v : two.violations) {
        if (v.set.size() == 8 && v.boundary == 0) whole_clique = true;
    }
    CHECK((whole_clique || two.violation_count > static_cast<std::int64_t>(two.violations.size())));

    auto path = check_expander(path_graph(20), {0.3, 4}, CheckMode::exhaustive());
    auto strict = check_expander(path_graph(20), {0.5, 20}, CheckMode::exhaustive());
    CHECK(path.pass);
    CHECK_FALSE(strict.pass);
    for (const auto& v : strict.violations) CHECK(v.boundary < v.required);
}

TEST_CASE("sampled checks are deterministic") {
    Graph g = random_regular(200, 4, 3);
    auto a = check_expander(g, {0.1, 2}, CheckMode::sampled(50, 9));
    auto b = check_expander(g, {0.1, 2}, CheckMode::sampled(50, 9));
    CHECK(a.pass == b.pass);
    CHECK(a.sets_checked == b.sets_checked);
    CHECK_THROWS(check_expander(g, {0.1, 2}, CheckMode::exhaustive()));
}

TEST_CASE("extraction examples") {
    auto k10 = extract_expander(complete(10), {0.1, 1});
    CHECK(k10.sub.graph == complete(10));
    CHECK(k10.descents == 0);

    std::vector<Edge> e = complete(10).edges();
    e.emplace_back(9, 10);
    for (Vertex v = 10; v < 19; ++v) e.emplace_back(v, v + 1);
    auto tail = extract_expander(Graph::from_edges(20, e), {0.1, 1});
    CHECK(tail.sub.graph == complete(10));

    auto split = extract_expander(disjoint_union(complete(8), complete(4)), {0.1, 1});
    CHECK(split.sub.graph == complete(8));
    CHECK(split.sub.origin == std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7});

    CHECK_THROWS_AS(extract_expander(empty_graph(5), {0.1, 1}), std::invalid_argument);
}

TEST_CASE("extraction degree contract") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        Graph g = gnp(20 + static_cast<Vertex>(s), 0.1 + 0.02 * static_cast<double>(s % 10), s);
        if (g.size() == 0) continue;
        auto w = extract_expander(g, {0.1, 1});
        const Graph& h = w.sub.graph;
        CHECK(h.average_degree() * Rational(2) >= g.average_degree());
        CHECK(Rational(2 * h.min_degree()) >= h.average_degree());
        for (std::size_t i = 0; i + 1 < w.sub.origin.size(); ++i) CHECK(w.sub.origin[i] < w.sub.origin[i + 1]);
        for (auto [u, v] : h.edges()) CHECK(g.adjacent(w.sub.origin[u], w.sub.origin[v]));
    }
}

TEST_CASE("min degree peel") {
    std::vector<Edge> e = complete(6).edges();
    e.emplace_back(5, 6);
    Subgraph s = min_degree_peel(Graph::from_edges(7, e));
    CHECK(s.graph == complete(6));
}

TEST_CASE("robust removal on K_20") {
    auto h = extract_expander(complete(20), {0.9, 100});
    double threshold = robust_removal_threshold(h.sub.graph, h.params);
    auto derived = test::fixture("derived.json");
    CHECK(threshold == doctest::Approx(derived["k20_removal_threshold"].get<double>()).epsilon(1e-9));

    auto same = robust_subset_removal(h, VertexSet(20));
    CHECK(same.sub.graph == complete(20));

    auto one = robust_subset_removal(h, VertexSet(20, {3}));
    CHECK(one.sub.graph == complete(19));
    CHECK(one.sub.local(3) == -1);

    try {
        robust_subset_removal(h, VertexSet(20, {0, 1, 2, 3}));
        FAIL("removal above the threshold accepted");
    } catch (const PreconditionError& e) {
        CHECK(e.threshold() == doctest::Approx(threshold));
    }
}
