#include <doctest.h>

#include "forge/generators.hpp"
#include "forge/structures.hpp"
#include "support.hpp"

using namespace forge;

namespace {

// Three legs of length two around vertex 0; 1..3 are star centres, 4..6 leaves.
// Vertex 7 is a web core joined to 0 directly and through leaf 4.
Graph spider() {
    return Graph::from_edges(8, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5}, {3, 6}, {0, 7}, {4, 7}, {0, 4}});
}

Unit spider_unit() {
    Unit u;
    u.core = 0;
    u.branches = {{0, 1}, {0, 2}, {0, 3}};
    u.stars = {{1, {4}}, {2, {5}}, {3, {6}}};
    u.h2 = 1;
    u.h3 = 1;
    return u;
}

SubdivisionCertificate identity(Vertex t) {
    SubdivisionCertificate c;
    for (Vertex v = 0; v < t; ++v) c.branch.push_back(v);
    for (int i = 0; i < t; ++i) {
        for (int j = i + 1; j < t; ++j) c.paths[{i, j}] = {i, j};
    }
    return c;
}

}  // namespace

TEST_CASE("unit validation") {
    Graph g = spider();
    Unit u = spider_unit();
    CHECK(validate_unit(g, u).ok);
    CHECK(u.h1() == 3);
    CHECK(exterior(u, 8).to_vector() == std::vector<Vertex>{4, 5, 6});
    CHECK(interior(u, 8).to_vector() == std::vector<Vertex>{0, 1, 2, 3});
    CHECK((exterior(u, 8) | interior(u, 8)) == vertices(u, 8));

    Unit shared = u;
    shared.branches[1] = {0, 1};
    CHECK_FALSE(validate_unit(g, shared).ok);

    Unit big = u;
    big.h2 = 2;
    auto r = validate_unit(g, big);
    CHECK_FALSE(r.ok);
    CHECK(r.rule == "star_size");

    Unit bad_leaf = u;
    bad_leaf.stars[0].leaves = {5};
    CHECK_FALSE(validate_unit(g, bad_leaf).ok);
}

TEST_CASE("web validation") {
    Graph g = spider();
    Web w;
    w.core = 7;
    w.branches = {{7, 0}};
    w.units = {spider_unit()};
    w.h5 = 2;
    CHECK(validate_web(g, w).ok);
    CHECK(center(w, 8).to_vector() == std::vector<Vertex>{0, 7});
    CHECK(exterior(w, 8).to_vector() == std::vector<Vertex>{4, 5, 6});

    Web through_leaf = w;
    through_leaf.branches = {{7, 4, 0}};
    auto r = validate_web(g, through_leaf);
    CHECK_FALSE(r.ok);
    CHECK(r.rule == "ext_ctr_overlap");
    CHECK(r.offending == std::vector<Vertex>{4});

    Web short_cap = through_leaf;
    short_cap.h5 = 1;
    CHECK_FALSE(validate_web(g, short_cap).ok);
}

TEST_CASE("certificate verification") {
    CHECK(verify_certificate(complete(4), identity(4)).ok);
    CHECK(verify_certificate(complete(5), identity(5)).max_path_length == 1);
    CHECK_FALSE(verify_certificate(complete_bipartite(2, 2), identity(4)).ok);

    SubdivisionCertificate missing = identity(4);
    missing.paths.erase({0, 3});
    CHECK_FALSE(verify_certificate(complete(4), missing).ok);

    // Two paths sharing an internal vertex.
    Graph g = complete(6);
    SubdivisionCertificate c = identity(3);
    c.paths[{0, 1}] = {0, 4, 1};
    c.paths[{0, 2}] = {0, 4, 2};
    CHECK_FALSE(verify_certificate(g, c).ok);
    c.paths[{0, 2}] = {0, 5, 2};
    CHECK(verify_certificate(g, c).ok);
    // Internal vertex equal to a branch vertex.
    c.paths[{1, 2}] = {1, 0, 2};
    CHECK_FALSE(verify_certificate(g, c).ok);
}

TEST_CASE("certificate JSON and canonical form") {
    SubdivisionCertificate c;
    c.branch = {5, 1, 3};
    c.paths[{0, 1}] = {5, 1};
    c.paths[{0, 2}] = {5, 0, 3};
    c.paths[{1, 2}] = {1, 3};
    Graph g = complete(6);
    REQUIRE(verify_certificate(g, c).ok);
    SubdivisionCertificate k = c.canonical();
    CHECK(k.branch == std::vector<Vertex>{1, 3, 5});
    CHECK(k.paths.at({1, 2}) == Path{3, 0, 5});
    CHECK(verify_certificate(g, k).ok);

    SubdivisionCertificate back = certificate_from_json(certificate_to_json(k));
    CHECK(back.branch == k.branch);
    CHECK(back.paths == k.paths);
    CHECK_THROWS_AS(certificate_from_json(nlohmann::json{{"branch", {0, 1}}}), std::invalid_argument);
}

TEST_CASE("brute-force examples") {
    auto k5 = find_subdivision_bruteforce(complete(5), 5);
    REQUIRE(k5.certificate);
    CHECK(verify_certificate(complete(5), *k5.certificate).ok);

    auto k22 = find_subdivision_bruteforce(complete_bipartite(2, 2), 4);
    CHECK_FALSE(k22.certificate);
    CHECK_FALSE(k22.budget_exhausted);

    auto k33 = find_subdivision_bruteforce(complete_bipartite(3, 3), 4);
    REQUIRE(k33.certificate);
    CHECK(verify_certificate(complete_bipartite(3, 3), *k33.certificate).ok);

    auto pt = find_subdivision_bruteforce(petersen(), 4);
    REQUIRE(pt.certificate);
    CHECK(verify_certificate(petersen(), *pt.certificate).ok);
    CHECK_FALSE(find_subdivision_bruteforce(petersen(), 5).certificate);
}

TEST_CASE("brute force matches the path-system oracle") {
    for (const auto& c : test::fixture("tk.json")) {
        Graph g = test::graph_of(c);
        int t = c["max_t"].get<int>();
        INFO(c["name"].get<std::string>() << " max_t=" << t);
        auto yes = find_subdivision_bruteforce(g, t);
        REQUIRE(yes.certificate);
        CHECK(yes.certificate->t() == t);
        CHECK(verify_certificate(g, *yes.certificate).ok);
        if (t < g.order()) {
            auto no = find_subdivision_bruteforce(g, t + 1);
            CHECK_FALSE(no.certificate);
            CHECK_FALSE(no.budget_exhausted);
        }
    }
}
