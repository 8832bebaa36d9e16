// Release gate. One line per criterion; nonzero exit when any criterion fails.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "forge/connector.hpp"
#include "forge/crux.hpp"
#include "forge/expander.hpp"
#include "forge/generators.hpp"
#include "forge/harness.hpp"
#include "forge/pipeline.hpp"
#include "forge/rng.hpp"
#include "forge/structures.hpp"
#include "support.hpp"

using namespace forge;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::cout << "criterion " << id << " " << name << ": " << (pass ? "PASS" : "FAIL") << " (" << detail << ")"
              << std::endl;
    failures += pass ? 0 : 1;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

Graph random_small(Rng& rng, Vertex lo, Vertex hi) {
    Vertex n = lo + static_cast<Vertex>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
    double p = 0.2 + 0.6 * uniform_unit(rng);
    return gnp(n, p, rng());
}

void bipartite_barrier() {
    auto t0 = Clock::now();
    Graph g = complete_bipartite(2, 2);
    auto bf = find_subdivision_bruteforce(g, 4);
    bool none = !bf.certificate && !bf.budget_exhausted;
    Rng rng(20240611);
    int accepted = 0;
    for (int i = 0; i < 1000; ++i) {
        SubdivisionCertificate c;
        c.branch = {0, 1, 2, 3};
        std::shuffle(c.branch.begin(), c.branch.end(), rng);
        for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) {
                Path p{c.branch[a]};
                auto extra = uniform_below(rng, 3);
                for (std::uint64_t k = 0; k < extra; ++k) p.push_back(static_cast<Vertex>(uniform_below(rng, 4)));
                p.push_back(c.branch[b]);
                c.paths[{a, b}] = p;
            }
        }
        accepted += verify_certificate(g, c).ok ? 1 : 0;
    }
    double s = seconds_since(t0);
    report(1, "K_{2,2} has no TK_4", none && accepted == 0 && s < 1.0,
           fmt("exhaustive search empty: %.0f, fuzzed accepted %.0f/1000, %.3fs < 1s", none, accepted, s));
}

void oracle_equivalence() {
    auto t0 = Clock::now();
    Rng rng(7);
    int mismatches = 0, certified = 0;
    for (int i = 0; i < 200; ++i) {
        Graph g = random_small(rng, 2, 10);
        PipelineConfig cfg;
        cfg.seed = static_cast<std::uint64_t>(i);
        BuildTrace trace = dispatch(g, cfg);
        if (!trace.certificate) {
            mismatches += g.order() > 0 ? 1 : 0;
            continue;
        }
        ++certified;
        if (!verify_certificate(g, *trace.certificate).ok) {
            ++mismatches;
            continue;
        }
        auto bf = find_subdivision_bruteforce(g, trace.certificate->t());
        if (!bf.certificate || !verify_certificate(g, *bf.certificate).ok) ++mismatches;
    }
    double s = seconds_since(t0);
    report(2, "pipeline vs brute force, n <= 10", mismatches == 0 && s < 300,
           fmt("%.0f graphs certified, %.0f mismatches, %.1fs < 300s", certified, mismatches, s));
}

// Smallest s such that some s-set S has 2e(S)/s >= alpha * 2e(G)/n; plain 2^n loop.
std::int64_t naive_crux(const Graph& g, const Rational& alpha) {
    const Vertex n = g.order();
    std::vector<std::uint32_t> nbr(n, 0);
    for (auto [u, v] : g.edges()) {
        nbr[u] |= 1U << v;
        nbr[v] |= 1U << u;
    }
    const __int128 e = g.size();
    std::int64_t best = n;
    for (std::uint32_t m = 1; m < (1U << n); ++m) {
        std::int64_t s = std::popcount(m);
        if (s >= best) continue;
        __int128 es = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (m >> v & 1U) es += std::popcount(nbr[v] & m);
        }
        es /= 2;
        if (es * alpha.den() * n >= static_cast<__int128>(alpha.num()) * e * s) best = s;
    }
    return best;
}

void crux_exactness() {
    auto t0 = Clock::now();
    const Rational alphas[] = {{1, 5}, {1, 4}, {1, 3}, {1, 2}, {2, 3}, {3, 4}, {9, 10}};
    Rng rng(11);
    int graphs = 0, wrong = 0, outside = 0;
    for (int seed = 0; seed < 500; ++seed) {
        Graph g = random_small(rng, 2, 12);
        if (g.size() == 0) continue;
        ++graphs;
        const Rational& a = alphas[seed % 7];
        auto ex = crux_exact(g, a);
        if (ex.hi != naive_crux(g, a) || ex.lo != ex.hi || !is_alpha_crux(g, a, ex.witness)) ++wrong;
        auto b = crux_bounded(g, a);
        if (b.lo > ex.hi || b.hi < ex.hi) ++outside;
    }
    double s = seconds_since(t0);
    report(3, "crux exact vs naive enumeration, n <= 12", wrong == 0 && outside == 0 && graphs >= 450 && s < 600,
           fmt("%.0f graphs, %.0f exact mismatches, %.0f bounded intervals missing it, %.1fs < 600s", graphs, wrong,
               outside, s));
}

void lemma_suites() {
    auto t0 = Clock::now();
    Rng rng(13);
    int eligible = 0, fails = 0, runs = 0, decided = 0;
    for (int i = 0; eligible < 120 && i < 5000; ++i) {
        Graph g = i % 3 == 0 ? random_regular(8 + 2 * static_cast<Vertex>(uniform_below(rng, 5)),
                                              3 + static_cast<Vertex>(uniform_below(rng, 3)), rng())
                             : random_small(rng, 6, 16);
        if (g.size() == 0 || !min_degree_at_least_half_average(g)) continue;
        ++eligible;
        for (const auto& [a, k] : {std::pair{Rational(1, 5), Rational(3, 2)}, {Rational(1, 8), Rational(1)},
                                   {Rational(1, 4), Rational(1)}}) {
            auto r = check_lemma_robust(g, a);
            auto x = check_lemma_kexpan(g, a, k);
            runs += 2;
            decided += (r.outcome == CheckOutcome::pass ? 1 : 0) + (x.outcome == CheckOutcome::pass ? 1 : 0);
            fails += r.outcome == CheckOutcome::fail ? 1 : 0;
            fails += x.outcome == CheckOutcome::fail ? 1 : 0;
            if (r.outcome == CheckOutcome::fail) std::cerr << "  robust check failed: " << r.detail << "\n";
            if (x.outcome == CheckOutcome::fail) std::cerr << "  expansion check failed: " << x.detail << "\n";
        }
    }
    report(4, "lemma checks, n <= 16", eligible >= 100 && decided >= 100 && fails == 0,
           fmt("%.0f graphs meeting the degree condition, %.0f/%.0f checks passed, %.0f failures", eligible, decided,
               runs, fails) +
               fmt(", %.1fs", seconds_since(t0)));
}

void extraction_contract() {
    auto t0 = Clock::now();
    Rng rng(17);
    int graphs = 0, degree_bad = 0, exhaustive = 0, expansion_bad = 0;
    for (int i = 0; i < 300; ++i) {
        Graph g;
        switch (i % 3) {
            case 0: g = random_small(rng, 6, 40); break;
            case 1: g = disjoint_union(random_small(rng, 4, 12), random_small(rng, 4, 20)); break;
            default: g = random_regular(20 + 2 * static_cast<Vertex>(uniform_below(rng, 20)), 3, rng()); break;
        }
        if (g.size() == 0) g = complete(3);
        ++graphs;
        ExpansionParams p{0.1, std::max(1.0, 0.1 * g.average_degree_real())};
        auto w = extract_expander(g, p);
        const Graph& h = w.sub.graph;
        if (h.average_degree() * Rational(2) < g.average_degree() || Rational(2 * h.min_degree()) < h.average_degree()) {
            ++degree_bad;
        }
        if (h.order() <= 16) {
            ++exhaustive;
            auto rep = check_expander(h, p, CheckMode::exhaustive());
            if (!rep.pass) ++expansion_bad;
        }
    }
    report(5, "extraction contract", degree_bad == 0 && expansion_bad == 0,
           fmt("%.0f graphs, %.0f degree failures, %.0f/%.0f small witnesses fail exhaustive expansion", graphs,
               degree_bad, expansion_bad, exhaustive) +
               fmt(", %.1fs", seconds_since(t0)));
}

void connector_contract() {
    auto t0 = Clock::now();
    const ExpansionParams p{0.9, 60};
    std::vector<Graph> fixtures;
    for (std::uint64_t s = 1; s <= 5; ++s) {
        Graph g = random_regular(300, 8, s);
        if (check_expander(g, p, CheckMode::sampled(400, s)).pass) fixtures.push_back(std::move(g));
    }
    Rng rng(19);
    int ok = 0, invalid = 0, total = 0;
    for (int i = 0; i < 1000 && !fixtures.empty(); ++i) {
        const Graph& g = fixtures[static_cast<std::size_t>(i) % fixtures.size()];
        const Vertex n = g.order();
        auto [lo, hi] = expansion_window(n, p);
        Vertex x = lo + static_cast<Vertex>(uniform_below(rng, static_cast<std::uint64_t>(std::min<Vertex>(hi, n / 3) - lo + 1)));
        auto wsize = static_cast<Vertex>(std::floor(rho(x, p) * x / 4 + kLogTolerance));
        std::vector<Vertex> perm(n);
        for (Vertex v = 0; v < n; ++v) perm[v] = v;
        std::shuffle(perm.begin(), perm.end(), rng);
        PathRequest req{VertexSet(n), VertexSet(n), VertexSet(n), -1};
        for (Vertex j = 0; j < x; ++j) req.x1.insert(perm[j]);
        for (Vertex j = x; j < 2 * x; ++j) req.x2.insert(perm[j]);
        for (Vertex j = 2 * x; j < 2 * x + wsize; ++j) req.forbidden.insert(perm[j]);
        ++total;
        auto r = robust_connect(g, req, p);
        if (!r.path) continue;
        const Path& path = *r.path;
        bool valid = req.x1.contains(path.front()) && req.x2.contains(path.back()) &&
                     static_cast<std::int64_t>(path.size()) - 1 <= r.cap;
        VertexSet seen(n);
        for (std::size_t k = 0; k < path.size(); ++k) {
            valid = valid && !seen.contains(path[k]) && !req.forbidden.contains(path[k]);
            valid = valid && (k == 0 || g.adjacent(path[k - 1], path[k]));
            seen.insert(path[k]);
        }
        if (valid) ++ok;
        else ++invalid;
    }
    double rate = total ? static_cast<double>(ok) / total : 0;
    report(6, "robust connect contract", fixtures.size() >= 3 && total == 1000 && rate >= 0.99 && invalid == 0,
           fmt("%.0f verified fixtures, success %.4f >= 0.99, %.0f invalid paths, %.1fs", fixtures.size(), rate,
               invalid, seconds_since(t0)));
}

void sprinkling() {
    auto t0 = Clock::now();
    auto fx = test::fixture("sprinkle.json");
    Graph g = generate(fx["graph"].get<std::string>());
    const Vertex us = fx["u"].get<Vertex>();
    double m = std::pow(std::log(static_cast<double>(g.order()) / us), 4);
    VertexSet u(g.order());
    for (Vertex v = 0; v < us; ++v) u.insert(v);
    int wins = 0, drift = 0, over_cap = 0;
    for (const auto& run : fx["runs"]) {
        auto r = sprinkled_ball(g, run["seed"].get<std::uint64_t>(), u, VertexSet(g.order()), m);
        wins += r.success ? 1 : 0;
        over_cap += r.rounds > static_cast<std::int64_t>(std::ceil(m * m)) ? 1 : 0;
        if (r.reached_sampled.count() != run["reached_sampled"].get<Vertex>() ||
            r.sampled.count() != run["sampled"].get<Vertex>()) {
            ++drift;
        }
    }
    report(7, "sprinkled reachability", wins >= 18 && drift == 0 && over_cap == 0,
           fmt("%.0f/20 seeds reach more than half the sample (need 18), %.0f runs differ from the fixture, %.1fs",
               wins, drift, seconds_since(t0)));
}

void space_barrier() {
    auto t0 = Clock::now();
    auto rows = run_bench({"blowup"}, {1}, PipelineConfig{}, false);
    bool ok = rows.size() == 3;
    std::ostringstream d;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ok = ok && rows[i].status == "ok";
        double ratio = rows[i].achieved_t / rows[i].d;
        d << "d=" << rows[i].d << " t=" << rows[i].achieved_t << " t/d=" << fmt("%.3f", ratio) << "; ";
        if (i > 0) {
            ok = ok && rows[i].d > rows[i - 1].d && rows[i].achieved_t > rows[i - 1].achieved_t &&
                 ratio < rows[i - 1].achieved_t / rows[i - 1].d;
        }
    }
    d << fmt("%.1fs", seconds_since(t0));
    report(8, "blow-up trend", ok, d.str());
}

void end_to_end() {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("forge_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::string cli = FORGE_CLI_PATH;
    std::string graph = (dir / "r8.edges").string();
    std::string cfg = std::string(FORGE_SOURCE_DIR) + "/configs/desk.json";
    int gen = std::system((cli + " gen 'random_regular(5000,8,1)' -o " + graph).c_str());
    auto t0 = Clock::now();
    int rc = std::system((cli + " find " + graph + " -c " + cfg + " -o " + (dir / "r8.cert").string() + " 2>" +
                          (dir / "r8.err").string())
                             .c_str());
    double s = seconds_since(t0);
    int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    int vrc = std::system((cli + " verify " + graph + " " + (dir / "r8.cert").string() + " >/dev/null").c_str());
    fs::remove_all(dir);
    report(9, "forge find on random 8-regular n=5000", gen == 0 && code == 0 && vrc == 0 && s < 60,
           fmt("exit %.0f, verify exit %.0f, %.2fs < 60s", code, WIFEXITED(vrc) ? WEXITSTATUS(vrc) : -1, s));
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> steps{bipartite_barrier,           oracle_equivalence, crux_exactness,
                                                   lemma_suites,   extraction_contract, connector_contract,
                                                   sprinkling,     space_barrier,       end_to_end};
    for (const auto& step : steps) {
        try {
            step();
        } catch (const std::exception& e) {
            std::cout << "criterion aborted: " << e.what() << std::endl;
            ++failures;
        }
    }
    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
