#include "forge/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "forge/crux.hpp"
#include "forge/rng.hpp"

namespace forge {

PipelineConfig PipelineConfig::theory() {
    PipelineConfig c;
    c.mode = PipelineMode::theory;
    c.alpha = Rational(1, 90000);
    c.beta = Rational(1, 150);
    c.eps = 1.0 / 150.0;
    c.p = 2500;
    c.x = 25;
    c.sparse_log_power = 100;
    c.dense_m_power = 100;
    c.salvage = false;
    return c;
}

void PipelineConfig::validate() const {
    auto bad = [](const std::string& s) { throw std::invalid_argument("config: " + s); };
    if (!(eps > 0 && eps < 1)) bad("eps must lie in (0,1)");
    if (alpha <= Rational(0) || alpha >= Rational(1)) bad("alpha must lie in (0,1)");
    if (beta <= Rational(0) || beta >= Rational(1)) bad("beta must lie in (0,1)");
    if (mode == PipelineMode::theory && beta * beta != Rational(4) * alpha) bad("theory mode needs beta^2 = 4 alpha");
    if (k < 0) bad("k must be non-negative");
    if (T <= 0 || c <= 0) bad("T and c must be positive");
    if (bipartition_retries < 0 || connect_retries < 0) bad("retry limits must be non-negative");
    const auto& d = desk;
    for (auto [v, name] : {std::pair{d.h1, "h1"}, {d.h2, "h2"}, {d.h3, "h3"}, {d.h4, "h4"}, {d.web_count, "web_count"},
                           {d.star_leaves, "star_leaves"}, {d.web_link_cap, "web_link_cap"}, {d.link_cap, "link_cap"}}) {
        if (v <= 0) bad(std::string(name) + " must be positive");
    }
    for (auto [v, name] : {std::pair{d.h5, "h5"}, {d.unit_count, "unit_count"}, {d.ell, "ell"}}) {
        if (v < 0) bad(std::string(name) + " must be non-negative");
    }
    if (d.star_leaves < d.h2) bad("star_leaves must be at least h2");
    if (d.web_count > 24) bad("web_count above 24");
}

nlohmann::json config_to_json(const PipelineConfig& c) {
    const auto& d = c.desk;
    return {
        {"mode", c.mode == PipelineMode::desk ? "desk" : "theory"},
        {"alpha", c.alpha.str()},
        {"beta", c.beta.str()},
        {"eps", c.eps},
        {"k", c.k},
        {"seed", c.seed},
        {"bipartition_retries", c.bipartition_retries},
        {"connect_retries", c.connect_retries},
        {"c", c.c},
        {"T", c.T},
        {"p", c.p},
        {"x", c.x},
        {"sparse_log_power", c.sparse_log_power},
        {"dense_m_power", c.dense_m_power},
        {"bounded_degree", c.bounded_degree},
        {"degree_cap_factor", c.degree_cap_factor},
        {"degree_cap_log_power", c.degree_cap_log_power},
        {"crux_budget", c.crux_budget},
        {"salvage", c.salvage},
        {"desk",
         {{"h1", d.h1},
          {"h2", d.h2},
          {"h3", d.h3},
          {"h4", d.h4},
          {"h5", d.h5},
          {"unit_count", d.unit_count},
          {"web_count", d.web_count},
          {"star_leaves", d.star_leaves},
          {"web_link_cap", d.web_link_cap},
          {"link_cap", d.link_cap},
          {"ell", d.ell}}},
    };
}

PipelineConfig config_from_json(const nlohmann::json& j, PipelineConfig c) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    if (j.contains("mode") && j.at("mode") == "theory") {
        PipelineConfig t = PipelineConfig::theory();
        t.desk = c.desk;
        c = t;
    }
    auto rational = [](const nlohmann::json& v) {
        return v.is_string() ? Rational::parse(v.get<std::string>()) : Rational::parse(v.dump());
    };
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "mode") {
                std::string m = v.get<std::string>();
                if (m != "desk" && m != "theory") throw std::invalid_argument("mode must be desk or theory");
                c.mode = m == "desk" ? PipelineMode::desk : PipelineMode::theory;
            } else if (key == "alpha") c.alpha = rational(v);
            else if (key == "beta") c.beta = rational(v);
            else if (key == "eps") c.eps = v.get<double>();
            else if (key == "k") c.k = v.get<double>();
            else if (key == "seed") c.seed = v.get<std::uint64_t>();
            else if (key == "bipartition_retries") c.bipartition_retries = v.get<int>();
            else if (key == "connect_retries") c.connect_retries = v.get<int>();
            else if (key == "c") c.c = v.get<double>();
            else if (key == "T") c.T = v.get<double>();
            else if (key == "p") c.p = v.get<double>();
            else if (key == "x") c.x = v.get<double>();
            else if (key == "sparse_log_power") c.sparse_log_power = v.get<double>();
            else if (key == "dense_m_power") c.dense_m_power = v.get<double>();
            else if (key == "bounded_degree") c.bounded_degree = v.get<bool>();
            else if (key == "degree_cap_factor") c.degree_cap_factor = v.get<double>();
            else if (key == "degree_cap_log_power") c.degree_cap_log_power = v.get<double>();
            else if (key == "crux_budget") c.crux_budget = v.get<std::int64_t>();
            else if (key == "salvage") c.salvage = v.get<bool>();
            else if (key == "desk") {
                auto& d = c.desk;
                for (const auto& [dk, dv] : v.items()) {
                    std::int64_t x = dv.get<std::int64_t>();
                    if (dk == "h1") d.h1 = x;
                    else if (dk == "h2") d.h2 = x;
                    else if (dk == "h3") d.h3 = x;
                    else if (dk == "h4") d.h4 = x;
                    else if (dk == "h5") d.h5 = x;
                    else if (dk == "unit_count") d.unit_count = x;
                    else if (dk == "web_count") d.web_count = x;
                    else if (dk == "star_leaves") d.star_leaves = x;
                    else if (dk == "web_link_cap") d.web_link_cap = x;
                    else if (dk == "link_cap") d.link_cap = x;
                    else if (dk == "ell") d.ell = x;
                    else throw std::invalid_argument("unknown desk key " + dk);
                }
            } else {
                throw std::invalid_argument("unknown config key " + key);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

BoundedDegreeResult bounded_degree_pass(const Graph& root, const ExpanderWitness& w, const PipelineConfig& cfg) {
    BoundedDegreeResult out;
    out.witness = w;
    const double n = std::max<Vertex>(root.order(), 2);
    const double d = root.order() ? root.average_degree_real() : 0.0;
    double cap = cfg.degree_cap_factor * d * d * std::pow(std::log(n), cfg.degree_cap_log_power);
    out.cap = cap >= 1e15 ? std::numeric_limits<std::int64_t>::max() : static_cast<std::int64_t>(std::floor(cap));
    const Graph& h = w.sub.graph;
    if (h.max_degree() <= out.cap) {
        out.notes.push_back("maximum degree already within cap");
        return out;
    }
    VertexSet keep(h.order());
    for (Vertex v = 0; v < h.order(); ++v) {
        if (h.degree(v) <= out.cap) keep.insert(v);
    }
    Subgraph rest = induced(h, keep);
    if (rest.graph.size() == 0) {
        out.notes.push_back("degree cap leaves no edges; keeping the unmodified witness");
        return out;
    }
    ExpansionParams params = w.params;
    params.epsilon /= 2;
    ExpanderWitness again = extract_expander(rest.graph, params);
    again.sub = w.sub.compose(rest.compose(again.sub));
    out.notes.push_back("removed " + std::to_string(h.order() - keep.count()) + " vertices above degree " +
                        std::to_string(out.cap));
    out.witness = std::move(again);
    out.applied = true;
    return out;
}

namespace {

SubdivisionCertificate lift(const SubdivisionCertificate& c, const std::vector<Vertex>& origin) {
    SubdivisionCertificate out;
    for (Vertex b : c.branch) out.branch.push_back(origin[b]);
    for (const auto& [key, p] : c.paths) {
        Path q;
        for (Vertex v : p) q.push_back(origin[v]);
        out.paths[key] = std::move(q);
    }
    return out;
}

double log_or_zero(double x) { return x > 1 ? std::log(x) : 0.0; }

struct WebRun {
    std::vector<WebRecord> webs;
    LinkOutcome link;
    std::uint64_t seed = 0;
};

WebRun run_webs(const Graph& g, const PipelineConfig& cfg, std::uint64_t seed, std::int64_t ell, std::int64_t target,
                std::vector<std::string>& diag) {
    WebRun run;
    BipartitionSample bs = sample_bipartition(g, seed, cfg.bipartition_retries);
    run.seed = bs.part.seed;
    if (!bs.meets_third) diag.push_back("bipartition sides below d/3 after retries");
    std::vector<Web> built;
    for (std::int64_t i = 0; i < cfg.desk.web_count; ++i) {
        VertexSet prior(g.order());
        for (const auto& w : built) prior |= vertices(w, g.order());
        std::vector<std::string> notes;
        auto units = build_units(g, bs.part.v2, prior, cfg, &notes);
        WebRecord rec = build_web(g, bs.part, built, units, ell, target, cfg);
        rec.notes.insert(rec.notes.begin(), notes.begin(), notes.end());
        if (rec.web.branches.empty()) {
            diag.push_back("web " + std::to_string(i) + " not built: " +
                           (rec.notes.empty() ? std::string("unknown") : rec.notes.back()));
            break;
        }
        built.push_back(rec.web);
        run.webs.push_back(std::move(rec));
    }
    for (std::size_t i = 0; i < built.size(); ++i) {
        VertexSet a = interior(built[i], g.order());
        for (std::size_t j = i + 1; j < built.size(); ++j) {
            if (a.intersects(interior(built[j], g.order()))) throw std::logic_error("webs with overlapping interiors");
        }
    }
    run.link = link_webs(g, bs.part, built, cfg);
    return run;
}

}  // namespace

BuildTrace dispatch(const Graph& g, const PipelineConfig& cfg) {
    cfg.validate();
    BuildTrace trace;
    const Vertex n = g.order();
    if (n == 0) {
        trace.branch = "empty";
        trace.diagnostics.push_back("empty graph");
        return trace;
    }
    if (g.size() == 0) {
        trace.branch = "edgeless";
        SubdivisionCertificate c;
        c.branch = {0};
        trace.certificate = c;
        trace.certificate_source = "trivial";
        return trace;
    }
    const bool theory = cfg.mode == PipelineMode::theory;
    const double d = g.average_degree_real();
    ExpansionParams params{cfg.eps, cfg.k > 0 ? cfg.k : std::max(1.0, cfg.eps * d)};
    ExpanderWitness g0 = extract_expander(g, params);
    trace.expander_order = g0.sub.graph.order();
    const double n0 = g0.sub.graph.order();
    const double m = std::max(1.0, std::pow(log_or_zero(n0 / params.k), 4));
    trace.decisions.push_back("expander of order " + std::to_string(g0.sub.graph.order()) + ", m = " +
                              std::to_string(m));

    Subgraph arena = g0.sub;
    std::optional<CruxResult> arena_crux;
    auto crux_of = [&](const Graph& h) { return crux_bounded(h, cfg.beta, cfg.crux_budget); };

    if (cfg.eps * d >= n0 / cfg.T) {
        trace.branch = "dense_fallback";
        trace.decisions.push_back("eps d >= n/T");
        std::vector<std::string> notes;
        trace.certificate = lift(dense_fallback(g0.sub.graph, cfg, &notes), g0.sub.origin);
        trace.certificate_source = "dense_fallback";
        trace.diagnostics.insert(trace.diagnostics.end(), notes.begin(), notes.end());
    } else {
        const double a = theory ? 100 : cfg.sparse_log_power;
        const double ln0 = log_or_zero(n0);
        const double sparse_cut = ln0 > 0 ? std::cbrt(n0 / std::pow(ln0, a)) : n0;
        if (d <= sparse_cut) {
            trace.branch = "sparse";
            trace.decisions.push_back("d <= " + std::to_string(sparse_cut));
            if (cfg.bounded_degree) {
                auto bd = bounded_degree_pass(g, g0, cfg);
                for (auto& s : bd.notes) trace.decisions.push_back("bounded degree: " + s);
                arena = bd.witness.sub;
            }
        } else {
            CruxResult c0 = crux_of(g0.sub.graph);
            trace.crux_lo = c0.lo;
            trace.crux_hi = c0.hi;
            const double C = static_cast<double>(c0.hi);
            const double b = theory ? 100 : cfg.dense_m_power;
            if (C > 1 && C / std::log(C) >= d * d * std::pow(m, b)) {
                trace.branch = "expander_webs";
                trace.decisions.push_back("C/ln C >= d^2 m^b");
                arena_crux = c0;
            } else {
                Subgraph hsub = g0.sub.compose(induced(g0.sub.graph, VertexSet(g0.sub.graph.order(), c0.witness)));
                const double p = theory ? 2500 : cfg.p;
                const double vh = hsub.graph.order();
                double kk = std::min(d * d / std::pow(std::max(log_or_zero(d), 1.0), p),
                                     vh / std::pow(std::max(log_or_zero(vh), 1.0), p));
                kk = std::max(1.0, kk);
                trace.decisions.push_back("descend into a beta-crux of order " + std::to_string(hsub.graph.order()) +
                                          ", k = " + std::to_string(kk));
                std::optional<ExpanderWitness> hstar;
                if (hsub.graph.size() > 0) hstar = extract_expander(hsub.graph, {cfg.eps, kk});
                std::optional<CruxResult> cs;
                if (hstar) cs = crux_of(hstar->sub.graph);
                if (hstar && cs && static_cast<double>(cs->hi) >= kk * std::log(kk)) {
                    trace.branch = "crux_webs";
                    arena = hsub.compose(hstar->sub);
                    arena_crux = cs;
                    trace.decisions.push_back("C_beta(H*) = " + std::to_string(cs->hi) + " >= k ln k");
                } else {
                    trace.branch = "crux_generic";
                    arena_crux = c0;
                    trace.decisions.push_back("C_beta(H*) < k ln k; generic web builder on the expander");
                }
            }
        }

        const Graph& h = arena.graph;
        trace.web_arena_origin = arena.origin;
        if (theory) {
            trace.diagnostics.push_back("theory-mode structure counts (m^x with x = " + std::to_string(cfg.x) +
                                        ") exceed the graph; web construction refused");
        } else if (h.size() > 0) {
            if (!arena_crux) arena_crux = crux_of(h);
            const double dh = std::max(1.0, h.average_degree_real());
            std::int64_t ell = cfg.desk.ell > 0
                                   ? cfg.desk.ell
                                   : std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(
                                                                   std::log2(std::max(2.0, arena_crux->hi / dh)))));
            trace.ell = ell;
            const std::int64_t target = std::max<std::int64_t>(1, arena_crux->hi / 3);
            std::optional<WebRun> best;
            for (int r = 0; r <= cfg.connect_retries; ++r) {
                std::uint64_t s = r == 0 ? cfg.seed : derive_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(r));
                std::vector<std::string> diag;
                WebRun run = run_webs(h, cfg, s, ell, target, diag);
                trace.bipartition_seeds.push_back(run.seed);
                for (auto& x : diag) trace.diagnostics.push_back("attempt " + std::to_string(r) + ": " + x);
                std::size_t got = run.link.chosen.size();
                if (!best || got > best->link.chosen.size()) best = std::move(run);
                if (got >= 2) break;
            }
            trace.webs = best->webs;
            trace.links = best->link.links;
            trace.labels = best->link.labels;
            trace.linked_webs = best->link.chosen;
            for (auto& x : best->link.diagnostics) trace.diagnostics.push_back(x);
            if (best->link.certificate) {
                trace.certificate = lift(*best->link.certificate, arena.origin);
                trace.certificate_source = "webs";
            }
        }
    }

    if (cfg.salvage || !trace.certificate) {
        std::vector<std::string> notes;
        SubdivisionCertificate alt = dense_fallback(g, cfg, &notes);
        if (!trace.certificate || alt.t() > trace.certificate->t()) {
            trace.decisions.push_back("salvage: greedy routing on the input gave t = " + std::to_string(alt.t()));
            trace.certificate = std::move(alt);
            trace.certificate_source = "salvage";
        }
    }
    if (trace.certificate) {
        *trace.certificate = trace.certificate->canonical();
        auto report = verify_certificate(g, *trace.certificate);
        if (!report.ok) throw std::logic_error("pipeline certificate failed verification: " + report.violation);
    }
    return trace;
}

nlohmann::json trace_to_json(const BuildTrace& t) {
    using nlohmann::json;
    json webs = json::array();
    for (const auto& w : t.webs) {
        json units = json::array();
        for (const auto& u : w.web.units) {
            json stars = json::array();
            for (const auto& s : u.stars) stars.push_back({{"center", s.center}, {"leaves", s.leaves}});
            units.push_back({{"core", u.core}, {"branches", u.branches}, {"stars", stars}, {"h2", u.h2}, {"h3", u.h3}});
        }
        webs.push_back({{"core", w.web.core},
                        {"branches", w.web.branches},
                        {"units", units},
                        {"h5", w.web.h5},
                        {"interior_v1", w.interior_v1},
                        {"interior_v2", w.interior_v2},
                        {"units_offered", w.units_offered},
                        {"dropped_branches", w.dropped_branches},
                        {"notes", w.notes}});
    }
    json links = json::array();
    for (const auto& l : t.links) {
        links.push_back({{"webs", {l.web_a, l.web_b}}, {"units", {l.unit_a, l.unit_b}}, {"path", l.path}});
    }
    json j = {
        {"schema", "forge.trace/1"},
        {"branch", t.branch},
        {"decisions", t.decisions},
        {"expander_order", t.expander_order},
        {"crux", t.crux_hi ? json{{"lo", *t.crux_lo}, {"hi", *t.crux_hi}} : json(nullptr)},
        {"ell", t.ell},
        {"bipartition_seeds", t.bipartition_seeds},
        {"web_arena_origin", t.web_arena_origin},
        {"webs", webs},
        {"links", links},
        {"labels",
         {{"used", t.labels.used}, {"over_used", t.labels.over_used}, {"occupied", t.labels.occupied}, {"bad", t.labels.bad}}},
        {"linked_webs", t.linked_webs},
        {"certificate_source", t.certificate_source},
        {"t", t.certificate ? t.certificate->t() : 0},
        {"diagnostics", t.diagnostics},
    };
    return j;
}

}  // namespace forge
