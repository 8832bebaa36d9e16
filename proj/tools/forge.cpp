#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef FORGE_HAVE_OPENMP
#include <omp.h>
#endif

#include "forge/crux.hpp"
#include "forge/expander.hpp"
#include "forge/generators.hpp"
#include "forge/graph_io.hpp"
#include "forge/harness.hpp"
#include "forge/pipeline.hpp"
#include "forge/structures.hpp"

using namespace forge;
using nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitShortfall = 3;

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

PipelineConfig load_config(const std::string& path, bool theory) {
    PipelineConfig base = theory ? PipelineConfig::theory() : PipelineConfig{};
    if (path.empty()) return base;
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read config " + path);
    return config_from_json(json::parse(f), base);
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string item; std::getline(in, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
#ifdef FORGE_HAVE_OPENMP
    if (const char* t = std::getenv("FORGE_THREADS")) {
        int k = std::atoi(t);
        if (k > 0) omp_set_num_threads(k);
    }
#endif
    CLI::App app{"forge: clique subdivisions via sublinear expanders"};
    app.require_subcommand(1);

    std::string out, spec;
    auto* gen = app.add_subcommand("gen", "write a generated graph as an edge list");
    gen->add_option("spec", spec, "generator expression, e.g. random_regular(100,4,1)")->required();
    gen->add_option("-o,--out", out, "output file (default stdout)");

    std::string in;
    double eps = 0.1, k = 0;
    std::string check = "none";
    int trials = 200;
    std::uint64_t seed = 1;
    auto* ext = app.add_subcommand("extract", "extract an expander subgraph");
    ext->add_option("input", in)->required();
    ext->add_option("--eps", eps);
    ext->add_option("--k", k, "0 means eps * d");
    ext->add_option("--check", check)->check(CLI::IsMember({"none", "exhaustive", "sampled"}));
    ext->add_option("--trials", trials);
    ext->add_option("--seed", seed);
    ext->add_option("-o,--out", out);

    std::string alpha = "1/4";
    bool exact = false;
    std::int64_t budget = kDefaultCruxBudget;
    auto* crux = app.add_subcommand("crux", "bound or compute the alpha-crux");
    crux->add_option("input", in)->required();
    crux->add_option("--alpha", alpha);
    crux->add_flag("--exact", exact, "exhaustive solver (n <= 22)");
    crux->add_option("--budget", budget);
    crux->add_option("-o,--out", out);

    std::string config, trace_out;
    bool theory = false;
    std::int64_t seed_override = -1;
    auto* find = app.add_subcommand("find", "build and verify a clique subdivision");
    find->add_option("input", in)->required();
    find->add_option("-c,--config", config);
    find->add_flag("--theory", theory, "start from theory-mode defaults");
    find->add_option("--seed", seed_override);
    find->add_option("-o,--out", out, "certificate JSON");
    find->add_option("--trace", trace_out, "trace JSON");

    std::string cert_in;
    auto* verify = app.add_subcommand("verify", "check a certificate against a graph");
    verify->add_option("input", in)->required();
    verify->add_option("certificate", cert_in)->required();

    std::string families = "blowup,bipartite,regular", seeds = "1";
    bool timing = false;
    auto* bench = app.add_subcommand("bench", "reproducibility table");
    bench->add_option("--families", families, "comma list; empty for header only");
    bench->add_option("--seeds", seeds);
    bench->add_option("-c,--config", config);
    bench->add_flag("--timing", timing, "record wall time (breaks byte stability)");
    bench->add_option("-o,--out", out);

    bool dump_flag = false;
    auto* cfgcmd = app.add_subcommand("config", "print configuration");
    cfgcmd->add_flag("--dump", dump_flag)->required();
    cfgcmd->add_flag("--theory", theory);
    cfgcmd->add_option("-c,--config", config);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            std::ostringstream s;
            write_edge_list(generate(spec), s);
            emit(out, s.str());
        } else if (*ext) {
            Graph g = read_graph(in);
            double d = g.order() ? g.average_degree_real() : 0.0;
            ExpansionParams params{eps, k > 0 ? k : std::max(1.0, eps * d)};
            ExpanderWitness w = extract_expander(g, params);
            json j = {{"n", w.sub.graph.order()},
                      {"edges", w.sub.graph.size()},
                      {"origin", w.sub.origin},
                      {"eps", params.epsilon},
                      {"k", params.k},
                      {"average_degree", w.sub.graph.average_degree().str()},
                      {"min_degree", w.sub.graph.min_degree()},
                      {"descents", w.descents},
                      {"notes", w.notes}};
            if (check != "none") {
                CheckMode mode = check == "exhaustive" ? CheckMode::exhaustive() : CheckMode::sampled(trials, seed);
                auto rep = check_expander(w.sub.graph, params, mode);
                j["certification"] = to_string(rep.pass ? (check == "exhaustive" ? Certification::verified_exhaustive
                                                                                 : Certification::verified_sampled)
                                                        : Certification::extracted_unverified);
                j["violations"] = rep.violation_count;
            } else {
                j["certification"] = to_string(Certification::extracted_unverified);
            }
            emit(out, dump(j));
        } else if (*crux) {
            Graph g = read_graph(in);
            Rational a = Rational::parse(alpha);
            CruxResult r = exact ? crux_exact(g, a) : crux_bounded(g, a, budget);
            json j = {{"alpha", a.str()},
                      {"lo", r.lo},
                      {"hi", r.hi},
                      {"status", r.status == CruxStatus::exact ? "exact" : "bounded"},
                      {"witness", r.witness},
                      {"nodes", r.nodes},
                      {"heuristic_lo", r.heuristic_lo ? json(*r.heuristic_lo) : json(nullptr)},
                      {"assumptions", r.assumptions}};
            emit(out, dump(j));
        } else if (*find) {
            Graph g;
            PipelineConfig cfg;
            try {
                g = read_graph(in);
                cfg = load_config(config, theory);
            } catch (const std::exception& e) {
                std::cerr << "forge find: " << e.what() << "\n";
                return kExitParse;
            }
            if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
            BuildTrace trace = dispatch(g, cfg);
            if (!trace_out.empty()) emit(trace_out, dump(trace_to_json(trace)));
            if (!trace.certificate || !verify_certificate(g, *trace.certificate).ok) {
                std::cerr << "forge find: no certificate (" << trace.branch << ")\n";
                return kExitShortfall;
            }
            emit(out, dump(certificate_to_json(*trace.certificate)));
            std::cerr << "t = " << trace.certificate->t() << " via " << trace.certificate_source << " (branch "
                      << trace.branch << ")\n";
        } else if (*verify) {
            Graph g;
            SubdivisionCertificate cert;
            try {
                g = read_graph(in);
                std::ifstream f(cert_in);
                if (!f) throw std::runtime_error("cannot read " + cert_in);
                cert = certificate_from_json(json::parse(f));
            } catch (const std::exception& e) {
                std::cerr << "forge verify: " << e.what() << "\n";
                return kExitParse;
            }
            auto rep = verify_certificate(g, cert);
            std::cout << dump({{"ok", rep.ok},
                               {"violation", rep.violation},
                               {"t", cert.t()},
                               {"max_path_length", rep.max_path_length},
                               {"vertices_used", rep.vertices_used}});
            return rep.ok ? 0 : 1;
        } else if (*bench) {
            PipelineConfig cfg = load_config(config, false);
            std::vector<std::uint64_t> seed_list;
            for (const auto& s : split(seeds)) seed_list.push_back(std::stoull(s));
            auto rows = run_bench(split(families), seed_list, cfg, timing);
            std::ostringstream s;
            write_bench_csv(rows, s);
            emit(out, s.str());
        } else if (*cfgcmd) {
            std::cout << dump(config_to_json(load_config(config, theory)));
        }
    } catch (const ParseError& e) {
        std::cerr << "forge: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "forge: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
