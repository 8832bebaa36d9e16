#include "forge/harness.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "forge/crux.hpp"
#include "forge/generators.hpp"

namespace forge {

std::vector<std::string> family_members(const std::string& family, std::uint64_t seed) {
    std::string s = std::to_string(seed);
    if (family == "blowup") {
        return {"blowup(random_regular(60,3," + s + "),4)", "blowup(random_regular(60,3," + s + "),8)",
                "blowup(random_regular(60,3," + s + "),16)"};
    }
    if (family == "bipartite") return {"complete_bipartite(8,8)", "complete_bipartite(16,16)", "complete_bipartite(32,32)"};
    if (family == "regular") {
        return {"random_regular(1000,4," + s + ")", "random_regular(1000,8," + s + ")",
                "random_regular(1000,16," + s + ")"};
    }
    throw std::invalid_argument("unknown bench family " + family);
}

std::vector<BenchRow> run_bench(const std::vector<std::string>& families, const std::vector<std::uint64_t>& seeds,
                                const PipelineConfig& cfg, bool timing) {
    std::vector<BenchRow> rows;
    for (const auto& f : families) {
        for (std::uint64_t seed : seeds) {
            for (auto& m : family_members(f, seed)) {
                BenchRow r;
                r.family = f;
                r.member = m;
                r.seed = seed;
                r.alpha = cfg.alpha.str();
                rows.push_back(std::move(r));
            }
        }
    }
    const auto count = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        BenchRow& r = rows[i];
        auto start = std::chrono::steady_clock::now();
        try {
            Graph g = generate(r.member);
            r.n = g.order();
            r.d = g.average_degree_real();
            CruxResult c = crux_bounded(g, cfg.alpha, cfg.crux_budget);
            r.crux_lo = c.lo;
            r.crux_hi = c.hi;
            double C = static_cast<double>(c.hi);
            r.theory_t = C > 1 ? std::min(r.d, std::sqrt(C / std::log(C))) : std::min(r.d, 1.0);
            r.reference = r.d > 1 ? r.d / std::sqrt(std::log(r.d)) : r.d;
            PipelineConfig run = cfg;
            run.seed = r.seed;
            BuildTrace trace = dispatch(g, run);
            if (trace.certificate && verify_certificate(g, *trace.certificate).ok) {
                r.achieved_t = trace.certificate->t();
            } else {
                r.status = "shortfall";
            }
        } catch (const std::exception& e) {
            r.status = std::string("error: ") + e.what();
        }
        if (timing) {
            r.runtime_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
    }
    return rows;
}

namespace {

std::string fixed(double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
    out << "# " << kBenchSchema << "\n";
    out << "family,member,n,d,alpha,crux_lo,crux_hi,theory_t,achieved_t,d_over_sqrt_ln_d,runtime_ms,seed,status\n";
    for (const auto& r : rows) {
        out << r.family << ',' << quoted(r.member) << ',' << r.n << ',' << fixed(r.d, 4) << ',' << r.alpha << ','
            << r.crux_lo << ',' << r.crux_hi << ',' << fixed(r.theory_t, 4) << ',' << r.achieved_t << ','
            << fixed(r.reference, 4) << ',' << (r.runtime_ms < 0 ? std::string("-") : fixed(r.runtime_ms, 1)) << ','
            << r.seed << ',' << quoted(r.status) << "\n";
    }
}

}  // namespace forge
