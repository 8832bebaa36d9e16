#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "forge/pipeline.hpp"

namespace forge {

struct BenchRow {
    std::string family;
    std::string member;  // generator expression
    Vertex n = 0;
    double d = 0;
    std::string alpha;
    std::int64_t crux_lo = 0;
    std::int64_t crux_hi = 0;
    double theory_t = 0;  // min{d, sqrt(C/ln C)} at the crux upper bound
    int achieved_t = 0;
    double reference = 0;  // d / sqrt(ln d)
    double runtime_ms = -1;
    std::uint64_t seed = 0;
    std::string status = "ok";
};

inline constexpr const char* kBenchSchema = "forge.bench/1";

// Known families: blowup, bipartite, regular. Throws std::invalid_argument
// on an unknown name.
std::vector<std::string> family_members(const std::string& family, std::uint64_t seed);

// Rows in (family, member, seed) order; rows run in parallel. A row that
// throws is recorded with its error and the run continues.
std::vector<BenchRow> run_bench(const std::vector<std::string>& families, const std::vector<std::uint64_t>& seeds,
                                const PipelineConfig& cfg, bool timing);

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace forge
