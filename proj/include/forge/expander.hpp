#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/graph.hpp"

namespace forge {

// Slack for comparisons against log-based thresholds.
inline constexpr double kLogTolerance = 1e-9;

struct ExpansionParams {
    double epsilon = 0.1;
    double k = 1;

    // Throws std::invalid_argument unless 0 < epsilon < 1 and k >= 1.
    void validate() const;
};

// 0 below k/5, epsilon / ln^2(15x/k) from there on.
double rho(double x, const ExpansionParams& params);

// Inclusive window of subset sizes the expansion condition constrains:
// k/2 <= |X| <= 2n/3.
std::pair<Vertex, Vertex> expansion_window(Vertex n, const ExpansionParams& params);

struct CheckMode {
    enum class Kind { exhaustive, sampled };
    Kind kind = Kind::exhaustive;
    int trials = 0;
    std::uint64_t seed = 0;

    static CheckMode exhaustive() { return {}; }
    static CheckMode sampled(int trials, std::uint64_t seed) { return {Kind::sampled, trials, seed}; }
    std::string str() const;
};

struct ExpansionViolation {
    std::vector<Vertex> set;
    Vertex boundary = 0;
    double required = 0;
    // Only for robust checks: the adversarial deletion set that produced the
    // failure (empty when the plain boundary already fails).
    std::vector<Edge> deleted;
};

struct ExpansionReport {
    bool pass = true;
    CheckMode mode;
    bool robust = false;
    std::int64_t sets_checked = 0;
    std::int64_t violation_count = 0;
    // At most kMaxReportedViolations entries, smallest first.
    std::vector<ExpansionViolation> violations;
    std::string note;
};

inline constexpr std::size_t kMaxReportedViolations = 16;

// Exhaustive mode requires n <= 20. The robust flag adds a heuristic
// adversarial edge deletion per set; it can find violations but never
// certifies the robust property.
ExpansionReport check_expander(const Graph& g, const ExpansionParams& params, CheckMode mode, bool robust = false);

enum class Certification { verified_exhaustive, verified_sampled, extracted_unverified };
std::string to_string(Certification c);

struct ExpanderWitness {
    Subgraph sub;  // origin holds root-graph ids
    ExpansionParams params;
    Certification certified = Certification::extracted_unverified;
    int trials = 0;
    std::uint64_t seed = 0;
    int descents = 0;
    std::vector<std::string> notes;
};

class PreconditionError : public std::invalid_argument {
public:
    PreconditionError(const std::string& what, double threshold)
        : std::invalid_argument(what), threshold_(threshold) {}
    double threshold() const { return threshold_; }

private:
    double threshold_;
};

// Throws std::invalid_argument when g has no edges. The result always has
// d(H) >= d(G)/2 and min degree >= d(H)/2; std::logic_error if not.
ExpanderWitness extract_expander(const Graph& g, const ExpansionParams& params);

// Removes x (ids local to h.sub.graph) and re-extracts inside the rest.
// PreconditionError when |x| reaches n*rho(n)*d/(4*Delta).
ExpanderWitness robust_subset_removal(const ExpanderWitness& h, const VertexSet& x);
double robust_removal_threshold(const Graph& h, const ExpansionParams& params);

// Repeatedly deletes a minimum-degree vertex (smallest id on ties) while its
// degree is below half the current average degree.
Subgraph min_degree_peel(const Graph& g);

}  // namespace forge
