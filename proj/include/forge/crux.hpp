#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "forge/expander.hpp"
#include "forge/graph.hpp"
#include "forge/rational.hpp"

namespace forge {

enum class CruxStatus { exact, bounded };

struct CruxResult {
    Rational alpha;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::vector<Vertex> witness;  // an alpha-crux of order hi
    CruxStatus status = CruxStatus::bounded;
    std::int64_t nodes = 0;
    // Not a proven bound: derived from probing expansion, see assumptions.
    std::optional<std::int64_t> heuristic_lo;
    std::vector<std::string> assumptions;
};

inline constexpr std::int64_t kDefaultCruxBudget = 10'000'000;

// d(G[s]) >= alpha * d(G), decided exactly.
bool is_alpha_crux(const Graph& g, const Rational& alpha, std::span<const Vertex> s);
// Fewest edges an s-vertex subgraph needs to be an alpha-crux.
std::int64_t crux_edge_need(const Graph& g, const Rational& alpha, std::int64_t s);

// Throws std::invalid_argument unless 0 < alpha < 1 and n <= 22.
CruxResult crux_exact(const Graph& g, const Rational& alpha);
// Any n. lo is sound; hi comes with a witness.
CruxResult crux_bounded(const Graph& g, const Rational& alpha, std::int64_t budget = kDefaultCruxBudget);

struct DenseParams {
    std::int64_t D = 1;
    Rational mu{1};
};

struct DenseReport {
    bool pass = true;
    CheckMode mode;
    std::vector<Vertex> violating;
    std::int64_t checked = 0;
};

// Every W with |W| < D (and W != V) keeps d(G - W) >= mu * d(G).
// Exhaustive mode needs n <= 20.
DenseReport is_dense(const Graph& g, const DenseParams& p, CheckMode mode);

enum class CheckOutcome { pass, fail, precondition_violated };
std::string to_string(CheckOutcome o);

struct TheoremCheck {
    CheckOutcome outcome = CheckOutcome::pass;
    std::string detail;
    std::int64_t crux = 0;
    std::vector<Vertex> counterexample;
};

// Min degree at least d/2 and alpha <= 1/5 imply (C_alpha/2, (1-3alpha)/4)-density.
TheoremCheck check_lemma_robust(const Graph& g, const Rational& alpha);
// Min degree at least d/2 and alpha <= 1/(2K+2) imply |N(X)| >= K|X| for all
// X with |X| <= C_alpha/(K+1).
TheoremCheck check_lemma_kexpan(const Graph& g, const Rational& alpha, const Rational& K);

bool min_degree_at_least_half_average(const Graph& g);

}  // namespace forge
