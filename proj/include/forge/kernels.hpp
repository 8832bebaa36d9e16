#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "forge/graph.hpp"

// Exhaustive subset scans over graphs small enough for 32-bit masks. Each scan
// has a serial reference and an OpenMP variant; both return identical results.
namespace forge::kernels {

using Mask = std::uint32_t;

inline constexpr Vertex kMaxMaskOrder = 24;

enum class Exec { serial, parallel };

struct MaskGraph {
    Vertex n = 0;
    std::vector<Mask> nbr;

    // Throws std::invalid_argument when g.order() > kMaxMaskOrder.
    static MaskGraph from(const Graph& g);

    Mask boundary(Mask x) const;
    std::int64_t edges_in(Mask x) const;
};

// Set order used everywhere for witnesses: by size, then lexicographic on the
// sorted member list.
bool mask_less(Mask a, Mask b);
std::vector<Vertex> mask_members(Mask m);
Mask mask_of(std::span<const Vertex> members);

// Every X with need[|X|] >= 0 and |N(X)| < need[|X|], sorted by mask_less.
// need has n + 1 entries; a negative entry skips that size.
struct ExpansionScan {
    std::vector<Mask> violators;
    std::int64_t checked = 0;
};
ExpansionScan expansion_scan(const MaskGraph& g, std::span<const std::int64_t> need, Exec exec);

// Smallest (by mask_less) s-subset inducing at least need_edges edges, found
// by branch and bound. nodes receives the number of search nodes expanded.
// With a budget the search runs serially and stops early; exhausted is set
// when it did so without deciding the size.
struct CruxSearch {
    std::optional<Mask> witness;
    std::int64_t nodes = 0;
    bool exhausted = false;
};
CruxSearch crux_search(const MaskGraph& g, Vertex s, std::int64_t need_edges, Exec exec,
                       std::int64_t budget = -1);

// Smallest (by mask_less) W with need[|W|] >= 0 and e(G - W) < need[|W|].
struct DenseScan {
    std::optional<Mask> violator;
    std::int64_t checked = 0;
};
DenseScan dense_scan(const MaskGraph& g, std::span<const std::int64_t> need, Exec exec);

}  // namespace forge::kernels
