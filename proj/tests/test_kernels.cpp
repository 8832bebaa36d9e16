#include <doctest.h>

#include <bit>

#include "forge/generators.hpp"
#include "forge/kernels.hpp"

using namespace forge;
using namespace forge::kernels;

namespace {

std::vector<Graph> samples() {
    std::vector<Graph> out{petersen(), complete(7), cycle(12), hypercube(4), complete_bipartite(5, 6)};
    for (std::uint64_t s = 0; s < 12; ++s) out.push_back(gnp(8 + static_cast<Vertex>(s % 9), 0.35, s));
    return out;
}

}  // namespace

TEST_CASE("mask graph basics") {
    MaskGraph m = MaskGraph::from(cycle(5));
    CHECK(m.boundary(mask_of(std::vector<Vertex>{0})) == mask_of(std::vector<Vertex>{1, 4}));
    CHECK(m.edges_in(0b111) == 2);
    CHECK(mask_members(0b1010) == std::vector<Vertex>{1, 3});
    CHECK(mask_less(0b100, 0b011));
    CHECK(mask_less(0b011, 0b101));
    CHECK_THROWS_AS(MaskGraph::from(empty_graph(kMaxMaskOrder + 1)), std::invalid_argument);
}

TEST_CASE("expansion scan: serial and parallel agree") {
    for (const Graph& g : samples()) {
        MaskGraph m = MaskGraph::from(g);
        std::vector<std::int64_t> need(g.order() + 1, -1);
        for (Vertex s = 1; s <= g.order() * 2 / 3; ++s) need[s] = (s + 1) / 2 + 1;
        auto a = expansion_scan(m, need, Exec::serial);
        auto b = expansion_scan(m, need, Exec::parallel);
        CHECK(a.violators == b.violators);
        CHECK(a.checked == b.checked);
        for (Mask x : a.violators) CHECK(std::popcount(m.boundary(x)) < need[std::popcount(x)]);
    }
}

TEST_CASE("crux search: serial and parallel agree") {
    for (const Graph& g : samples()) {
        MaskGraph m = MaskGraph::from(g);
        for (Vertex s = 2; s <= g.order(); s += 2) {
            std::int64_t need = g.size() * s / g.order();
            auto a = crux_search(m, s, need, Exec::serial);
            auto b = crux_search(m, s, need, Exec::parallel);
            CHECK(a.witness == b.witness);
            if (a.witness) CHECK(m.edges_in(*a.witness) >= need);
        }
    }
}

TEST_CASE("dense scan: serial and parallel agree") {
    for (const Graph& g : samples()) {
        MaskGraph m = MaskGraph::from(g);
        std::vector<std::int64_t> need(g.order() + 1, -1);
        for (Vertex s = 0; s < 3 && s < g.order(); ++s) need[s] = g.size() * (g.order() - s) / (2 * g.order());
        auto a = dense_scan(m, need, Exec::serial);
        auto b = dense_scan(m, need, Exec::parallel);
        CHECK(a.violator == b.violator);
    }
}
