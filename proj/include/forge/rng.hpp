#pragma once

#include <cstdint>
#include <random>

namespace forge {

using Rng = std::mt19937_64;

// Stream derivation for retries and per-trial generators: the same
// (base, stream) pair always yields the same child seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// Uniform integer in [0, bound). Written against the raw engine output rather
// than std::uniform_int_distribution so fixtures stay identical across
// standard library implementations.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// Uniform double in [0, 1) with 53 random bits.
double uniform_unit(Rng& rng);

inline bool fair_coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace forge
