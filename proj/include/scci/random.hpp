#pragma once

#include <cstdint>
#include <random>

namespace scci {

// All randomized code in this library draws from std::mt19937_64, whose output
// sequence is pinned by the C++ standard, through the helpers below. Raw engine
// output is never consumed through std:: distributions (their mappings are
// implementation-defined), so a (seed, draw order) pair reproduces bit-identical
// streams on every platform.
using Rng = std::mt19937_64;

// SplitMix64 finalizer (Steele, Lea & Flood; public-domain constants).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Per-pair seeds: two rounds of the finalizer over (master, index, stream).
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index,
                                 std::uint64_t stream = 0) {
    return mix64(mix64(master_seed ^ mix64(index)) + stream);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [lo, hi], both inclusive. Plain modulo reduction; the
// bias is < range / 2^64 and irrelevant for the ranges used here.
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
    const auto range = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(rng() % range);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

}  // namespace scci
