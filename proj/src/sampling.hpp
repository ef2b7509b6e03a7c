#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rsdkit::detail {

// Stamped into sample reports; counts are only comparable across runs that
// agree on this tag (mt19937_64 output is fixed by the standard, std::shuffle
// and friends are not, hence the hand-rolled shuffle below).
inline constexpr const char* kGeneratorTag = "mt19937_64/fisher-yates/v1";

// Uniform draw from [0, bound) by rejection: accept r >= 2^64 mod bound so
// every residue class keeps the same mass.
inline std::uint64_t bounded_uint64(std::mt19937_64& g, std::uint64_t bound) {
    const std::uint64_t min = (0 - bound) % bound;
    std::uint64_t r = g();
    while (r < min) r = g();
    return r % bound;
}

inline void shuffle_permutation(std::mt19937_64& g, std::vector<int>& perm) {
    for (std::size_t i = perm.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded_uint64(g, i));
        std::swap(perm[i - 1], perm[j]);
    }
}

}  // namespace rsdkit::detail
