#pragma once

#include <cstdint>
#include <random>

namespace distill {

// splitmix64 finalizer; used to derive independent RNG streams from
// (seed, stream index) so parallel loops stay deterministic.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(mix64(mix64(seed) ^ mix64(index + 1)));
}

}  // namespace distill
