#pragma once

#include <cstdint>

namespace gg {

// splitmix64: tiny deterministic PRNG used for seeded experiments.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// one-shot mix of a 64-bit key
inline uint64_t mix64(uint64_t x) {
    return splitmix64(x);
}

// uniform double in [0, 1)
inline double unit_double(uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace gg
