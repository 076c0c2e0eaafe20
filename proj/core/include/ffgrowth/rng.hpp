#pragma once

#include "ffgrowth/wide.hpp"

namespace ffgrowth {

// Deterministic 64-bit generator (splitmix64). The state transition and
// output function are fixed here so any implementation reproduces the
// exact stream from a seed:
//   state += 0x9E3779B97F4A7C15
//   z = state; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
//   z ^= z >> 27; z *= 0x94D049BB133111EB
//   return z ^ (z >> 31)
class SplitMix64 {
public:
    explicit SplitMix64(u64 seed) : state_(seed) {}

    u64 next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        u64 z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, bound) by rejection, so no modulo bias.
    u64 next_below(u64 bound) {
        if (bound == 0) throw std::invalid_argument("bound must be positive");
        u64 threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            u64 v = next();
            if (v >= threshold) return v % bound;
        }
    }

private:
    u64 state_;
};

// One splitmix64 step applied to a value: used to derive independent
// per-trial seeds from (seed, size index, trial index).
inline u64 mix64(u64 v) { return SplitMix64(v).next(); }

} // namespace ffgrowth
