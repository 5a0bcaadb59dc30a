#pragma once

#include <cstdint>
#include <random>

namespace hgatac {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi], inclusive.
inline int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) { return uniform_real(rng) < p; }

} // namespace hgatac
