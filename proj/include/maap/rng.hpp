#pragma once

#include <cstdint>

#include "maap/rational.hpp"

namespace maap {

// SplitMix64. Fixed across platforms so that seeded verification runs are
// reproducible from the seed alone.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Documented as next() mod bound; the modulo bias is irrelevant at the
    // bounds used here and keeps the draw spec'able in one line.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Random instance weight: k/1000 with k uniform in [0, 1000].
inline Rational random_weight_milli(SplitMix64& rng) {
    return Rational(static_cast<long>(rng.below(1001)), 1000);
}

}  // namespace maap
