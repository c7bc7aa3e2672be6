#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

// Deterministic randomness helpers. The engine is std::mt19937_64 (bit-exact
// by the standard); distributions are written out here because the standard
// library's are implementation-defined and would break seed reproducibility
// across toolchains.
namespace fdhom::rng {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for an independent sub-stream of `seed`. Every piece of randomness in
// the library is derived through this, so iterations, replications and
// projections can run in any order (or in parallel) without changing results.
inline std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t state = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 0x632be59bd9b4e019ULL));
    splitmix64(state);
    return splitmix64(state);
}

inline std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive(derive(seed, a), b);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// One standard normal draw via Box-Muller. Consumes exactly two engine words
// per call so the draw sequence does not depend on the call site.
inline double standard_normal(Engine& eng) {
    const double u1 = (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(eng() >> 11) * 0x1.0p-53;          // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Unbiased uniform index in [0, n) by rejection.
inline std::size_t uniform_index(Engine& eng, std::size_t n) {
    const std::uint64_t bound = n;
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = eng();
    while (x >= limit) x = eng();
    return static_cast<std::size_t>(x % bound);
}

}  // namespace fdhom::rng
