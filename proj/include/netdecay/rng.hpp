#pragma once

#include <cstdint>

namespace netdecay {

// Counter-based pseudo-randomness: every draw is a pure hash of
// (seed, stream tag, step, node), so ensemble results do not depend on
// iteration order and any draw can be reproduced in isolation.

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

enum class Stream : std::uint64_t {
    LeaveDraw = 1,
    InitialProb = 2,
    GraphGen = 3,
    PairGen = 4,
};

constexpr std::uint64_t counter_hash(std::uint64_t seed, Stream stream,
                                     std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc908ULL);
    h = splitmix64(h ^ static_cast<std::uint64_t>(stream));
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    return h;
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

constexpr double unit_draw(std::uint64_t seed, Stream stream,
                           std::uint64_t a, std::uint64_t b = 0) {
    return to_unit(counter_hash(seed, stream, a, b));
}

/// Uniform on the half-open interval (lo, hi].
constexpr double open_closed_draw(std::uint64_t seed, Stream stream,
                                  std::uint64_t a, std::uint64_t b,
                                  double lo, double hi) {
    return lo + (1.0 - unit_draw(seed, stream, a, b)) * (hi - lo);
}

} // namespace netdecay
