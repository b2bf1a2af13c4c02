#pragma once

#include <cstdint>

namespace onefifth::stats {

/// Per-thread operation counters, reported by the bench CLI.
struct Counters {
    std::uint64_t modmul = 0;
    std::uint64_t modpow = 0;
    std::uint64_t gcd = 0;
    std::uint64_t max_poly_mul_degree = 0;

    void reset() { *this = Counters{}; }
};

inline Counters& counters() {
    thread_local Counters c;
    return c;
}

inline void note_poly_mul_degree(std::uint64_t deg) {
    auto& c = counters();
    if (deg > c.max_poly_mul_degree) c.max_poly_mul_degree = deg;
}

} // namespace onefifth::stats
