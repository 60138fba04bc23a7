#pragma once

#include <cstdint>

namespace pqs {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t acc = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) acc = mulmod_u64(acc, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return acc;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs with this witness set.
bool is_prime_u64(std::uint64_t n);

} // namespace pqs
