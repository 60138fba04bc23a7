#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pqs/kernels.hpp"

namespace pqs {

inline constexpr std::uint64_t default_waring_modulus_limit = 1'000'000;
inline constexpr std::uint64_t default_residue_scan_limit = 10'000'000;

// Sorted distinct values of x^n mod b over all x (units_only: over x coprime
// to b).
std::vector<std::uint64_t> nth_power_residues(std::uint64_t n, std::uint64_t b, bool units_only = false,
                                              std::uint64_t modulus_limit = default_waring_modulus_limit);

struct WaringResult {
    std::optional<unsigned> value;
    unsigned cap = 0;
    // For the theta form: a witness tuple (x_1,...,x_g) with x_1 coprime to b
    // and sum of n-th powers divisible by b; lexicographically smallest.
    std::vector<std::uint64_t> certificate;
    // Residues never reached when value is nullopt.
    std::vector<std::uint64_t> unreached;
};

// Smallest g such that some x_1,...,x_g with gcd(x_1, b) = 1 have
// x_1^n + ... + x_g^n = 0 mod b. cap = 0 means cap = b.
WaringResult theta(std::uint64_t n, std::uint64_t b, unsigned cap = 0, bool want_certificate = false,
                   std::uint64_t modulus_limit = default_waring_modulus_limit);

// Smallest g such that every residue mod b is a sum of g n-th powers.
WaringResult gamma(std::uint64_t n, std::uint64_t b, unsigned cap = 0,
                   std::uint64_t modulus_limit = default_waring_modulus_limit);

// A tuple of length g whose n-th powers sum to `target` mod b, lex smallest;
// nullopt when target is not a sum of g n-th powers.
std::optional<std::vector<std::uint64_t>> gamma_certificate(std::uint64_t n, std::uint64_t b, std::uint64_t target,
                                                            unsigned g,
                                                            std::uint64_t modulus_limit = default_waring_modulus_limit);

struct NegOnePower {
    bool yes = false;
    std::uint64_t witness = 0; // smallest unit x with x^n = -1 mod modulus
    std::uint64_t modulus = 0; // p^(2 v_p(n) + 1)
};

// Is -1 an n-th power of a unit mod p^(2 v_p(n) + 1)?
NegOnePower is_neg1_nth_power(std::uint64_t n, std::uint64_t p,
                              std::uint64_t modulus_limit = default_residue_scan_limit);

} // namespace pqs
