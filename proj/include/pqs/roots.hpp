#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pqs/padic.hpp"
#include "pqs/poly.hpp"

namespace pqs {

inline constexpr std::uint64_t default_residue_budget = 10'000'000;

// Residue a0 mod p^level at which the Newton gap v(f(a0)) > 2 v(f'(a0)) holds,
// so a0 refines to a unique simple root.
struct HenselSeed {
    mpz_class a0;
    int level = 1;
};

struct SeedGap {
    std::optional<long> vf;  // nullopt = +infinity (exact integer root)
    std::optional<long> vdf;

    bool holds() const {
        if (!vdf) return false;
        if (!vf) return true;
        return *vf > 2 * *vdf;
    }
};

SeedGap seed_gap(const DensePoly& f, std::uint64_t p, const HenselSeed& seed);

// Does f have a root mod p^level? Exhaustive over p^level residues; throws
// budget_error when p^level exceeds the budget.
bool has_zero_mod(const DensePoly& f, std::uint64_t p, unsigned level,
                  std::uint64_t budget = default_residue_budget);

// Smallest residue mod p^level satisfying the Newton gap, or nullopt.
std::optional<HenselSeed> find_hensel_seed(const DensePoly& f, std::uint64_t p, unsigned level,
                                           std::uint64_t budget = default_residue_budget);

// Newton refinement of a seed to precision N: v(f(root)) >= N.
PAdicNumber hensel_lift(const DensePoly& f, const HenselSeed& seed, const PAdicContext& ctx);

struct HenselTrace {
    PAdicNumber root;
    long derivative_valuation = 0;
    std::vector<long> residual_valuations; // v(f(x)) per iteration, capped at target
};

HenselTrace hensel_lift_traced(const DensePoly& f, const HenselSeed& seed, const PAdicContext& ctx);

// Square root machinery used by the degree-2 decision.
std::optional<std::uint64_t> sqrt_mod_prime(std::uint64_t a, std::uint64_t p);
bool is_square_in_qp(const mpz_class& d, std::uint64_t p);
// s with s^2 = u mod p^k for a unit square u; picks one of the two roots.
mpz_class unit_sqrt_truncated(const mpz_class& u, std::uint64_t p, int k);

struct SimpleZeroDecision {
    bool exists = false;
    std::optional<HenselSeed> seed;  // set when exists
    bool double_root = false;        // degree 2 with vanishing discriminant
    bool double_root_in_zp = false;
    std::string note;
};

// Decide whether f of degree 1 or 2 has a simple p-adic integer zero, with a
// verified seed as the certificate.
SimpleZeroDecision simple_zero_deg_le2(const DensePoly& f, std::uint64_t p);

} // namespace pqs
