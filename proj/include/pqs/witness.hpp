#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pqs/padic.hpp"
#include "pqs/poly.hpp"

namespace pqs {

// Smallest pair (k1, k2) with k1 >= min_k, k2 >= min_k and
// k1 * m1 - k2 * m2 = target, for coprime m1, m2.
std::pair<long, long> bezout_exponents(unsigned m1, unsigned m2, long target, long min_k);

// Two integer points whose value ratio under f approximates r to order > u.
struct ApproximationWitness {
    mpz_class x1; // numerator point, reduced mod p^N
    mpz_class x2;
    long achieved_exponent = 0;  // v_p(f(x1)/f(x2) - r), exact
    bool exact = false;          // ratio equals r exactly
    bool swapped = false;        // roots were exchanged to order the cofactors
    // Construction trace.
    std::size_t index1 = 0, index2 = 0;
    long k1 = 0, k2 = 0;
    long h1 = 0, h2 = 0;
    PAdicNumber scale;           // s
    PAdicNumber cofactor_ratio;  // G
};

// Build points x1 = y1 p^k1 + z_i, x2 = y2 p^k2 + z_j around the roots of f
// with coprime multiplicities, so that f(x1)/f(x2) lands within p^-u of r.
// Verification is exact rational arithmetic on the produced integers.
ApproximationWitness approximation_witness(const FactoredPoly& f, std::size_t i, std::size_t j, const Rational& r,
                                           long u, const PAdicContext& ctx);

// Same approximation statement for m-term sums of n-th powers: two tuples of
// nonnegative integers whose power-sum ratio approximates r to order > u.
struct PowerSumWitness {
    std::vector<mpz_class> tuple1;
    std::vector<mpz_class> tuple2;
    long achieved_exponent = 0;
    bool exact = false;
    mpz_class lifted_root; // common n-th root used by both tuples
    long k1 = 0, k2 = 0;
    std::vector<std::uint64_t> base_tuple; // residue tuple the construction starts from
};

PowerSumWitness power_sum_witness(unsigned m, unsigned n, std::uint64_t p, const Rational& r, long u,
                                  const PAdicContext& ctx);

} // namespace pqs
