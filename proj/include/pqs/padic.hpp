#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace pqs {

using Rational = mpq_class;

// Prime p together with a working precision of N base-p digits. All truncated
// arithmetic in this module is carried out modulo p^N.
struct PAdicContext {
    std::uint64_t p = 2;
    int precision = 1; // N
    mpz_class prime;   // p as an mpz
    mpz_class modulus; // p^N

    PAdicContext(std::uint64_t p_, int precision_);

    // p^e for 0 <= e <= precision-ish ranges; exact for any e >= 0.
    mpz_class pow(long e) const;
};

// A truncated p-adic number. Nonzero values are p^valuation * unit with the
// unit coprime to p, stored canonically mod p^(N - lost). `lost` counts the
// trailing digits destroyed by cancellation in addition; digits of `unit`
// above N - lost are not meaningful. `exhausted` marks a value that cancelled
// below representable precision: it prints as zero but is not known to be a
// true zero.
struct PAdicNumber {
    bool is_zero = true;
    long valuation = 0;
    mpz_class unit = 0;
    int lost = 0;
    bool exhausted = false;

    int known_digits(const PAdicContext& ctx) const { return ctx.precision - lost; }
};

PAdicNumber padic_zero();
PAdicNumber padic_from_integer(const mpz_class& x, const PAdicContext& ctx);
PAdicNumber padic_from_rational(const Rational& q, const PAdicContext& ctx);

// Canonical nonnegative representative mod p^N. Requires valuation >= 0.
mpz_class padic_to_integer(const PAdicNumber& a, const PAdicContext& ctx);

PAdicNumber padic_add(const PAdicNumber& a, const PAdicNumber& b, const PAdicContext& ctx);
PAdicNumber padic_sub(const PAdicNumber& a, const PAdicNumber& b, const PAdicContext& ctx);
PAdicNumber padic_neg(const PAdicNumber& a, const PAdicContext& ctx);
PAdicNumber padic_mul(const PAdicNumber& a, const PAdicNumber& b, const PAdicContext& ctx);
PAdicNumber padic_div(const PAdicNumber& a, const PAdicNumber& b, const PAdicContext& ctx);
PAdicNumber padic_pow(const PAdicNumber& a, unsigned long e, const PAdicContext& ctx);

// True when a and b agree on every digit both sides know.
bool padic_equal(const PAdicNumber& a, const PAdicNumber& b, const PAdicContext& ctx);

std::string padic_to_string(const PAdicNumber& a, const PAdicContext& ctx);

// Inverse of a unit mod p^N. Throws std::invalid_argument when p divides u.
mpz_class unit_inverse(const mpz_class& u, const PAdicContext& ctx);

// Exact valuation of an integer or rational. nullopt encodes +infinity (x = 0).
// The prime is validated; throws std::invalid_argument on composite p.
std::optional<long> vp_int(const mpz_class& x, const mpz_class& p);
std::optional<long> vp_int(const mpz_class& x, std::uint64_t p);
std::optional<long> vp_rational(const Rational& q, std::uint64_t p);

// Representative of a mod m in the centered window (-m/2, m/2].
mpz_class centered_mod(const mpz_class& a, const mpz_class& m);
long centered_mod(long a, long m);

} // namespace pqs
