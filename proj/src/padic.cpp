#include "pqs/padic.hpp"

#include <stdexcept>

#include "pqs/modarith.hpp"

namespace pqs {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

PAdicContext::PAdicContext(std::uint64_t p_, int precision_) : p(p_), precision(precision_) {
    if (!is_prime_u64(p)) throw std::invalid_argument("PAdicContext: p = " + std::to_string(p_) + " is not prime");
    if (precision < 1) throw std::invalid_argument("PAdicContext: precision must be >= 1");
    prime = mpz_class(static_cast<unsigned long>(p));
    mpz_pow_ui(modulus.get_mpz_t(), prime.get_mpz_t(), static_cast<unsigned long>(precision));
}

mpz_class PAdicContext::pow(long e) const {
    if (e < 0) throw std::invalid_argument("PAdicContext::pow: negative exponent");
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), prime.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

namespace {

// Strip all factors of p from |x| and return their count. x must be nonzero.
long remove_prime(mpz_class& x, const mpz_class& p) {
    mpz_class reduced;
    mp_bitcnt_t cnt = mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    x = reduced;
    return static_cast<long>(cnt);
}

PAdicNumber make_exhausted(long floor_valuation) {
    PAdicNumber z;
    z.is_zero = true;
    z.valuation = floor_valuation;
    z.exhausted = true;
    return z;
}

// Reduce a raw (valuation, residue) pair into canonical form, where residue is
// known mod p^known only. Returns zero/exhausted when everything cancels.
PAdicNumber canonicalize(long valuation, mpz_class residue, int known, const PAdicContext& ctx) {
    if (known <= 0) return make_exhausted(valuation);
    mpz_class window = ctx.pow(known);
    residue = residue % window;
    if (residue < 0) residue += window;
    if (residue == 0) return make_exhausted(valuation + known);
    long shift = remove_prime(residue, ctx.prime);
    int remaining = known - static_cast<int>(shift);
    if (remaining <= 0) return make_exhausted(valuation + known);
    PAdicNumber r;
    r.is_zero = false;
    r.valuation = valuation + shift;
    r.lost = ctx.precision - remaining;
    mpz_class unit_window = ctx.pow(remaining);
    r.unit = residue % unit_window;
    return r;
}

} // namespace

PAdicNumber padic_zero() { return PAdicNumber{}; }

PAdicNumber padic_from_integer(const mpz_class& x, const PAdicContext& ctx) {
    PAdicNumber r;
    if (x == 0) return r;
    mpz_class u = x;
    long v = remove_prime(u, ctx.prime);
    r.is_zero = false;
    r.valuation = v;
    r.lost = 0;
    u %= ctx.modulus;
    if (u < 0) u += ctx.modulus;
    r.unit = u;
    return r;
}

PAdicNumber padic_from_rational(const Rational& q, const PAdicContext& ctx) {
    if (q == 0) return PAdicNumber{};
    mpz_class num(q.get_num()), den(q.get_den());
    long vn = remove_prime(num, ctx.prime);
    long vd = remove_prime(den, ctx.prime);
    PAdicNumber r;
    r.is_zero = false;
    r.valuation = vn - vd;
    r.lost = 0;
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), ctx.modulus.get_mpz_t()) == 0)
        throw std::logic_error("padic_from_rational: denominator not invertible");
    mpz_class u = (num % ctx.modulus) * inv % ctx.modulus;
    if (u < 0) u += ctx.modulus;
    r.unit = u;
    return r;
}

mpz_class padic_to_integer(const PAdicNumber& a, const PAdicContext& ctx) {
    if (a.is_zero) return 0;
    if (a.valuation < 0)
        throw std::invalid_argument("padic_to_integer: negative valuation");
    if (a.valuation >= ctx.precision) return 0;
    mpz_class r = a.unit * ctx.pow(a.valuation) % ctx.modulus;
    return r;
}

PAdicNumber padic_neg(const PAdicNumber& a, const PAdicContext& ctx) {
    if (a.is_zero) return a;
    PAdicNumber r = a;
    mpz_class window = ctx.pow(ctx.precision - a.lost);
    r.unit = window - a.unit;
    return r;
}

PAdicNumber padic_add(const PAdicNumber& a, const PAdicNumber& b, const PAdicContext& ctx) {
    if (a.is_zero && b.is_zero) {
        if (!a.exhausted && !b.exhausted) return padic_zero();
        // Adding noise below precision to anything only keeps the weaker bound.
        return make_exhausted(std::min(a.exhausted ? a.valuation : b.valuation,
                                       b.exhausted ? b.valuation : a.valuation));
    }
    if (a.is_zero) {
        if (!a.exhausted) return b;
        if (a.valuation > b.valuation) {
            int known = static_cast<int>(std::min<long>(ctx.precision - b.lost, a.valuation - b.valuation));
            return canonicalize(b.valuation, b.unit, known, ctx);
        }
        return make_exhausted(a.valuation);
    }
    if (b.is_zero) return padic_add(b, a, ctx);

    long v = std::min(a.valuation, b.valuation);
    long da = a.valuation - v;
    long db = b.valuation - v;
    // Digits known in the sum, measured from p^v.
    long known = std::min<long>(ctx.precision - a.lost + da, ctx.precision - b.lost + db);
    known = std::min<long>(known, ctx.precision);
    if (known <= 0) return make_exhausted(v);
    mpz_class window = ctx.pow(known);
    mpz_class s = a.unit * ctx.pow(da) + b.unit * ctx.pow(db);
    return canonicalize(v, s % window, static_cast<int>(known), ctx);
}

PAdicNumber padic_sub(const PAdicNumber& a, const PAdicNumber& b, const PAdicContext& ctx) {
    return padic_add(a, padic_neg(b, ctx), ctx);
}

PAdicNumber padic_mul(const PAdicNumber& a, const PAdicNumber& b, const PAdicContext& ctx) {
    if (a.is_zero || b.is_zero) {
        if ((a.is_zero && !a.exhausted) || (b.is_zero && !b.exhausted)) return padic_zero();
        return make_exhausted(a.valuation + b.valuation);
    }
    int lost = std::max(a.lost, b.lost);
    PAdicNumber r;
    r.is_zero = false;
    r.valuation = a.valuation + b.valuation;
    r.lost = lost;
    mpz_class window = ctx.pow(ctx.precision - lost);
    r.unit = a.unit * b.unit % window;
    return r;
}

PAdicNumber padic_div(const PAdicNumber& a, const PAdicNumber& b, const PAdicContext& ctx) {
    if (b.is_zero) throw std::domain_error("padic_div: division by zero");
    if (a.is_zero) {
        if (a.exhausted) return make_exhausted(a.valuation - b.valuation);
        return padic_zero();
    }
    int lost = std::max(a.lost, b.lost);
    mpz_class window = ctx.pow(ctx.precision - lost);
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), mpz_class(b.unit % window).get_mpz_t(), window.get_mpz_t()) == 0)
        throw std::logic_error("padic_div: unit not invertible");
    PAdicNumber r;
    r.is_zero = false;
    r.valuation = a.valuation - b.valuation;
    r.lost = lost;
    r.unit = a.unit * inv % window;
    return r;
}

PAdicNumber padic_pow(const PAdicNumber& a, unsigned long e, const PAdicContext& ctx) {
    if (e == 0) return padic_from_integer(1, ctx);
    if (a.is_zero) return a;
    PAdicNumber acc = padic_from_integer(1, ctx);
    PAdicNumber base = a;
    unsigned long k = e;
    while (k > 0) {
        if (k & 1) acc = padic_mul(acc, base, ctx);
        k >>= 1;
        if (k > 0) base = padic_mul(base, base, ctx);
    }
    return acc;
}

bool padic_equal(const PAdicNumber& a, const PAdicNumber& b, const PAdicContext& ctx) {
    if (a.is_zero || b.is_zero) {
        if (a.is_zero && b.is_zero) return true;
        const PAdicNumber& z = a.is_zero ? a : b;
        const PAdicNumber& n = a.is_zero ? b : a;
        // A vanished value matches anything smaller than its floor.
        return z.exhausted && n.valuation >= z.valuation;
    }
    if (a.valuation != b.valuation) return false;
    int known = ctx.precision - std::max(a.lost, b.lost);
    if (known <= 0) return true;
    mpz_class window = ctx.pow(known);
    return a.unit % window == b.unit % window;
}

std::string padic_to_string(const PAdicNumber& a, const PAdicContext& ctx) {
    if (a.is_zero) {
        if (a.exhausted) return "O(" + ctx.prime.get_str() + "^" + std::to_string(a.valuation) + ")";
        return "0";
    }
    std::string s = a.unit.get_str() + "*" + ctx.prime.get_str() + "^" + std::to_string(a.valuation);
    if (a.lost > 0) s += " (+/- " + std::to_string(a.lost) + " digits)";
    return s;
}

mpz_class unit_inverse(const mpz_class& u, const PAdicContext& ctx) {
    if (mpz_divisible_p(u.get_mpz_t(), ctx.prime.get_mpz_t()))
        throw std::invalid_argument("unit_inverse: argument is divisible by p");
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), ctx.modulus.get_mpz_t()) == 0)
        throw std::invalid_argument("unit_inverse: argument not invertible");
    return inv;
}

std::optional<long> vp_int(const mpz_class& x, const mpz_class& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 32) == 0)
        throw std::invalid_argument("vp_int: p is not prime");
    if (x == 0) return std::nullopt;
    mpz_class u = x;
    return remove_prime(u, p);
}

std::optional<long> vp_int(const mpz_class& x, std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("vp_int: p is not prime");
    if (x == 0) return std::nullopt;
    mpz_class u = x;
    mpz_class pz(static_cast<unsigned long>(p));
    return remove_prime(u, pz);
}

std::optional<long> vp_rational(const Rational& q, std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("vp_rational: p is not prime");
    if (q == 0) return std::nullopt;
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class num(q.get_num()), den(q.get_den());
    long vn = num == 0 ? 0 : remove_prime(num, pz);
    long vd = remove_prime(den, pz);
    return vn - vd;
}

mpz_class centered_mod(const mpz_class& a, const mpz_class& m) {
    if (m < 1) throw std::invalid_argument("centered_mod: modulus must be positive");
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (2 * r > m) r -= m;
    return r;
}

long centered_mod(long a, long m) {
    mpz_class r = centered_mod(mpz_class(a), mpz_class(m));
    return r.get_si();
}

} // namespace pqs
