#include "pqs/roots.hpp"

#include <cmath>
#include <stdexcept>

#include "pqs/errors.hpp"
#include "pqs/kernels.hpp"
#include "pqs/modarith.hpp"

namespace pqs {

namespace {

long vp_exact(const mpz_class& x, const mpz_class& p) {
    mpz_class reduced;
    return static_cast<long>(mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

mpz_class pow_u64(std::uint64_t p, unsigned e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
    return r;
}

// p^level as u64, or nullopt on overflow past the budget.
std::optional<std::uint64_t> pow_checked(std::uint64_t p, unsigned level, std::uint64_t budget) {
    std::uint64_t m = 1;
    for (unsigned i = 0; i < level; ++i) {
        if (m > budget / p) return std::nullopt;
        m *= p;
    }
    return m;
}

std::vector<std::uint64_t> reduce_coeffs(const DensePoly& f, std::uint64_t modulus) {
    std::vector<std::uint64_t> c;
    c.reserve(f.coeffs.size());
    mpz_class m(static_cast<unsigned long>(modulus));
    for (const auto& a : f.coeffs) {
        mpz_class r;
        mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
        c.push_back(r.get_ui());
    }
    return c;
}

} // namespace

SeedGap seed_gap(const DensePoly& f, std::uint64_t p, const HenselSeed& seed) {
    if (!is_prime_u64(p)) throw std::invalid_argument("seed_gap: p is not prime");
    mpz_class pz(static_cast<unsigned long>(p));
    SeedGap g;
    mpz_class fv = eval_at(f, seed.a0);
    mpz_class dv = eval_at(derivative(f), seed.a0);
    if (fv != 0) g.vf = vp_exact(fv, pz);
    if (dv != 0) g.vdf = vp_exact(dv, pz);
    return g;
}

bool has_zero_mod(const DensePoly& f, std::uint64_t p, unsigned level, std::uint64_t budget) {
    if (!is_prime_u64(p)) throw std::invalid_argument("has_zero_mod: p is not prime");
    if (level < 1) throw std::invalid_argument("has_zero_mod: level must be >= 1");
    auto modulus = pow_checked(p, level, budget);
    if (!modulus)
        throw budget_error("has_zero_mod: p^" + std::to_string(level) + " exceeds the residue budget " +
                           std::to_string(budget));
    return poly_first_root_mod(reduce_coeffs(f, *modulus), *modulus).has_value();
}

std::optional<HenselSeed> find_hensel_seed(const DensePoly& f, std::uint64_t p, unsigned level,
                                           std::uint64_t budget) {
    if (!is_prime_u64(p)) throw std::invalid_argument("find_hensel_seed: p is not prime");
    if (level < 1) throw std::invalid_argument("find_hensel_seed: level must be >= 1");
    auto modulus = pow_checked(p, level, budget);
    if (!modulus)
        throw budget_error("find_hensel_seed: p^" + std::to_string(level) + " exceeds the residue budget " +
                           std::to_string(budget));
    // Candidates must vanish mod p, so scan roots mod p and stride upward.
    auto base_roots = poly_roots_mod(reduce_coeffs(f, p), p);
    if (base_roots.empty()) return std::nullopt;

    const std::uint64_t stride_count = *modulus / p;
    const DensePoly df = derivative(f);
    mpz_class pz(static_cast<unsigned long>(p));
    for (std::uint64_t t = 0; t < stride_count; ++t) {
        for (std::uint64_t r : base_roots) {
            mpz_class a0(static_cast<unsigned long>(t * p + r));
            mpz_class dv = eval_at(df, a0);
            if (dv == 0) continue;
            long vdf = vp_exact(dv, pz);
            // The gap only needs f(a0) = 0 mod p^(2 vdf + 1).
            mpz_class gap_mod = pow_u64(p, static_cast<unsigned>(2 * vdf + 1));
            if (eval_mod(f, a0, gap_mod) == 0) return HenselSeed{a0, static_cast<int>(level)};
        }
    }
    return std::nullopt;
}

HenselTrace hensel_lift_traced(const DensePoly& f, const HenselSeed& seed, const PAdicContext& ctx) {
    SeedGap gap = seed_gap(f, ctx.p, seed);
    if (!gap.holds())
        throw std::invalid_argument("hensel_lift: Newton gap fails at the seed");
    if (!gap.vf) {
        // Exact integer root.
        HenselTrace tr;
        tr.root = padic_from_integer(seed.a0, ctx);
        tr.derivative_valuation = *gap.vdf;
        tr.residual_valuations.push_back(ctx.precision);
        return tr;
    }
    const long t = *gap.vdf;
    const long target = ctx.precision;
    if (t >= target)
        throw precision_error("hensel_lift: derivative valuation " + std::to_string(t) +
                              " needs precision > " + std::to_string(2 * t));
    const unsigned work = static_cast<unsigned>(target + 2 * t + 2);
    const mpz_class pm = ctx.pow(work);
    const mpz_class pmt = ctx.pow(static_cast<long>(work) + t);
    const mpz_class pt = ctx.pow(t);

    HenselTrace tr;
    tr.derivative_valuation = t;
    const DensePoly df = derivative(f);
    mpz_class x = seed.a0 % pm;
    if (x < 0) x += pm;

    const int max_iter = static_cast<int>(std::ceil(std::log2(static_cast<double>(target) + 1))) + 4;
    for (int it = 0; it <= max_iter; ++it) {
        mpz_class fx = eval_mod(f, x, pmt);
        long s = fx == 0 ? static_cast<long>(work) + t : vp_exact(fx, ctx.prime);
        tr.residual_valuations.push_back(std::min<long>(s, static_cast<long>(work) + t));
        if (s >= target) {
            mpz_class root = x % ctx.modulus;
            tr.root = padic_from_integer(root, ctx);
            return tr;
        }
        mpz_class dfx = eval_mod(df, x, pm);
        if (dfx == 0 || vp_exact(dfx, ctx.prime) != t)
            throw std::logic_error("hensel_lift: derivative valuation drifted");
        mpz_class du = dfx / pt;
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), du.get_mpz_t(), pm.get_mpz_t()) == 0)
            throw std::logic_error("hensel_lift: derivative unit not invertible");
        mpz_class step = (fx / pt) % pm * inv % pm;
        x = (x - step) % pm;
        if (x < 0) x += pm;
    }
    throw precision_error("hensel_lift: no convergence within the iteration cap");
}

PAdicNumber hensel_lift(const DensePoly& f, const HenselSeed& seed, const PAdicContext& ctx) {
    return hensel_lift_traced(f, seed, ctx).root;
}

std::optional<std::uint64_t> sqrt_mod_prime(std::uint64_t a, std::uint64_t p) {
    if (!is_prime_u64(p) || p == 2) throw std::invalid_argument("sqrt_mod_prime: p must be an odd prime");
    a %= p;
    if (a == 0) return 0;
    if (powmod_u64(a, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod_u64(a, (p + 1) / 4, p);
    // Tonelli-Shanks.
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod_u64(z, (p - 1) / 2, p) == 1) ++z;
    std::uint64_t m = s;
    std::uint64_t c = powmod_u64(z, q, p);
    std::uint64_t t = powmod_u64(a, q, p);
    std::uint64_t r = powmod_u64(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod_u64(tt, tt, p);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod_u64(b, b, p);
        m = i;
        c = mulmod_u64(b, b, p);
        t = mulmod_u64(t, c, p);
        r = mulmod_u64(r, b, p);
    }
    return r;
}

bool is_square_in_qp(const mpz_class& d, std::uint64_t p) {
    if (d == 0) throw std::invalid_argument("is_square_in_qp: zero input");
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class u;
    long v = static_cast<long>(mpz_remove(u.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t()));
    if (v % 2 != 0) return false;
    mpz_class m = (p == 2) ? mpz_class(8) : pz;
    mpz_class r;
    mpz_mod(r.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
    if (p == 2) return r == 1;
    return powmod_u64(r.get_ui(), (p - 1) / 2, p) == 1;
}

mpz_class unit_sqrt_truncated(const mpz_class& u, std::uint64_t p, int k) {
    PAdicContext ctx(p, k);
    DensePoly f({-u, 0, 1});
    HenselSeed seed;
    if (p == 2) {
        seed = HenselSeed{1, 3};
    } else {
        mpz_class r;
        mpz_mod(r.get_mpz_t(), u.get_mpz_t(), ctx.prime.get_mpz_t());
        auto s0 = sqrt_mod_prime(r.get_ui(), p);
        if (!s0) throw std::invalid_argument("unit_sqrt_truncated: not a square unit");
        seed = HenselSeed{mpz_class(static_cast<unsigned long>(*s0)), 1};
    }
    return padic_to_integer(hensel_lift(f, seed, ctx), ctx);
}

namespace {

// Verified seed for a root given as the exact rational nn / dd in Z_p.
HenselSeed seed_from_rational(const DensePoly& f, std::uint64_t p, const mpz_class& nn, const mpz_class& dd,
                              int start_level) {
    for (int e = std::max(1, start_level); e <= start_level + 48; ++e) {
        PAdicContext ctx(p, e);
        mpz_class a0 = padic_to_integer(padic_from_rational(Rational(nn) / Rational(dd), ctx), ctx);
        HenselSeed seed{a0, e};
        if (seed_gap(f, p, seed).holds()) return seed;
    }
    throw std::logic_error("seed_from_rational: gap did not materialize");
}

} // namespace

SimpleZeroDecision simple_zero_deg_le2(const DensePoly& f, std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("simple_zero_deg_le2: p is not prime");
    const long deg = f.degree();
    if (deg < 1 || deg > 2) throw std::invalid_argument("simple_zero_deg_le2: degree must be 1 or 2");
    mpz_class pz(static_cast<unsigned long>(p));
    SimpleZeroDecision out;

    if (deg == 1) {
        const mpz_class &b = f.coeffs[0], &a = f.coeffs[1];
        if (b == 0) {
            out.exists = true;
            out.seed = HenselSeed{0, 1};
            out.note = "root 0";
            return out;
        }
        long va = vp_exact(a, pz), vb = vp_exact(b, pz);
        if (vb < va) {
            out.note = "root has negative valuation";
            return out;
        }
        out.exists = true;
        out.seed = seed_from_rational(f, p, -b, a, static_cast<int>(va) + 1);
        out.note = "linear root";
        return out;
    }

    const mpz_class &c = f.coeffs[0], &b = f.coeffs[1], &a = f.coeffs[2];
    mpz_class disc = b * b - 4 * a * c;
    if (disc == 0) {
        out.double_root = true;
        long vb = b == 0 ? -1 : vp_exact(b, pz);
        long v2a = vp_exact(2 * a, pz);
        out.double_root_in_zp = b == 0 || vb >= v2a;
        out.note = "vanishing discriminant";
        return out;
    }
    if (!is_square_in_qp(disc, p)) {
        out.note = "discriminant is not a p-adic square";
        return out;
    }
    if (c == 0) {
        // X * (aX + b), b != 0 here since disc = b^2 != 0.
        out.exists = true;
        out.seed = HenselSeed{0, 1};
        out.note = "root 0";
        return out;
    }
    long vd = vp_exact(disc, pz); // even
    long v2a = vp_exact(2 * a, pz);
    long v4ac = vp_exact(4 * a * c, pz);
    int k = static_cast<int>(v4ac + v2a + vd + 16);
    mpz_class u = disc / pow_u64(p, static_cast<unsigned>(vd));
    mpz_class w = unit_sqrt_truncated(u, p, k) * pow_u64(p, static_cast<unsigned>(vd / 2));
    for (int sign : {+1, -1}) {
        mpz_class nn = -b + sign * w;
        if (nn == 0) continue; // cannot happen for 4ac != 0; defensive
        long vn = vp_exact(nn, pz);
        if (vn < v2a) continue;
        out.exists = true;
        out.seed = seed_from_rational(f, p, nn, 2 * a, static_cast<int>(vd) + 1);
        out.note = "quadratic simple root";
        return out;
    }
    out.note = "both roots have negative valuation";
    return out;
}

} // namespace pqs
