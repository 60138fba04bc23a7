#include "pqs/witness.hpp"

#include <numeric>
#include <stdexcept>

#include "pqs/denseness.hpp"
#include "pqs/errors.hpp"
#include "pqs/roots.hpp"

namespace pqs {

std::pair<long, long> bezout_exponents(unsigned m1, unsigned m2, long target, long min_k) {
    if (m1 < 1 || m2 < 1) throw std::invalid_argument("bezout_exponents: multiplicities must be >= 1");
    if (std::gcd(m1, m2) != 1) throw std::invalid_argument("bezout_exponents: multiplicities must be coprime");
    mpz_class g, x, y;
    mpz_class a(m1), b(m2);
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    // x*m1 + y*m2 = 1, so (t*x)*m1 - (-t*y)*m2 = t.
    mpz_class k1 = x * target, k2 = -y * target;
    // Shifting by (m2, m1) preserves the identity; take the smallest shift
    // that puts both exponents at or above min_k.
    mpz_class m2z(m2), m1z(m1);
    auto cdiv = [](const mpz_class& num, const mpz_class& den) {
        mpz_class q;
        mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        return q;
    };
    // The shift may be negative: a raw pair far above min_k moves down to the
    // smallest admissible one.
    mpz_class shift = std::max(cdiv(mpz_class(min_k) - k1, m2z), cdiv(mpz_class(min_k) - k2, m1z));
    k1 += shift * m2z;
    k2 += shift * m1z;
    if (!k1.fits_slong_p() || !k2.fits_slong_p())
        throw std::invalid_argument("bezout_exponents: exponents out of range");
    return {k1.get_si(), k2.get_si()};
}

namespace {

long vp_or_throw(const mpz_class& x, const PAdicContext& ctx, const char* what) {
    if (x == 0) throw std::invalid_argument(std::string(what) + " is zero");
    mpz_class reduced;
    return static_cast<long>(mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), ctx.prime.get_mpz_t()));
}

// v_p(a/b - r) on exact integers; nullopt when the difference is exactly 0.
std::optional<long> ratio_error_exponent(const mpz_class& a, const mpz_class& b, const Rational& r,
                                         const PAdicContext& ctx) {
    mpz_class num = a * r.get_den() - r.get_num() * b;
    if (num == 0) return std::nullopt;
    mpz_class reduced;
    long vn = static_cast<long>(mpz_remove(reduced.get_mpz_t(), num.get_mpz_t(), ctx.prime.get_mpz_t()));
    long vden = vp_or_throw(b, ctx, "denominator value") +
                vp_or_throw(mpz_class(r.get_den()), ctx, "target denominator");
    return vn - vden;
}

} // namespace

ApproximationWitness approximation_witness(const FactoredPoly& f, std::size_t i, std::size_t j, const Rational& r,
                                           long u, const PAdicContext& ctx) {
    if (i >= f.factors.size() || j >= f.factors.size())
        throw std::invalid_argument("approximation_witness: root index out of range");
    if (r == 0) throw std::invalid_argument("approximation_witness: target must be nonzero");
    const unsigned mu1_raw = f.factors[i].multiplicity;
    const unsigned mu2_raw = f.factors[j].multiplicity;
    if (i == j && mu1_raw != 1)
        throw std::invalid_argument("approximation_witness: equal indices need multiplicity 1");
    if (std::gcd(mu1_raw, mu2_raw) != 1)
        throw std::invalid_argument("approximation_witness: multiplicities must be coprime");

    ApproximationWitness out;
    out.index1 = i;
    out.index2 = j;

    mpz_class g1_val = cofactor_at_root(f, i).second;
    mpz_class g2_val = cofactor_at_root(f, j).second;
    long v1 = vp_or_throw(g1_val, ctx, "cofactor value");
    long v2 = vp_or_throw(g2_val, ctx, "cofactor value");
    std::size_t i1 = i, i2 = j;
    unsigned mu1 = mu1_raw, mu2 = mu2_raw;
    if (v1 > v2) {
        std::swap(i1, i2);
        std::swap(mu1, mu2);
        std::swap(g1_val, g2_val);
        std::swap(v1, v2);
        out.swapped = true;
        out.index1 = i1;
        out.index2 = i2;
    }
    const mpz_class z1 = f.factors[i1].root;
    const mpz_class z2 = f.factors[i2].root;

    // G = g2(z2) / g1(z1) has nonnegative valuation by the ordering above.
    Rational G_rat(g2_val, g1_val);
    G_rat.canonicalize();
    out.cofactor_ratio = padic_from_rational(G_rat, ctx);

    const long vr = *vp_rational(r, ctx.p);
    Rational s_rat = r * G_rat;
    {
        // Strip p^vr exactly.
        mpz_class pe = ctx.pow(std::abs(vr));
        if (vr >= 0)
            s_rat /= Rational(pe);
        else
            s_rat *= Rational(pe);
    }
    s_rat.canonicalize();
    out.scale = padic_from_rational(s_rat, ctx);
    const long vs = out.scale.valuation; // = v_p(G) >= 0

    auto [h1, h2] = bezout_exponents(mu1, mu2, 1, 0);
    out.h1 = h1;
    out.h2 = h2;
    PAdicNumber y1 = padic_pow(out.scale, static_cast<unsigned long>(h1), ctx);
    PAdicNumber y2 = padic_pow(out.scale, static_cast<unsigned long>(h2), ctx);

    auto [k1_base, k2_base] = bezout_exponents(mu1, mu2, vr, 1);

    long K = 0;
    while (true) {
        const long k1 = k1_base + K * static_cast<long>(mu2);
        const long k2 = k2_base + K * static_cast<long>(mu1);
        if (k1 + h1 * vs >= ctx.precision - 2 || k2 + h2 * vs >= ctx.precision - 2) {
            const long needed = std::max(k1 + h1 * vs, k2 + h2 * vs) + std::abs(vr) + u + 8;
            throw precision_error("approximation_witness: precision " + std::to_string(ctx.precision) +
                                  " too small; retry with at least " + std::to_string(needed));
        }
        mpz_class x1 = (padic_to_integer(y1, ctx) * ctx.pow(k1) + z1) % ctx.modulus;
        if (x1 < 0) x1 += ctx.modulus;
        mpz_class x2 = (padic_to_integer(y2, ctx) * ctx.pow(k2) + z2) % ctx.modulus;
        if (x2 < 0) x2 += ctx.modulus;
        mpz_class A = eval_at(f, x1);
        mpz_class B = eval_at(f, x2);
        if (B != 0 && A != 0) {
            auto e = ratio_error_exponent(A, B, r, ctx);
            if (!e) {
                out.exact = true;
                out.achieved_exponent = ctx.precision;
                out.x1 = x1;
                out.x2 = x2;
                out.k1 = k1;
                out.k2 = k2;
                return out;
            }
            if (*e > u) {
                out.achieved_exponent = *e;
                out.x1 = x1;
                out.x2 = x2;
                out.k1 = k1;
                out.k2 = k2;
                return out;
            }
        }
        K = K == 0 ? 1 : 2 * K;
    }
}

PowerSumWitness power_sum_witness(unsigned m, unsigned n, std::uint64_t p, const Rational& r, long u,
                                  const PAdicContext& ctx) {
    if (r <= 0) throw std::invalid_argument("power_sum_witness: target must be a positive rational");
    Verdict verdict = decide_power_sum(m, n, p);
    if (verdict.status != Status::Dense)
        throw std::invalid_argument("power_sum_witness: the (m, n, p) family is not dense");
    if (verdict.reason != Reason::ThetaThreshold)
        throw std::invalid_argument(
            "power_sum_witness: only the threshold route is constructive here; (n, p) = (" + std::to_string(n) +
            ", " + std::to_string(p) + ") is outside it");

    const auto& tuple = verdict.certificate.at("tuple").get<std::vector<std::uint64_t>>();
    if (tuple.empty() || tuple.size() > m) throw std::logic_error("power_sum_witness: bad threshold tuple");

    PowerSumWitness out;
    out.base_tuple = tuple;

    // f(X) = X^n + c where c is the fixed remainder of the tuple.
    mpz_class c = 0;
    for (std::size_t t = 1; t < tuple.size(); ++t) {
        mpz_class xp;
        mpz_ui_pow_ui(xp.get_mpz_t(), static_cast<unsigned long>(tuple[t]), n);
        c += xp;
    }
    std::vector<mpz_class> coeffs(n + 1, 0);
    coeffs[0] = c;
    coeffs[n] = 1;
    DensePoly f(coeffs);

    const unsigned k = [&] {
        unsigned v = 0;
        for (std::uint64_t t = n; t % p == 0; t /= p) ++v;
        return v;
    }();
    HenselSeed seed{mpz_class(static_cast<unsigned long>(tuple[0])), static_cast<int>(2 * k + 1)};
    if (!seed_gap(f, p, seed).holds()) throw std::logic_error("power_sum_witness: seed gap failed");
    PAdicNumber root = hensel_lift(f, seed, ctx);
    mpz_class zhat = padic_to_integer(root, ctx);
    out.lifted_root = zhat;

    // Around the common root: x1 = s p^k1 + z, x2 = p^k2 + z with k1 - k2 = v_p(r).
    const long vr = *vp_rational(r, p);
    Rational s_rat = r;
    {
        mpz_class pe = ctx.pow(std::abs(vr));
        if (vr >= 0)
            s_rat /= Rational(pe);
        else
            s_rat *= Rational(pe);
    }
    s_rat.canonicalize();
    PAdicNumber s = padic_from_rational(s_rat, ctx);
    mpz_class s_int = padic_to_integer(s, ctx);

    long K = 0;
    while (true) {
        const long k1 = std::max(1l, vr + 1) + K;
        const long k2 = k1 - vr;
        if (k1 >= ctx.precision - 2 || k2 >= ctx.precision - 2) {
            const long needed = std::max(k1, k2) + std::abs(vr) + u + 8;
            throw precision_error("power_sum_witness: precision " + std::to_string(ctx.precision) +
                                  " too small; retry with at least " + std::to_string(needed));
        }
        mpz_class x1 = (s_int * ctx.pow(k1) + zhat) % ctx.modulus;
        mpz_class x2 = (ctx.pow(k2) + zhat) % ctx.modulus;
        mpz_class A = eval_at(f, x1);
        mpz_class B = eval_at(f, x2);
        if (A != 0 && B != 0) {
            auto e = ratio_error_exponent(A, B, r, ctx);
            bool ok = !e || *e > u;
            if (ok) {
                out.k1 = k1;
                out.k2 = k2;
                out.exact = !e;
                out.achieved_exponent = e ? *e : ctx.precision;
                out.tuple1.push_back(x1);
                out.tuple2.push_back(x2);
                for (std::size_t t = 1; t < tuple.size(); ++t) {
                    out.tuple1.push_back(tuple[t]);
                    out.tuple2.push_back(tuple[t]);
                }
                while (out.tuple1.size() < m) {
                    out.tuple1.push_back(0);
                    out.tuple2.push_back(0);
                }
                return out;
            }
        }
        K = K == 0 ? 1 : 2 * K;
    }
}

} // namespace pqs
