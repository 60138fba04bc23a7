#include <doctest.h>

#include <optional>
#include <random>
#include <set>
#include <vector>

#include "pqs/errors.hpp"
#include "pqs/modarith.hpp"
#include "pqs/padic.hpp"
#include "pqs/poly.hpp"
#include "pqs/roots.hpp"

using namespace pqs;

namespace {

DensePoly dp(std::vector<long> coeffs) {
    std::vector<mpz_class> c;
    for (long v : coeffs) c.emplace_back(v);
    return DensePoly(std::move(c));
}

// Independent check that a residue class keeps producing zeros to high level:
// breadth-first refinement of roots of f mod p^k, one level at a time. A
// simple p-adic integer zero exists iff some residue r mod p^K has
// f(r) = 0 mod p^K together with 2 v(f'(r)) < K.
bool bfs_simple_zero(const DensePoly& f, std::uint64_t p, int K) {
    mpz_class pk(1);
    std::vector<mpz_class> live{0};
    for (int k = 1; k <= K; ++k) {
        pk *= p;
        std::vector<mpz_class> next;
        for (const mpz_class& base : live) {
            for (std::uint64_t t = 0; t < p; ++t) {
                mpz_class r = base + mpz_class(static_cast<unsigned long>(t)) * (pk / p);
                if (eval_mod(f, r, pk) == 0) next.push_back(r);
            }
        }
        live = std::move(next);
        if (live.empty()) return false;
    }
    DensePoly fd = derivative(f);
    for (const mpz_class& r : live) {
        mpz_class d = eval_at(fd, r);
        auto vd = vp_int(d, mpz_class(static_cast<unsigned long>(p)));
        if (vd && 2 * *vd < K) return true;
    }
    return false;
}

} // namespace

TEST_SUITE("roots") {

TEST_CASE("seed_gap computes the Newton inequality") {
    // x^2 + 1 at 5: f(2) = 5, f'(2) = 4.
    SeedGap g = seed_gap(dp({1, 0, 1}), 5, {2, 1});
    CHECK(g.vf == 1);
    CHECK(g.vdf == 0);
    CHECK(g.holds());

    // f(1) = 2 at 5: valuation 0, gap fails.
    SeedGap bad = seed_gap(dp({1, 0, 1}), 5, {1, 1});
    CHECK(bad.vf == 0);
    CHECK_FALSE(bad.holds());

    // Exact integer root: vf is infinite, gap holds when f'(a0) != 0.
    SeedGap exact = seed_gap(dp({-9, 0, 1}), 5, {3, 1});
    CHECK_FALSE(exact.vf.has_value());
    CHECK(exact.vdf == 0);
    CHECK(exact.holds());

    // Derivative vanishing identically: never holds.
    SeedGap flat = seed_gap(dp({4}), 5, {2, 1});
    CHECK_FALSE(flat.vdf.has_value());
    CHECK_FALSE(flat.holds());
}

TEST_CASE("has_zero_mod is an exhaustive residue scan") {
    CHECK(has_zero_mod(dp({1, 0, 1}), 5, 1));
    CHECK(has_zero_mod(dp({1, 0, 1}), 5, 3));
    CHECK_FALSE(has_zero_mod(dp({1, 0, 1}), 7, 1));
    // x^2 - 5 mod 25: needs x^2 = 5, impossible beyond level 1.
    CHECK(has_zero_mod(dp({-5, 0, 1}), 5, 1));
    CHECK_FALSE(has_zero_mod(dp({-5, 0, 1}), 5, 2));
    CHECK_THROWS_AS(has_zero_mod(dp({1, 1}), 5, 30, 1000), budget_error);
}

TEST_CASE("find_hensel_seed finds the least Newton-ready residue") {
    auto s = find_hensel_seed(dp({1, 0, 1}), 5, 1);
    REQUIRE(s.has_value());
    CHECK(s->a0 == 2);
    CHECK(s->level == 1);

    // x^4 + 33 at 17: 1 + 33 = 34 = 2*17, derivative 4 at 1 is a unit.
    auto s2 = find_hensel_seed(dp({33, 0, 0, 0, 1}), 17, 1);
    REQUIRE(s2.has_value());
    CHECK(s2->a0 == 1);

    // x^2 + 5 has no 5-adic zero at any level.
    CHECK_FALSE(find_hensel_seed(dp({5, 0, 1}), 5, 1).has_value());
    CHECK_FALSE(find_hensel_seed(dp({5, 0, 1}), 5, 2).has_value());

    CHECK_THROWS_AS(find_hensel_seed(dp({1, 1}), 5, 30, 1000), budget_error);
}

TEST_CASE("hensel_lift refines a seed to full precision") {
    PAdicContext ctx(5, 8);
    PAdicNumber r = hensel_lift(dp({1, 0, 1}), {2, 1}, ctx);
    CHECK_FALSE(r.is_zero);
    CHECK(r.valuation == 0);
    // r^2 = -1 mod 5^8 and r = 2 mod 5.
    mpz_class p8 = 390625; // 5^8
    mpz_class sq = (r.unit * r.unit) % p8;
    CHECK(sq == p8 - 1);
    CHECK(r.unit % 5 == 2);

    // The other seed gives the conjugate root.
    PAdicNumber r2 = hensel_lift(dp({1, 0, 1}), {3, 1}, ctx);
    CHECK((r.unit + r2.unit) % p8 == 0);
}

TEST_CASE("hensel_lift_traced shows at-least-quadratic convergence") {
    // x^2 + 7 at 2: seed 1 mod 8, t = v(f'(1)) = 1.
    PAdicContext ctx(2, 24);
    HenselTrace tr = hensel_lift_traced(dp({7, 0, 1}), {1, 3}, ctx);
    CHECK(tr.derivative_valuation == 1);
    REQUIRE(tr.residual_valuations.size() >= 2);
    CHECK(tr.residual_valuations.front() == 3);
    for (std::size_t i = 0; i + 1 < tr.residual_valuations.size(); ++i) {
        long cur = tr.residual_valuations[i];
        long next = tr.residual_valuations[i + 1];
        long predicted = std::min<long>(2 * cur - 2 * tr.derivative_valuation, 24);
        CHECK(next >= predicted);
        CHECK(next > cur);
    }
    CHECK(tr.residual_valuations.back() >= 24);
    // Final root squared is -7 mod 2^24.
    mpz_class m = mpz_class(1) << 24;
    CHECK((tr.root.unit * tr.root.unit + 7) % m == 0);

    // Exact integer root short-circuits with an infinite-residual sentinel.
    HenselTrace ex = hensel_lift_traced(dp({3, -4, 1}), {3, 1}, PAdicContext(5, 6));
    CHECK_FALSE(ex.root.is_zero);
    mpz_class p6 = 15625;
    CHECK(eval_mod(dp({3, -4, 1}), ex.root.unit, p6) == 0);
    CHECK(ex.root.unit % 5 == 3);

    // A context too shallow for the derivative valuation must refuse.
    CHECK_THROWS_AS(hensel_lift(dp({7, 0, 1}), {1, 3}, PAdicContext(2, 1)), precision_error);
    // A seed violating the Newton gap must refuse.
    CHECK_THROWS_AS(hensel_lift(dp({1, 0, 1}), {1, 1}, PAdicContext(5, 8)), std::invalid_argument);
}

TEST_CASE("sqrt_mod_prime covers residues and non-residues") {
    CHECK_FALSE(sqrt_mod_prime(3, 7).has_value());
    auto s = sqrt_mod_prime(2, 7);
    REQUIRE(s.has_value());
    CHECK(mulmod_u64(*s, *s, 7) == 2);
    CHECK(sqrt_mod_prime(0, 7) == std::uint64_t{0});
    CHECK_THROWS_AS(sqrt_mod_prime(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(sqrt_mod_prime(1, 9), std::invalid_argument);

    std::mt19937_64 rng(424242);
    for (std::uint64_t p : {3u, 5u, 13u, 101u, 10007u}) {
        for (int rep = 0; rep < 25; ++rep) {
            std::uint64_t a = rng() % p;
            auto r = sqrt_mod_prime(a, p);
            if (r) {
                CHECK(mulmod_u64(*r, *r, p) == a);
            } else {
                // Must genuinely be a non-residue: Euler criterion.
                CHECK(powmod_u64(a, (p - 1) / 2, p) == p - 1);
            }
        }
    }
}

TEST_CASE("is_square_in_qp follows valuation parity and unit residue") {
    // Odd p: square iff even valuation and unit part a residue.
    CHECK(is_square_in_qp(4, 5));
    CHECK(is_square_in_qp(5 * 5 * 4, 5));
    CHECK_FALSE(is_square_in_qp(5, 5));       // odd valuation
    CHECK_FALSE(is_square_in_qp(2, 5));       // 2 is not a residue mod 5
    CHECK(is_square_in_qp(-4, 5));            // -1 = 2^2 mod 5
    CHECK(is_square_in_qp(-4, 13));           // -1 is a residue mod 13
    CHECK_FALSE(is_square_in_qp(-4, 7));      // -1 is not a residue mod 7
    CHECK_THROWS_AS(is_square_in_qp(0, 7), std::invalid_argument);
    CHECK_FALSE(is_square_in_qp(-1, 7));

    // p = 2: unit part must be 1 mod 8.
    CHECK(is_square_in_qp(mpz_class(17), 2));
    CHECK(is_square_in_qp(mpz_class(4 * 9), 2));
    CHECK_FALSE(is_square_in_qp(mpz_class(3), 2));
    CHECK_FALSE(is_square_in_qp(mpz_class(5), 2));
    CHECK_FALSE(is_square_in_qp(mpz_class(7), 2));
    CHECK_FALSE(is_square_in_qp(mpz_class(2), 2));
    CHECK(is_square_in_qp(mpz_class(-7), 2)); // -7 = 1 mod 8
    CHECK(is_square_in_qp(mpz_class(9), 2));
}

TEST_CASE("unit_sqrt_truncated squares back to the input") {
    mpz_class s = unit_sqrt_truncated(2, 7, 6);
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), 7, 6);
    CHECK((s * s - 2) % m == 0);

    mpz_class t = unit_sqrt_truncated(17, 2, 10);
    mpz_class m2 = mpz_class(1) << 10;
    CHECK((t * t - 17) % m2 == 0);

    std::mt19937_64 rng(777);
    for (std::uint64_t p : {3u, 5u, 11u}) {
        for (int rep = 0; rep < 10; ++rep) {
            std::uint64_t u = 1 + rng() % (p - 1);
            if (!sqrt_mod_prime(u, p)) continue;
            int k = 2 + static_cast<int>(rng() % 8);
            mpz_class mm;
            mpz_ui_pow_ui(mm.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
            mpz_class r = unit_sqrt_truncated(mpz_class(static_cast<unsigned long>(u)), p, k);
            CHECK((r * r - static_cast<unsigned long>(u)) % mm == 0);
        }
    }
}

TEST_CASE("simple_zero_deg_le2 handles linear polynomials") {
    // 3 + x: root -3, always a simple zero.
    SimpleZeroDecision d = simple_zero_deg_le2(dp({3, 1}), 5);
    CHECK(d.exists);
    REQUIRE(d.seed.has_value());
    CHECK(seed_gap(dp({3, 1}), 5, *d.seed).holds());

    // 1 + 5x: root -1/5 has negative valuation, not an integer zero.
    SimpleZeroDecision bad = simple_zero_deg_le2(dp({1, 5}), 5);
    CHECK_FALSE(bad.exists);

    // 0 + 5x: root 0.
    SimpleZeroDecision z = simple_zero_deg_le2(dp({0, 5}), 5);
    CHECK(z.exists);
}

TEST_CASE("simple_zero_deg_le2 handles quadratics") {
    // x^2 + 1: zero at 5 (sqrt of -1 exists), none at 7.
    SimpleZeroDecision at5 = simple_zero_deg_le2(dp({1, 0, 1}), 5);
    CHECK(at5.exists);
    REQUIRE(at5.seed.has_value());
    CHECK((at5.seed->a0 == 2 || at5.seed->a0 == 3));
    CHECK(seed_gap(dp({1, 0, 1}), 5, *at5.seed).holds());
    CHECK_FALSE(simple_zero_deg_le2(dp({1, 0, 1}), 7).exists);

    // (x-1)^2: double root, no simple zero, but the double root is integral.
    SimpleZeroDecision dbl = simple_zero_deg_le2(dp({1, -2, 1}), 5);
    CHECK_FALSE(dbl.exists);
    CHECK(dbl.double_root);
    CHECK(dbl.double_root_in_zp);

    // (5x-1)^2 / scaled: 25x^2 - 10x + 1 has double root 1/5 outside Z_5.
    SimpleZeroDecision dbl2 = simple_zero_deg_le2(dp({1, -10, 25}), 5);
    CHECK_FALSE(dbl2.exists);
    CHECK(dbl2.double_root);
    CHECK_FALSE(dbl2.double_root_in_zp);

    // 25x^2 + 15x + 2 = (5x+1)(5x+2): both roots have valuation -1.
    SimpleZeroDecision neg = simple_zero_deg_le2(dp({2, 15, 25}), 5);
    CHECK_FALSE(neg.exists);
    CHECK_FALSE(neg.double_root);

    // x^2 + 6x + 5 = (x+1)(x+5): two simple integer roots.
    SimpleZeroDecision two = simple_zero_deg_le2(dp({5, 6, 1}), 5);
    CHECK(two.exists);
    REQUIRE(two.seed.has_value());
    CHECK(seed_gap(dp({5, 6, 1}), 5, *two.seed).holds());

    // x^2 + 3x: root 0 and -3.
    SimpleZeroDecision zero = simple_zero_deg_le2(dp({0, 3, 1}), 7);
    CHECK(zero.exists);

    CHECK_THROWS_AS(simple_zero_deg_le2(dp({1, 0, 0, 1}), 5), std::invalid_argument);
    CHECK_THROWS_AS(simple_zero_deg_le2(dp({4}), 5), std::invalid_argument);
}

TEST_CASE("simple_zero_deg_le2 agrees with breadth-first refinement") {
    std::mt19937_64 rng(1618033);
    const int K = 6;
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u}) {
        int done = 0;
        while (done < 200) {
            long a = static_cast<long>(rng() % 101) - 50;
            long b = static_cast<long>(rng() % 101) - 50;
            long c = static_cast<long>(rng() % 101) - 50;
            DensePoly f = dp({a, b, c});
            if (f.degree() < 1) continue;
            mpz_class pz(static_cast<unsigned long>(p));
            if (f.degree() == 2) {
                // The K-level probe is conclusive only while the discriminant
                // valuation stays below K - 1.
                mpz_class disc = mpz_class(b) * b - 4 * mpz_class(a) * c;
                auto vd = vp_int(disc, pz);
                if (vd && *vd >= K - 1) continue;
            } else {
                auto vlead = vp_int(f.coeffs[1], pz);
                if (!vlead || *vlead > 2) continue;
            }
            ++done;
            SimpleZeroDecision d = simple_zero_deg_le2(f, p);
            bool oracle = bfs_simple_zero(f, p, K);
            CHECK(d.exists == oracle);
            if (d.exists) {
                REQUIRE(d.seed.has_value());
                CHECK(seed_gap(f, p, *d.seed).holds());
            }
        }
    }
}

} // TEST_SUITE
