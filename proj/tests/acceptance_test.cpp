// Acceptance gate: end-to-end checks of the public decision surface, one
// PASS/FAIL line per criterion. Exit code = number of failed criteria.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pqs/denseness.hpp"
#include "pqs/errors.hpp"
#include "pqs/modarith.hpp"
#include "pqs/oracle.hpp"
#include "pqs/padic.hpp"
#include "pqs/poly.hpp"
#include "pqs/waring.hpp"
#include "pqs/witness.hpp"

using namespace pqs;

namespace {

int failures = 0;

void criterion(int num, const char* name, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    if (ok) {
        std::printf("PASS criterion %d: %s\n", num, name);
    } else {
        ++failures;
        std::printf("FAIL criterion %d: %s%s%s\n", num, name, detail.empty() ? "" : ": ",
                    detail.c_str());
    }
    std::fflush(stdout);
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= n; ++p)
        if (is_prime_u64(p)) out.push_back(p);
    return out;
}

// Exact order of agreement of a/b with r at p; nullopt = exact equality.
std::optional<long> ratio_order(const mpz_class& a, const mpz_class& b, const Rational& r, std::uint64_t p) {
    mpz_class num = a * r.get_den() - r.get_num() * b;
    if (num == 0) return std::nullopt;
    long e = *vp_int(num, p);
    return e - *vp_int(b, p) - *vp_int(mpz_class(r.get_den()), p);
}

bool crit1_theta_values(std::string& detail) {
    const struct {
        std::uint64_t n, b;
        unsigned want;
    } pinned[] = {{6, 11, 3}, {10, 8, 8}, {4, 5, 5}, {4, 29, 4}};
    for (const auto& c : pinned) {
        auto r = theta(c.n, c.b);
        if (!r.value || *r.value != c.want) {
            detail = "theta(" + std::to_string(c.n) + ", " + std::to_string(c.b) + ") != " +
                     std::to_string(c.want);
            return false;
        }
    }
    for (std::uint64_t n = 1; n <= 10; ++n) {
        for (std::uint64_t b = 2; b <= 200; ++b) {
            auto fast = theta(n, b);
            auto brute = oracle::brute_force_theta(n, b, static_cast<unsigned>(b), 512'000'000);
            if (brute.outcome != oracle::BruteForceTheta::Outcome::Found) {
                detail = "brute search inconclusive at n = " + std::to_string(n) +
                         ", b = " + std::to_string(b);
                return false;
            }
            if (!fast.value || *fast.value != brute.value) {
                detail = "disagreement at n = " + std::to_string(n) + ", b = " + std::to_string(b);
                return false;
            }
        }
    }
    return true;
}

bool crit2_fourth_powers(std::string& detail) {
    for (std::uint64_t p : primes_up_to(1000)) {
        if (p == 2) continue;
        const bool dense2 = decide_power_sum(2, 4, p).status == Status::Dense;
        if (dense2 != (p % 8 == 1)) {
            detail = "two 4th powers at p = " + std::to_string(p);
            return false;
        }
        const bool dense3 = decide_power_sum(3, 4, p).status == Status::Dense;
        if (dense3 != (p != 5 && p != 29)) {
            detail = "three 4th powers at p = " + std::to_string(p);
            return false;
        }
        const bool dense4 = decide_power_sum(4, 4, p).status == Status::Dense;
        if (dense4 != (p != 5)) {
            detail = "four 4th powers at p = " + std::to_string(p);
            return false;
        }
        if (decide_power_sum(5, 4, p).status != Status::Dense) {
            detail = "five 4th powers at p = " + std::to_string(p);
            return false;
        }
        if (p > 41) {
            auto g = gamma(4, p);
            if (!g.value || *g.value != 2) {
                detail = "gamma(4, " + std::to_string(p) + ") != 2";
                return false;
            }
        }
    }
    return true;
}

bool crit3_squares_and_cubes(std::string& detail) {
    for (std::uint64_t p : primes_up_to(500)) {
        const bool dense2 = decide_power_sum(2, 2, p).status == Status::Dense;
        if (dense2 != (p % 4 == 1)) {
            detail = "two squares at p = " + std::to_string(p);
            return false;
        }
        for (unsigned m : {3u, 4u, 8u}) {
            if (decide_power_sum(m, 2, p).status != Status::Dense) {
                detail = std::to_string(m) + " squares at p = " + std::to_string(p);
                return false;
            }
        }
        for (unsigned m : {2u, 3u, 5u}) {
            if (decide_power_sum(m, 3, p).status != Status::Dense) {
                detail = std::to_string(m) + " cubes at p = " + std::to_string(p);
                return false;
            }
        }
    }
    return true;
}

bool crit4_two_adic(std::string& detail) {
    const std::pair<unsigned, unsigned> thresholds[] = {{2, 3}, {4, 8}, {8, 16}, {16, 64}};
    for (auto [n, thr] : thresholds) {
        for (unsigned m = 2; m <= thr + 2; ++m) {
            const bool dense = decide_power_sum(m, n, 2).status == Status::Dense;
            if (dense != (m >= thr)) {
                detail = "threshold mismatch at n = " + std::to_string(n) + ", m = " + std::to_string(m);
                return false;
            }
        }
    }
    if (t_ratio_membership(Rational(15), 7, 4)) {
        detail = "15 accepted as a 7-term ratio";
        return false;
    }
    if (!t_ratio_membership(Rational(15), 8, 4)) {
        detail = "15 rejected as an 8-term ratio";
        return false;
    }
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 5, 16);
    big += 63;
    if (*vp_int(big, std::uint64_t{2}) < 9) {
        detail = "2-adic valuation of 5^16 + 63 below 9";
        return false;
    }
    return true;
}

bool crit5_exact_arithmetic(std::string& detail) {
    const struct {
        long base1, base2;
        unsigned long n;
        std::uint64_t p;
        long want;
    } cases[] = {{1, 8, 3, 3, 3}, {1, 26, 9, 3, 5}, {1, 24, 5, 5, 3}};
    for (const auto& c : cases) {
        mpz_class s;
        mpz_ui_pow_ui(s.get_mpz_t(), static_cast<unsigned long>(c.base2), c.n);
        s += c.base1;
        auto v = vp_int(s, c.p);
        if (!v || *v < c.want) {
            std::ostringstream os;
            os << c.base1 << "^" << c.n << " + " << c.base2 << "^" << c.n << " misses p^" << c.want;
            detail = os.str();
            return false;
        }
    }
    return true;
}

bool crit6_spectrum_gaps(std::string& detail) {
    FactoredPoly f(1, {{-1, 6}, {-2, 10}, {-3, 15}});
    for (std::uint64_t p : {2u, 5u, 7u}) {
        SpectrumReport rep = valuation_spectrum(f, p, 10'000, 0);
        const long forbidden = (p == 2) ? 2 : 1;
        for (long a : rep.distinct_valuations) {
            for (long b : rep.distinct_valuations) {
                if (a - b == forbidden) {
                    detail = "difference " + std::to_string(forbidden) + " attained at p = " +
                             std::to_string(p) + " (" + std::to_string(a) + " - " + std::to_string(b) + ")";
                    return false;
                }
            }
        }
    }
    for (std::uint64_t p : {2u, 5u, 7u}) {
        if (decide_split_poly({{6, 10, 15}}, p).status == Status::Dense) {
            detail = "multiplicity profile {6,10,15} declared dense at p = " + std::to_string(p);
            return false;
        }
    }
    return true;
}

bool crit7_witnesses(std::string& detail) {
    std::mt19937_64 rng(86420135);
    const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13};

    int built = 0;
    while (built < 100) {
        const std::uint64_t p = primes[rng() % 6];
        const unsigned nf = 2 + static_cast<unsigned>(rng() % 2);
        std::vector<FactoredPoly::Factor> factors;
        std::set<long> used;
        for (unsigned t = 0; t < nf; ++t) {
            long root;
            do {
                root = static_cast<long>(rng() % 41) - 20;
            } while (!used.insert(root).second);
            factors.push_back({mpz_class(root), 1 + static_cast<unsigned>(rng() % 4)});
        }
        std::optional<std::pair<std::size_t, std::size_t>> pair;
        for (std::size_t i = 0; i < nf && !pair; ++i)
            for (std::size_t j = 0; j < nf && !pair; ++j)
                if (i != j && std::gcd(factors[i].multiplicity, factors[j].multiplicity) == 1) pair = {i, j};
        if (!pair) continue;
        FactoredPoly f(mpz_class(1 + static_cast<long>(rng() % 9)), factors);

        const long sign = (rng() % 2) ? 1 : -1;
        Rational r(sign * (1 + static_cast<long>(rng() % 60)), 1 + static_cast<long>(rng() % 60));
        r.canonicalize();
        const long u = 2 + static_cast<long>(rng() % 7);

        std::optional<ApproximationWitness> w;
        for (int prec = 64; prec <= 4096 && !w; prec *= 2) {
            try {
                w = approximation_witness(f, pair->first, pair->second, r, u, PAdicContext(p, prec));
            } catch (const precision_error&) {
            }
        }
        if (!w) {
            detail = "no precision sufficed for a random two-root witness";
            return false;
        }
        ++built;

        mpz_class a = eval_at(f, w->x1);
        mpz_class b = eval_at(f, w->x2);
        if (b == 0 || a == 0) {
            detail = "witness point landed on a root";
            return false;
        }
        auto order = ratio_order(a, b, r, p);
        if (order && *order <= u) {
            detail = "approximation order " + std::to_string(*order) + " not above " + std::to_string(u);
            return false;
        }
        if (order && *order != w->achieved_exponent) {
            detail = "reported exponent disagrees with exact re-evaluation";
            return false;
        }
        const long mu1 = static_cast<long>(f.factors[w->index1].multiplicity);
        const long mu2 = static_cast<long>(f.factors[w->index2].multiplicity);
        const long vr = *vp_rational(r, p);
        if (w->k1 * mu1 - w->k2 * mu2 != vr) {
            detail = "k-trace does not balance the target valuation";
            return false;
        }
        if (w->h1 * mu1 - w->h2 * mu2 != 1) {
            detail = "h-trace does not solve the unit equation";
            return false;
        }
    }

    const struct {
        unsigned m, n;
        std::uint64_t p;
    } families[] = {{2, 2, 5},  {2, 2, 13}, {2, 2, 17}, {2, 2, 29}, {3, 2, 7},
                    {3, 2, 11}, {4, 2, 3},  {2, 3, 2},  {2, 3, 5},  {2, 3, 7},
                    {3, 3, 11}, {2, 4, 17}, {5, 4, 5},  {3, 4, 13}, {2, 5, 11},
                    {2, 7, 29}, {9, 6, 3},  {11, 6, 3}, {2, 9, 3},  {2, 2, 41}};
    for (const auto& fam : families) {
        Rational r(1 + static_cast<long>(rng() % 40), 1 + static_cast<long>(rng() % 40));
        r.canonicalize();
        const long u = 2 + static_cast<long>(rng() % 5);

        std::optional<PowerSumWitness> w;
        for (int prec = 96; prec <= 4096 && !w; prec *= 2) {
            try {
                w = power_sum_witness(fam.m, fam.n, fam.p, r, u, PAdicContext(fam.p, prec));
            } catch (const precision_error&) {
            }
        }
        if (!w) {
            detail = "no precision sufficed for the power-sum witness";
            return false;
        }
        if (w->tuple1.size() != fam.m || w->tuple2.size() != fam.m) {
            detail = "tuple length differs from m";
            return false;
        }
        auto sum_pow = [&](const std::vector<mpz_class>& t) {
            mpz_class s = 0;
            for (const mpz_class& x : t) {
                mpz_class pw;
                mpz_pow_ui(pw.get_mpz_t(), x.get_mpz_t(), fam.n);
                s += pw;
            }
            return s;
        };
        mpz_class s1 = sum_pow(w->tuple1), s2 = sum_pow(w->tuple2);
        if (s2 == 0) {
            detail = "denominator sum vanished";
            return false;
        }
        auto order = ratio_order(s1, s2, r, fam.p);
        if (order && *order <= u) {
            detail = "power-sum order not above u at p = " + std::to_string(fam.p);
            return false;
        }
        if (order && *order != w->achieved_exponent) {
            detail = "power-sum exponent disagrees with exact re-evaluation";
            return false;
        }
        if (w->k1 - w->k2 != *vp_rational(r, fam.p)) {
            detail = "power-sum exponent pair does not encode the target valuation";
            return false;
        }
    }
    return true;
}

bool crit8_forbidden_classes(std::string& detail) {
    const struct {
        unsigned m, n;
        std::uint64_t p;
        std::uint64_t x_bound;
    } triples[] = {{2, 2, 3, 223}, {2, 2, 7, 223},  {2, 2, 11, 223}, {2, 2, 19, 223}, {2, 2, 23, 223},
                   {2, 4, 3, 14},  {2, 4, 5, 14},   {2, 4, 7, 14},   {3, 4, 5, 13},   {3, 4, 29, 13}};
    for (const auto& c : triples) {
        Verdict v = decide_power_sum(c.m, c.n, c.p);
        if (v.status != Status::NotDense) {
            detail = "triple not refused: m = " + std::to_string(c.m) + ", n = " + std::to_string(c.n) +
                     ", p = " + std::to_string(c.p);
            return false;
        }
        const long missing = v.certificate.at("missing_class").get<long>();
        const long k = (missing - 1) / 2;
        auto values = oracle::enumerate_power_sums(c.m, c.n, c.x_bound);
        std::set<long> vals;
        for (const mpz_class& x : values)
            if (x != 0) vals.insert(*vp_int(x, c.p));
        for (long a : vals) {
            for (long b : vals) {
                const long cls = centered_mod(a - b, static_cast<long>(c.n));
                if (cls < -2 * k || cls > 2 * k) {
                    detail = "quotient class " + std::to_string(cls) + " escapes the window at p = " +
                             std::to_string(c.p) + ", n = " + std::to_string(c.n);
                    return false;
                }
            }
        }
    }
    return true;
}

bool crit9_two_term_consistency(std::string& detail) {
    for (unsigned n = 2; n <= 20; ++n) {
        for (std::uint64_t p : primes_up_to(100)) {
            Verdict direct = decide_power_sum(2, n, p);
            Verdict via_neg1 = decide_s2(n, p); // throws if its internal cross-check fails
            if (direct.status != via_neg1.status) {
                detail = "status split at n = " + std::to_string(n) + ", p = " + std::to_string(p);
                return false;
            }
            if (n % 2 == 1 && via_neg1.status != Status::Dense) {
                detail = "odd exponent not dense at n = " + std::to_string(n) + ", p = " + std::to_string(p);
                return false;
            }
        }
    }
    return true;
}

} // namespace

int main() {
    criterion(1, "theta values and exhaustive-search agreement", crit1_theta_values);
    criterion(2, "fourth-power families across odd primes up to 1000", crit2_fourth_powers);
    criterion(3, "square and cube families across primes up to 500", crit3_squares_and_cubes);
    criterion(4, "2-adic thresholds and closure ratios", crit4_two_adic);
    criterion(5, "exact valuation identities", crit5_exact_arithmetic);
    criterion(6, "spectrum gaps for the 6-10-15 profile", crit6_spectrum_gaps);
    criterion(7, "random witnesses verified by exact re-evaluation", crit7_witnesses);
    criterion(8, "refused families keep quotient classes in the window", crit8_forbidden_classes);
    criterion(9, "two-term route consistency", crit9_two_term_consistency);
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria failed\n", failures);
    return failures;
}
