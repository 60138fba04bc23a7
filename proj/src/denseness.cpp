#include "pqs/denseness.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "pqs/errors.hpp"
#include "pqs/modarith.hpp"
#include "pqs/roots.hpp"

namespace pqs {

std::string to_string(Status s) {
    switch (s) {
        case Status::Dense: return "Dense";
        case Status::NotDense: return "NotDense";
        case Status::Unknown: return "Unknown";
    }
    return "Unknown";
}

std::string to_string(Reason r) {
    switch (r) {
        case Reason::ThetaThreshold: return "theta-threshold";
        case Reason::Special2AdicThreshold: return "special-2adic-threshold";
        case Reason::SimpleZero: return "simple-zero";
        case Reason::GcdMultiplicity: return "gcd-multiplicity";
        case Reason::MissingValuationClass: return "missing-valuation-class";
        case Reason::NoZeroInZp: return "no-zero-in-Zp";
        case Reason::OutOfTheoremScope: return "out-of-theorem-scope";
    }
    return "out-of-theorem-scope";
}

nlohmann::json Verdict::to_json() const {
    return nlohmann::json{{"status", to_string(status)},
                          {"reason", to_string(reason)},
                          {"certificate", certificate},
                          {"inputs", inputs},
                          {"rule", rule}};
}

namespace {

unsigned vp_of_u64(std::uint64_t x, std::uint64_t p) {
    unsigned v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

// Thresholds for the four power/prime pairs the theta route does not settle.
std::optional<unsigned> special_two_adic_threshold(unsigned n, std::uint64_t p) {
    if (p != 2) return std::nullopt;
    switch (n) {
        case 2: return 3;
        case 4: return 8;
        case 8: return 16;
        case 16: return 64;
        default: return std::nullopt;
    }
}

} // namespace

Verdict decide_power_sum(unsigned m, unsigned n, std::uint64_t p) {
    if (m < 2) throw std::invalid_argument("decide_power_sum: m must be >= 2");
    if (n < 2) throw std::invalid_argument("decide_power_sum: n must be >= 2");
    if (!is_prime_u64(p)) throw std::invalid_argument("decide_power_sum: p is not prime");

    Verdict v;
    v.inputs = {{"m", m}, {"n", n}, {"p", p}};

    if (auto thr = special_two_adic_threshold(n, p)) {
        v.rule = "power-sum-two-adic";
        v.reason = Reason::Special2AdicThreshold;
        v.certificate = {{"threshold", *thr}};
        v.status = (m >= *thr) ? Status::Dense : Status::NotDense;
        return v;
    }

    const unsigned k = vp_of_u64(n, p);
    std::uint64_t modulus = 1;
    for (unsigned i = 0; i < 2 * k + 1; ++i) {
        if (modulus > default_waring_modulus_limit / p)
            throw budget_error("decide_power_sum: p^" + std::to_string(2 * k + 1) + " exceeds the modulus limit");
        modulus *= p;
    }

    v.rule = "power-sum-theta";
    WaringResult th = theta(n, modulus, 0, true);
    if (!th.value) {
        // Unreachable with the default cap, which always terminates; kept for
        // caller-supplied caps feeding through here in the future.
        v.status = Status::Unknown;
        v.reason = Reason::OutOfTheoremScope;
        v.certificate = {{"condition", "theta not found within cap"}, {"cap", th.cap}};
        return v;
    }
    if (m >= *th.value) {
        v.status = Status::Dense;
        v.reason = Reason::ThetaThreshold;
        v.certificate = {{"theta", *th.value}, {"modulus", modulus}, {"tuple", th.certificate}};
        return v;
    }
    // No admissible sum vanishes mod p^(2k+1), so nonzero sums only take
    // valuations within k of a multiple of n; class 2k+1 mod n is missed.
    if (4 * k + 1 >= n) throw std::logic_error("decide_power_sum: window bound violated");
    v.status = Status::NotDense;
    v.reason = Reason::MissingValuationClass;
    v.certificate = {{"theta", *th.value},
                     {"modulus", modulus},
                     {"missing_class", 2 * k + 1},
                     {"modulo", n},
                     {"attained_window", {-static_cast<long>(2 * k), static_cast<long>(2 * k)}}};
    return v;
}

Verdict decide_s2(unsigned n, std::uint64_t p) {
    if (n < 2) throw std::invalid_argument("decide_s2: n must be >= 2");
    if (!is_prime_u64(p)) throw std::invalid_argument("decide_s2: p is not prime");

    NegOnePower neg = is_neg1_nth_power(n, p);
    Verdict cross = decide_power_sum(2, n, p);
    const Status expected = neg.yes ? Status::Dense : Status::NotDense;
    if (cross.status != expected)
        throw std::logic_error("decide_s2: -1 route disagrees with the power-sum route");

    Verdict v;
    v.rule = "neg-one-power";
    v.inputs = {{"m", 2}, {"n", n}, {"p", p}};
    if (neg.yes) {
        v.status = Status::Dense;
        v.reason = Reason::ThetaThreshold;
        v.certificate = {{"witness", neg.witness}, {"modulus", neg.modulus},
                         {"tuple", {1, neg.witness}}};
        return v;
    }
    v.status = Status::NotDense;
    if (auto thr = special_two_adic_threshold(n, p)) {
        v.reason = Reason::Special2AdicThreshold;
        v.certificate = {{"threshold", *thr}, {"modulus", neg.modulus}};
        return v;
    }
    const unsigned k = vp_of_u64(n, p);
    v.reason = Reason::MissingValuationClass;
    v.certificate = {{"modulus", neg.modulus}, {"missing_class", 2 * k + 1}, {"modulo", n}};
    return v;
}

Verdict decide_poly_deg_le2(const DensePoly& f, std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("decide_poly_deg_le2: p is not prime");
    const long deg = f.degree();
    if (deg < 1 || deg > 2) throw std::invalid_argument("decide_poly_deg_le2: degree must be 1 or 2");

    Verdict v;
    v.rule = "quadratic-simple-zero";
    v.inputs = {{"poly", to_string(f)}, {"p", p}};

    SimpleZeroDecision d = simple_zero_deg_le2(f, p);
    if (d.exists) {
        SeedGap gap = seed_gap(f, p, *d.seed);
        v.status = Status::Dense;
        v.reason = Reason::SimpleZero;
        v.certificate = {{"seed", d.seed->a0.get_str()},
                         {"level", d.seed->level},
                         {"derivative_valuation", gap.vdf ? nlohmann::json(*gap.vdf) : nlohmann::json()},
                         {"residual_valuation", gap.vf ? nlohmann::json(*gap.vf) : nlohmann::json()}};
        return v;
    }
    if (d.double_root && d.double_root_in_zp) {
        v.status = Status::NotDense;
        v.reason = Reason::GcdMultiplicity;
        v.certificate = {{"divisor", 2}, {"note", d.note}};
        return v;
    }
    // No zero in Z_p at all: certify by the first level with no residue root.
    unsigned level = 1;
    while (has_zero_mod(f, p, level)) ++level;
    v.status = Status::NotDense;
    v.reason = Reason::NoZeroInZp;
    v.certificate = {{"empty_level", level}, {"note", d.note}};
    return v;
}

Verdict decide_split_poly(const SplitProfile& profile, std::uint64_t p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("decide_split_poly: p is not prime");
    const auto& mu = profile.multiplicities;
    if (mu.empty()) throw std::invalid_argument("decide_split_poly: empty multiplicity profile");
    for (unsigned x : mu)
        if (x < 1) throw std::invalid_argument("decide_split_poly: multiplicities must be >= 1");

    Verdict v;
    v.inputs = {{"multiplicities", mu}, {"p", p}};

    unsigned g = 0;
    for (unsigned x : mu) g = std::gcd(g, x);
    unsigned long total = 0;
    for (unsigned x : mu) total += x;

    if (g > 1) {
        v.rule = "split-multiplicity-gcd";
        v.status = Status::NotDense;
        v.reason = Reason::GcdMultiplicity;
        v.certificate = {{"divisor", g}};
        return v;
    }

    if (mu.size() == 1) {
        // Single multiplicity-1 root: the values are a shifted copy of the
        // integers, whose ratios land on every target exactly.
        v.rule = "split-multiplicity-gcd";
        v.status = Status::Dense;
        v.reason = Reason::SimpleZero;
        v.certificate = {{"single_root_multiplicity", 1}};
        return v;
    }

    std::optional<std::pair<std::size_t, std::size_t>> pair;
    for (std::size_t i = 0; i < mu.size() && !pair; ++i)
        for (std::size_t j = i + 1; j < mu.size() && !pair; ++j)
            if (std::gcd(mu[i], mu[j]) == 1) pair = {i, j};

    if (total <= 30) {
        v.rule = "split-multiplicity-gcd";
        if (!pair) throw std::logic_error("decide_split_poly: gcd 1 at degree <= 30 must yield a coprime pair");
        v.status = Status::Dense;
        v.reason = Reason::GcdMultiplicity;
        v.certificate = {{"pair", {pair->first, pair->second}},
                         {"pair_multiplicities", {mu[pair->first], mu[pair->second]}}};
        return v;
    }

    v.rule = "coprime-multiplicity-pair";
    if (pair) {
        v.status = Status::Dense;
        v.reason = Reason::GcdMultiplicity;
        v.certificate = {{"pair", {pair->first, pair->second}},
                         {"pair_multiplicities", {mu[pair->first], mu[pair->second]}}};
        return v;
    }
    v.status = Status::Unknown;
    v.reason = Reason::OutOfTheoremScope;
    v.certificate = {{"failed_hypothesis", "degree >= 31 with overall gcd 1 but no coprime multiplicity pair"}};
    return v;
}

Verdict decide_factored_poly(const FactoredPoly& f, std::uint64_t p) {
    SplitProfile profile;
    for (const auto& fac : f.factors) profile.multiplicities.push_back(fac.multiplicity);
    if (!f.cofactor.is_zero() && f.cofactor.degree() > 0)
        throw std::invalid_argument("decide_factored_poly: nontrivial cofactor; the split rules do not apply");
    Verdict v = decide_split_poly(profile, p);
    v.inputs["poly"] = to_string(f);
    return v;
}

bool is_valid_closure_exponent(unsigned n) { return n == 4 || n == 8 || n == 16; }

namespace {

unsigned log2_exact(unsigned n) {
    unsigned k = 0;
    while ((1u << k) < n) ++k;
    return k;
}

// Residue classes j mod 4n reachable by 1 <= j <= m, as a covered-class test.
bool class_covered(std::uint64_t cls, unsigned m, unsigned n) {
    const std::uint64_t fourn = 4ull * n;
    if (cls == 0) return m >= fourn;
    return cls <= m;
}

} // namespace

bool t_closure_membership(const PAdicNumber& value, const PAdicContext& ctx, unsigned m, unsigned n) {
    if (!is_valid_closure_exponent(n)) throw std::invalid_argument("t_closure_membership: n must be 4, 8 or 16");
    if (m < 1) throw std::invalid_argument("t_closure_membership: m must be >= 1");
    if (ctx.p != 2) throw std::invalid_argument("t_closure_membership: p must be 2");
    if (value.is_zero) return !value.exhausted; // exact zero is a member; noise is undecidable
    if (value.valuation < 0) return false;

    const unsigned k = log2_exact(n);
    const int needed = static_cast<int>(k) + 4; // v_2(4n) + 2 unit digits
    if (value.known_digits(ctx) < needed)
        throw precision_error("t_closure_membership: unit needs " + std::to_string(needed) +
                              " known digits, have " + std::to_string(value.known_digits(ctx)));

    const std::uint64_t fourn = 4ull * n;
    const long w = value.valuation;
    mpz_class fourn_z(static_cast<unsigned long>(fourn));
    for (long v = 0; v * static_cast<long>(n) <= w; ++v) {
        const long shift = w - v * static_cast<long>(n);
        std::uint64_t cls = 0; // shifts past v_2(4n) land in class 0
        if (shift < static_cast<long>(k) + 2)
            cls = mpz_class(value.unit * ctx.pow(shift) % fourn_z).get_ui();
        if (class_covered(cls, m, n)) return true;
    }
    return false;
}

bool t_ratio_membership(const Rational& q, unsigned m, unsigned n) {
    if (!is_valid_closure_exponent(n)) throw std::invalid_argument("t_ratio_membership: n must be 4, 8 or 16");
    if (m < 1) throw std::invalid_argument("t_ratio_membership: m must be >= 1");
    if (q == 0) return true; // 0 is a member, so 0 = 0 / t is always attained
    if (class_covered(0, m, n)) return true; // some cylinder contains 0's neighborhood... every dyadic fits

    const unsigned k = log2_exact(n);
    mpz_class num(q.get_num()), den(q.get_den());
    mpz_class two(2);
    mpz_class num_odd, den_odd;
    long va = static_cast<long>(mpz_remove(num_odd.get_mpz_t(), num.get_mpz_t(), two.get_mpz_t()));
    long vb = static_cast<long>(mpz_remove(den_odd.get_mpz_t(), den.get_mpz_t(), two.get_mpz_t()));
    const long w = va - vb;
    const std::uint64_t fourn = 4ull * n;

    for (std::uint64_t c2 = 1; c2 < fourn; ++c2) {
        if (!class_covered(c2, m, n)) continue;
        const long e2 = static_cast<long>(vp_of_u64(c2, 2));
        for (std::uint64_t c1 = 1; c1 < fourn; ++c1) {
            if (!class_covered(c1, m, n)) continue;
            const long e1 = static_cast<long>(vp_of_u64(c1, 2));
            // A quotient of members with unit classes c1, c2 has valuation
            // difference n*d forced to t below; d must be an integer.
            const long t = w + e2 - e1;
            if (t % static_cast<long>(n) != 0) continue;
            const long window = std::min(w, t) + static_cast<long>(k) + 2 - (w + e2);
            // window = k + 2 - max(e1, e2) >= 1 here
            mpz_class mod = mpz_class(1) << static_cast<unsigned>(window);
            mpz_class inv;
            if (mpz_invert(inv.get_mpz_t(), den_odd.get_mpz_t(), mod.get_mpz_t()) == 0)
                throw std::logic_error("t_ratio_membership: odd part not invertible");
            mpz_class lhs = mpz_class(static_cast<unsigned long>(c2 >> e2)) * num_odd % mod * inv % mod;
            mpz_class rhs = mpz_class(static_cast<unsigned long>(c1 >> e1)) % mod;
            mpz_class l = lhs % mod, r = rhs % mod;
            if (l < 0) l += mod;
            if (r < 0) r += mod;
            if (l == r) return true;
        }
    }
    return false;
}

SpectrumReport valuation_spectrum(const FactoredPoly& f, std::uint64_t p, std::uint64_t x_max,
                                  std::uint64_t modulus) {
    if (x_max < 1) throw std::invalid_argument("valuation_spectrum: x_max must be >= 1");
    if (x_max > 1'000'000)
        throw budget_error("valuation_spectrum: x_max " + std::to_string(x_max) + " exceeds the scan limit");
    SpectrumReport out;
    out.modulus = modulus;
    out.counts = spectrum_scan(f, p, x_max);
    for (const auto& [v, c] : out.counts.by_valuation) out.distinct_valuations.push_back(v);
    if (modulus >= 1) {
        std::set<long> classes;
        for (long a : out.distinct_valuations)
            for (long b : out.distinct_valuations)
                classes.insert(centered_mod(a - b, static_cast<long>(modulus)));
        out.difference_classes.assign(classes.begin(), classes.end());
    }
    return out;
}

} // namespace pqs
