#include "pqs/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "pqs/errors.hpp"

// Everything here recomputes from first principles: plain big-integer sums,
// exhaustive tuple search, and exact rational comparisons. No p-adic types,
// no bitsets, no shared modular helpers.

namespace pqs::oracle {

namespace {

std::uint64_t local_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t local_powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t acc = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) acc = local_mulmod(acc, base, m);
        base = local_mulmod(base, base, m);
        exp >>= 1;
    }
    return acc;
}

std::uint64_t local_gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long local_vp(const mpz_class& x, const mpz_class& p) {
    mpz_class r;
    return static_cast<long>(mpz_remove(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

} // namespace

std::vector<mpz_class> enumerate_power_sums(unsigned m, unsigned n, std::uint64_t x_bound, std::uint64_t budget) {
    if (m < 1) throw std::invalid_argument("enumerate_power_sums: m must be >= 1");
    if (n < 1) throw std::invalid_argument("enumerate_power_sums: n must be >= 1");
    std::vector<mpz_class> powers;
    powers.reserve(static_cast<std::size_t>(x_bound) + 1);
    for (std::uint64_t a = 0; a <= x_bound; ++a) {
        mpz_class v;
        mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(a), n);
        powers.push_back(v);
    }
    std::vector<mpz_class> sums = powers; // m = 1
    for (unsigned round = 2; round <= m; ++round) {
        const std::uint64_t work = static_cast<std::uint64_t>(sums.size()) * powers.size();
        if (work > budget)
            throw budget_error("enumerate_power_sums: " + std::to_string(work) +
                               " candidate sums exceed the budget " + std::to_string(budget));
        std::vector<mpz_class> next;
        next.reserve(sums.size() * 2);
        for (const auto& s : sums)
            for (const auto& q : powers) next.push_back(s + q);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        sums = std::move(next);
    }
    return sums;
}

std::optional<std::pair<std::size_t, std::size_t>> ratio_ball_hit(const std::vector<mpz_class>& values,
                                                                  const mpq_class& r, std::uint64_t p, long u) {
    mpz_class pz(static_cast<unsigned long>(p));
    const mpz_class rn(r.get_num()), rd(r.get_den());
    const long v_rd = local_vp(rd, pz);
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = 0; j < values.size(); ++j) {
            if (values[j] == 0) continue;
            mpz_class num = values[i] * rd - rn * values[j];
            if (num == 0) return std::make_pair(i, j); // exact hit: +infinity
            long e = local_vp(num, pz) - local_vp(values[j], pz) - v_rd;
            if (e > u) return std::make_pair(i, j);
        }
    }
    return std::nullopt;
}

BruteForceTheta brute_force_theta(std::uint64_t n, std::uint64_t b, unsigned g_max, std::uint64_t node_budget) {
    if (n < 1) throw std::invalid_argument("brute_force_theta: n must be >= 1");
    if (b < 2) throw std::invalid_argument("brute_force_theta: modulus must be >= 2");
    std::vector<std::uint64_t> pw(b);
    for (std::uint64_t x = 0; x < b; ++x) pw[x] = local_powmod(x, n, b);

    // A sum only sees the multiset of power residues, so the search runs over
    // distinct residues (with repetition allowed) and maps each back to its
    // smallest preimage when a tuple is reported.
    std::vector<std::uint64_t> min_pre(b, b);
    for (std::uint64_t x = 0; x < b; ++x)
        if (min_pre[pw[x]] == b) min_pre[pw[x]] = x;
    std::vector<std::uint64_t> residues; // distinct attained powers, ascending
    for (std::uint64_t r = 0; r < b; ++r)
        if (min_pre[r] < b) residues.push_back(r);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> unit_leads; // (power, smallest coprime x)
    {
        std::vector<char> seen(b, 0);
        for (std::uint64_t x1 = 1; x1 < b; ++x1) {
            if (local_gcd(x1, b) != 1 || seen[pw[x1]]) continue;
            seen[pw[x1]] = 1;
            unit_leads.emplace_back(pw[x1], x1);
        }
    }

    BruteForceTheta out;
    std::vector<std::size_t> picks; // indices into residues

    // Nondecreasing residue indices; any vanishing multiset sorts into this
    // form, so existence per g is decided exactly.
    auto dfs = [&](auto&& self, unsigned slots, std::size_t lo, std::uint64_t acc) -> bool {
        if (slots == 0) return acc % b == 0;
        for (std::size_t idx = lo; idx < residues.size(); ++idx) {
            if (++out.nodes > node_budget) return false;
            picks.push_back(idx);
            if (self(self, slots - 1, idx, (acc + residues[idx]) % b)) return true;
            picks.pop_back();
        }
        return false;
    };

    for (unsigned g = 1; g <= g_max; ++g) {
        for (const auto& [power, x1] : unit_leads) {
            if (++out.nodes > node_budget) {
                out.outcome = BruteForceTheta::Outcome::BudgetExceeded;
                return out;
            }
            picks.clear();
            if (dfs(dfs, g - 1, 0, power)) {
                out.outcome = BruteForceTheta::Outcome::Found;
                out.value = g;
                out.tuple.assign(1, x1);
                for (std::size_t idx : picks) out.tuple.push_back(min_pre[residues[idx]]);
                return out;
            }
            if (out.nodes > node_budget) {
                out.outcome = BruteForceTheta::Outcome::BudgetExceeded;
                return out;
            }
        }
    }
    out.outcome = BruteForceTheta::Outcome::NotFound;
    return out;
}

} // namespace pqs::oracle
