#include "pqs/waring.hpp"

#include <numeric>
#include <stdexcept>

#include "pqs/errors.hpp"
#include "pqs/modarith.hpp"

namespace pqs {

namespace {

void check_inputs(std::uint64_t n, std::uint64_t b, std::uint64_t modulus_limit) {
    if (n < 1) throw std::invalid_argument("waring: n must be >= 1");
    if (b < 2) throw std::invalid_argument("waring: modulus must be >= 2");
    if (b > modulus_limit)
        throw budget_error("waring: modulus " + std::to_string(b) + " exceeds the limit " +
                           std::to_string(modulus_limit));
}

DynBitset residue_bits(std::uint64_t n, std::uint64_t b, bool units_only) {
    DynBitset bits(b);
    for (std::uint64_t x = 0; x < b; ++x) {
        if (units_only && std::gcd(x, b) != 1) continue;
        bits.set(powmod_u64(x, n, b));
    }
    return bits;
}

// Reachability layers R[j] = sums of j n-th powers (unconstrained), used to
// rebuild lexicographically smallest witness tuples.
std::vector<DynBitset> reach_layers(std::uint64_t b, unsigned upto, const std::vector<std::uint64_t>& addends) {
    std::vector<DynBitset> layers;
    layers.reserve(upto + 1);
    DynBitset base(b);
    base.set(0);
    layers.push_back(base);
    for (unsigned j = 1; j <= upto; ++j) layers.push_back(sumset_layer(layers.back(), addends));
    return layers;
}

} // namespace

std::vector<std::uint64_t> nth_power_residues(std::uint64_t n, std::uint64_t b, bool units_only,
                                              std::uint64_t modulus_limit) {
    check_inputs(n, b, modulus_limit);
    return residue_bits(n, b, units_only).to_indices();
}

WaringResult theta(std::uint64_t n, std::uint64_t b, unsigned cap, bool want_certificate,
                   std::uint64_t modulus_limit) {
    check_inputs(n, b, modulus_limit);
    if (cap == 0) cap = static_cast<unsigned>(b);
    const std::vector<std::uint64_t> all = residue_bits(n, b, false).to_indices();
    DynBitset reached = residue_bits(n, b, true);

    WaringResult out;
    out.cap = cap;
    unsigned found = 0;
    for (unsigned g = 1; g <= cap; ++g) {
        if (reached.test(0)) {
            found = g;
            break;
        }
        if (g == cap) break;
        DynBitset next = sumset_layer(reached, all);
        if (next == reached) break; // stable and 0 unreached: no g will do
        reached = std::move(next);
    }
    if (found == 0) {
        out.unreached = {0};
        return out;
    }
    out.value = found;
    if (!want_certificate) return out;

    // Greedy reconstruction: choose the smallest first entry (a unit) whose
    // complement is a sum of found-1 powers, then the smallest each slot.
    auto layers = reach_layers(b, found - 1, all);
    std::uint64_t target = 0;
    bool first_set = false;
    for (std::uint64_t x = 1; x < b && !first_set; ++x) {
        if (std::gcd(x, b) != 1) continue;
        std::uint64_t rest = (b - powmod_u64(x, n, b)) % b;
        if (layers[found - 1].test(rest)) {
            out.certificate.push_back(x);
            target = rest;
            first_set = true;
        }
    }
    if (!first_set) throw std::logic_error("theta: certificate reconstruction failed");
    for (unsigned slot = 1; slot < found; ++slot) {
        const unsigned remaining = found - slot - 1;
        bool set = false;
        for (std::uint64_t x = 0; x < b && !set; ++x) {
            std::uint64_t rest = (target + b - powmod_u64(x, n, b) % b) % b;
            if (layers[remaining].test(rest)) {
                out.certificate.push_back(x);
                target = rest;
                set = true;
            }
        }
        if (!set) throw std::logic_error("theta: certificate reconstruction failed");
    }
    if (target != 0) throw std::logic_error("theta: certificate does not close");
    return out;
}

WaringResult gamma(std::uint64_t n, std::uint64_t b, unsigned cap, std::uint64_t modulus_limit) {
    check_inputs(n, b, modulus_limit);
    if (cap == 0) cap = static_cast<unsigned>(b);
    const std::vector<std::uint64_t> all = residue_bits(n, b, false).to_indices();
    DynBitset reached = residue_bits(n, b, false);

    WaringResult out;
    out.cap = cap;
    for (unsigned g = 1; g <= cap; ++g) {
        if (reached.all()) {
            out.value = g;
            return out;
        }
        if (g == cap) break;
        DynBitset next = sumset_layer(reached, all);
        if (next == reached) break;
        reached = std::move(next);
    }
    for (std::uint64_t r = 0; r < b; ++r)
        if (!reached.test(r)) out.unreached.push_back(r);
    return out;
}

std::optional<std::vector<std::uint64_t>> gamma_certificate(std::uint64_t n, std::uint64_t b, std::uint64_t target,
                                                            unsigned g, std::uint64_t modulus_limit) {
    check_inputs(n, b, modulus_limit);
    if (g < 1) throw std::invalid_argument("gamma_certificate: g must be >= 1");
    const std::vector<std::uint64_t> all = residue_bits(n, b, false).to_indices();
    auto layers = reach_layers(b, g, all);
    std::uint64_t rest = target % b;
    if (!layers[g].test(rest)) return std::nullopt;
    std::vector<std::uint64_t> tuple;
    for (unsigned slot = 0; slot < g; ++slot) {
        const unsigned remaining = g - slot - 1;
        bool set = false;
        for (std::uint64_t x = 0; x < b && !set; ++x) {
            std::uint64_t next = (rest + b - powmod_u64(x, n, b) % b) % b;
            if (layers[remaining].test(next)) {
                tuple.push_back(x);
                rest = next;
                set = true;
            }
        }
        if (!set) throw std::logic_error("gamma_certificate: reconstruction failed");
    }
    if (rest != 0) throw std::logic_error("gamma_certificate: tuple does not close");
    return tuple;
}

NegOnePower is_neg1_nth_power(std::uint64_t n, std::uint64_t p, std::uint64_t modulus_limit) {
    if (n < 1) throw std::invalid_argument("is_neg1_nth_power: n must be >= 1");
    if (!is_prime_u64(p)) throw std::invalid_argument("is_neg1_nth_power: p is not prime");
    unsigned k = 0;
    for (std::uint64_t m = n; m % p == 0; m /= p) ++k;
    std::uint64_t modulus = 1;
    for (unsigned i = 0; i < 2 * k + 1; ++i) {
        if (modulus > modulus_limit / p)
            throw budget_error("is_neg1_nth_power: p^" + std::to_string(2 * k + 1) + " exceeds the scan limit");
        modulus *= p;
    }
    NegOnePower out;
    out.modulus = modulus;
    auto hit = first_unit_power(n, modulus, modulus - 1, p);
    if (hit) {
        out.yes = true;
        out.witness = *hit;
    }
    return out;
}

} // namespace pqs
