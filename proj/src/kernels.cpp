#include "pqs/kernels.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pqs/modarith.hpp"

namespace pqs {

namespace {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace

std::size_t DynBitset::count() const {
    std::size_t c = 0;
    for (std::uint64_t w : words) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool DynBitset::all() const { return count() == nbits; }

bool DynBitset::none() const {
    for (std::uint64_t w : words)
        if (w) return false;
    return true;
}

DynBitset& DynBitset::operator|=(const DynBitset& o) {
    if (o.nbits != nbits) throw std::invalid_argument("DynBitset: size mismatch");
    for (std::size_t i = 0; i < words.size(); ++i) words[i] |= o.words[i];
    return *this;
}

void DynBitset::mask_tail() {
    if (words.empty()) return;
    std::size_t used = nbits & 63;
    if (used) words.back() &= (std::uint64_t(1) << used) - 1;
}

std::vector<std::uint64_t> DynBitset::to_indices() const {
    std::vector<std::uint64_t> r;
    for (std::size_t i = 0; i < nbits; ++i)
        if (test(i)) r.push_back(i);
    return r;
}

void or_rotated(DynBitset& dst, const DynBitset& src, std::uint64_t shift) {
    const std::size_t b = src.nbits;
    if (dst.nbits != b) throw std::invalid_argument("or_rotated: size mismatch");
    if (b == 0) return;
    shift %= b;
    if (shift == 0) {
        dst |= src;
        return;
    }
    const std::size_t nw = src.words.size();
    // Bits [0, b-shift) move up by shift; junk above bit b is masked at the end.
    {
        const std::size_t q = shift >> 6, r = shift & 63;
        for (std::size_t i = nw; i-- > q;) {
            std::uint64_t lo = src.words[i - q];
            std::uint64_t w;
            if (r == 0) {
                w = lo;
            } else {
                std::uint64_t hi = (i - q > 0) ? src.words[i - q - 1] : 0;
                w = (lo << r) | (hi >> (64 - r));
            }
            dst.words[i] |= w;
        }
    }
    // Bits [b-shift, b) wrap to [0, shift). Tail bits of src above b are zero.
    {
        const std::uint64_t down = b - shift;
        const std::size_t q = down >> 6, r = down & 63;
        for (std::size_t i = 0; i + q < nw; ++i) {
            std::uint64_t lo = src.words[i + q];
            std::uint64_t w;
            if (r == 0) {
                w = lo;
            } else {
                std::uint64_t hi = (i + q + 1 < nw) ? src.words[i + q + 1] : 0;
                w = (lo >> r) | (hi << (64 - r));
            }
            dst.words[i] |= w;
        }
    }
    dst.mask_tail();
}

DynBitset sumset_layer_serial(const DynBitset& reached, const std::vector<std::uint64_t>& addends) {
    DynBitset out(reached.nbits);
    for (std::uint64_t a : addends) or_rotated(out, reached, a);
    return out;
}

DynBitset sumset_layer_parallel(const DynBitset& reached, const std::vector<std::uint64_t>& addends) {
#ifndef _OPENMP
    return sumset_layer_serial(reached, addends);
#else
    DynBitset out(reached.nbits);
#pragma omp parallel
    {
        DynBitset local(reached.nbits);
#pragma omp for schedule(static) nowait
        for (long i = 0; i < static_cast<long>(addends.size()); ++i)
            or_rotated(local, reached, addends[static_cast<std::size_t>(i)]);
#pragma omp critical(pqs_sumset_merge)
        out |= local;
    }
    return out;
#endif
}

DynBitset sumset_layer(const DynBitset& reached, const std::vector<std::uint64_t>& addends) {
    const std::size_t work = reached.words.size() * std::max<std::size_t>(addends.size(), 1);
    if (max_threads() > 1 && work > 1u << 16) return sumset_layer_parallel(reached, addends);
    return sumset_layer_serial(reached, addends);
}

namespace {

inline std::uint64_t horner_mod(const std::vector<std::uint64_t>& coeffs, std::uint64_t x, std::uint64_t m) {
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = (mulmod_u64(acc, x, m) + coeffs[i]) % m;
    return acc;
}

} // namespace

std::vector<std::uint64_t> poly_roots_mod_serial(const std::vector<std::uint64_t>& coeffs, std::uint64_t modulus) {
    if (modulus < 1) throw std::invalid_argument("poly_roots_mod: modulus must be positive");
    std::vector<std::uint64_t> roots;
    for (std::uint64_t x = 0; x < modulus; ++x)
        if (horner_mod(coeffs, x, modulus) == 0) roots.push_back(x);
    return roots;
}

std::vector<std::uint64_t> poly_roots_mod_parallel(const std::vector<std::uint64_t>& coeffs, std::uint64_t modulus) {
#ifndef _OPENMP
    return poly_roots_mod_serial(coeffs, modulus);
#else
    if (modulus < 1) throw std::invalid_argument("poly_roots_mod: modulus must be positive");
    const int nt = max_threads();
    std::vector<std::vector<std::uint64_t>> chunks(static_cast<std::size_t>(nt));
#pragma omp parallel num_threads(nt)
    {
        const int t = omp_get_thread_num();
        const int total = omp_get_num_threads();
        const std::uint64_t lo = modulus * static_cast<std::uint64_t>(t) / static_cast<std::uint64_t>(total);
        const std::uint64_t hi = modulus * static_cast<std::uint64_t>(t + 1) / static_cast<std::uint64_t>(total);
        auto& mine = chunks[static_cast<std::size_t>(t)];
        for (std::uint64_t x = lo; x < hi; ++x)
            if (horner_mod(coeffs, x, modulus) == 0) mine.push_back(x);
    }
    std::vector<std::uint64_t> roots;
    for (auto& c : chunks) roots.insert(roots.end(), c.begin(), c.end());
    return roots;
#endif
}

std::vector<std::uint64_t> poly_roots_mod(const std::vector<std::uint64_t>& coeffs, std::uint64_t modulus) {
    if (max_threads() > 1 && modulus > 1u << 14) return poly_roots_mod_parallel(coeffs, modulus);
    return poly_roots_mod_serial(coeffs, modulus);
}

std::optional<std::uint64_t> poly_first_root_mod_serial(const std::vector<std::uint64_t>& coeffs,
                                                        std::uint64_t modulus) {
    if (modulus < 1) throw std::invalid_argument("poly_first_root_mod: modulus must be positive");
    for (std::uint64_t x = 0; x < modulus; ++x)
        if (horner_mod(coeffs, x, modulus) == 0) return x;
    return std::nullopt;
}

namespace {

// Generic blocked minimum-hit search over [0, limit): parallel inside a block,
// stop after the first block containing a hit. The smallest hit wins, so the
// result never depends on thread scheduling.
template <class Pred>
std::optional<std::uint64_t> blocked_min_search(std::uint64_t limit, Pred&& hit) {
    constexpr std::uint64_t block = 1u << 16;
    for (std::uint64_t lo = 0; lo < limit; lo += block) {
        const std::uint64_t hi = std::min(limit, lo + block);
        std::uint64_t best = hi;
#if defined(_OPENMP)
#pragma omp parallel for schedule(static) reduction(min : best)
#endif
        for (long xi = static_cast<long>(lo); xi < static_cast<long>(hi); ++xi) {
            const std::uint64_t x = static_cast<std::uint64_t>(xi);
            if (x < best && hit(x)) best = x;
        }
        if (best < hi) return best;
    }
    return std::nullopt;
}

} // namespace

std::optional<std::uint64_t> poly_first_root_mod_parallel(const std::vector<std::uint64_t>& coeffs,
                                                          std::uint64_t modulus) {
    if (modulus < 1) throw std::invalid_argument("poly_first_root_mod: modulus must be positive");
    return blocked_min_search(modulus, [&](std::uint64_t x) { return horner_mod(coeffs, x, modulus) == 0; });
}

std::optional<std::uint64_t> poly_first_root_mod(const std::vector<std::uint64_t>& coeffs, std::uint64_t modulus) {
    if (max_threads() > 1 && modulus > 1u << 14) return poly_first_root_mod_parallel(coeffs, modulus);
    return poly_first_root_mod_serial(coeffs, modulus);
}

std::optional<std::uint64_t> first_unit_power_serial(std::uint64_t n, std::uint64_t modulus, std::uint64_t target,
                                                     std::uint64_t p) {
    if (modulus < 1) throw std::invalid_argument("first_unit_power: modulus must be positive");
    for (std::uint64_t x = 1; x < modulus; ++x)
        if (x % p != 0 && powmod_u64(x, n, modulus) == target % modulus) return x;
    return std::nullopt;
}

std::optional<std::uint64_t> first_unit_power_parallel(std::uint64_t n, std::uint64_t modulus, std::uint64_t target,
                                                       std::uint64_t p) {
    if (modulus < 1) throw std::invalid_argument("first_unit_power: modulus must be positive");
    const std::uint64_t t = target % modulus;
    auto r = blocked_min_search(modulus - 1, [&](std::uint64_t i) {
        const std::uint64_t x = i + 1;
        return x % p != 0 && powmod_u64(x, n, modulus) == t;
    });
    if (!r) return std::nullopt;
    return *r + 1;
}

std::optional<std::uint64_t> first_unit_power(std::uint64_t n, std::uint64_t modulus, std::uint64_t target,
                                              std::uint64_t p) {
    if (max_threads() > 1 && modulus > 1u << 14) return first_unit_power_parallel(n, modulus, target, p);
    return first_unit_power_serial(n, modulus, target, p);
}

namespace {

// Valuation of f(x), or nullopt when f(x) = 0.
std::optional<long> point_valuation(const FactoredPoly& f, const mpz_class& p, long lead_val, const mpz_class& x) {
    long v = lead_val;
    for (const auto& fac : f.factors) {
        mpz_class d = x - fac.root;
        if (d == 0) return std::nullopt;
        mpz_class reduced;
        v += static_cast<long>(mpz_remove(reduced.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t())) *
             static_cast<long>(fac.multiplicity);
    }
    mpz_class c = eval_at(f.cofactor, x);
    if (c == 0) return std::nullopt;
    mpz_class reduced;
    v += static_cast<long>(mpz_remove(reduced.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t()));
    return v;
}

} // namespace

SpectrumCounts spectrum_scan_serial(const FactoredPoly& f, std::uint64_t p, std::uint64_t x_max) {
    if (!is_prime_u64(p)) throw std::invalid_argument("spectrum_scan: p is not prime");
    SpectrumCounts out;
    mpz_class pz(static_cast<unsigned long>(p));
    long lead_val;
    {
        mpz_class lead = f.leading, reduced;
        lead_val = static_cast<long>(mpz_remove(reduced.get_mpz_t(), lead.get_mpz_t(), pz.get_mpz_t()));
    }
    for (std::uint64_t x = 1; x <= x_max; ++x) {
        auto v = point_valuation(f, pz, lead_val, mpz_class(static_cast<unsigned long>(x)));
        if (!v)
            ++out.zero_values;
        else
            ++out.by_valuation[*v];
    }
    return out;
}

SpectrumCounts spectrum_scan_parallel(const FactoredPoly& f, std::uint64_t p, std::uint64_t x_max) {
#ifndef _OPENMP
    return spectrum_scan_serial(f, p, x_max);
#else
    if (!is_prime_u64(p)) throw std::invalid_argument("spectrum_scan: p is not prime");
    mpz_class pz(static_cast<unsigned long>(p));
    long lead_val;
    {
        mpz_class lead = f.leading, reduced;
        lead_val = static_cast<long>(mpz_remove(reduced.get_mpz_t(), lead.get_mpz_t(), pz.get_mpz_t()));
    }
    const int nt = max_threads();
    std::vector<SpectrumCounts> parts(static_cast<std::size_t>(nt));
#pragma omp parallel num_threads(nt)
    {
        const int t = omp_get_thread_num();
        const int total = omp_get_num_threads();
        const std::uint64_t lo = 1 + x_max * static_cast<std::uint64_t>(t) / static_cast<std::uint64_t>(total);
        const std::uint64_t hi = 1 + x_max * static_cast<std::uint64_t>(t + 1) / static_cast<std::uint64_t>(total);
        auto& mine = parts[static_cast<std::size_t>(t)];
        for (std::uint64_t x = lo; x < hi; ++x) {
            auto v = point_valuation(f, pz, lead_val, mpz_class(static_cast<unsigned long>(x)));
            if (!v)
                ++mine.zero_values;
            else
                ++mine.by_valuation[*v];
        }
    }
    SpectrumCounts out;
    for (const auto& part : parts) {
        out.zero_values += part.zero_values;
        for (const auto& [v, c] : part.by_valuation) out.by_valuation[v] += c;
    }
    return out;
#endif
}

SpectrumCounts spectrum_scan(const FactoredPoly& f, std::uint64_t p, std::uint64_t x_max) {
    if (max_threads() > 1 && x_max > 1u << 12) return spectrum_scan_parallel(f, p, x_max);
    return spectrum_scan_serial(f, p, x_max);
}

} // namespace pqs
