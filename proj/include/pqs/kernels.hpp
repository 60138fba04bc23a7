#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pqs/poly.hpp"

// Scan kernels. Each comes as a serial reference implementation and an
// OpenMP variant producing bit-identical results; the unsuffixed name
// dispatches on problem size. Parallel reductions are all order-independent
// (set union, counter sums, minimum index), so thread count never changes an
// answer.

namespace pqs {

struct DynBitset {
    std::size_t nbits = 0;
    std::vector<std::uint64_t> words;

    DynBitset() = default;
    explicit DynBitset(std::size_t n) : nbits(n), words((n + 63) / 64, 0) {}

    std::size_t size() const { return nbits; }
    void set(std::size_t i) { words[i >> 6] |= std::uint64_t(1) << (i & 63); }
    bool test(std::size_t i) const { return (words[i >> 6] >> (i & 63)) & 1; }
    std::size_t count() const;
    bool all() const;
    bool none() const;
    DynBitset& operator|=(const DynBitset& o);
    void mask_tail();
    std::vector<std::uint64_t> to_indices() const;

    bool operator==(const DynBitset&) const = default;
};

// dst |= src rotated left by shift in the cyclic group Z/size.
void or_rotated(DynBitset& dst, const DynBitset& src, std::uint64_t shift);

// { s + a mod size : s in reached, a in addends }
DynBitset sumset_layer_serial(const DynBitset& reached, const std::vector<std::uint64_t>& addends);
DynBitset sumset_layer_parallel(const DynBitset& reached, const std::vector<std::uint64_t>& addends);
DynBitset sumset_layer(const DynBitset& reached, const std::vector<std::uint64_t>& addends);

// All x in [0, modulus) with f(x) = 0 mod modulus, ascending. Coefficients are
// given mod modulus, constant first.
std::vector<std::uint64_t> poly_roots_mod_serial(const std::vector<std::uint64_t>& coeffs, std::uint64_t modulus);
std::vector<std::uint64_t> poly_roots_mod_parallel(const std::vector<std::uint64_t>& coeffs, std::uint64_t modulus);
std::vector<std::uint64_t> poly_roots_mod(const std::vector<std::uint64_t>& coeffs, std::uint64_t modulus);

// Smallest root, or nullopt. Early exit per block.
std::optional<std::uint64_t> poly_first_root_mod_serial(const std::vector<std::uint64_t>& coeffs, std::uint64_t modulus);
std::optional<std::uint64_t> poly_first_root_mod_parallel(const std::vector<std::uint64_t>& coeffs, std::uint64_t modulus);
std::optional<std::uint64_t> poly_first_root_mod(const std::vector<std::uint64_t>& coeffs, std::uint64_t modulus);

// Smallest x in [1, modulus) coprime to p with x^n = target mod modulus.
std::optional<std::uint64_t> first_unit_power_serial(std::uint64_t n, std::uint64_t modulus, std::uint64_t target,
                                                     std::uint64_t p);
std::optional<std::uint64_t> first_unit_power_parallel(std::uint64_t n, std::uint64_t modulus, std::uint64_t target,
                                                       std::uint64_t p);
std::optional<std::uint64_t> first_unit_power(std::uint64_t n, std::uint64_t modulus, std::uint64_t target,
                                              std::uint64_t p);

struct SpectrumCounts {
    std::map<long, std::uint64_t> by_valuation;
    std::uint64_t zero_values = 0;

    bool operator==(const SpectrumCounts&) const = default;
};

// Valuation histogram of f(x) for x = 1..x_max.
SpectrumCounts spectrum_scan_serial(const FactoredPoly& f, std::uint64_t p, std::uint64_t x_max);
SpectrumCounts spectrum_scan_parallel(const FactoredPoly& f, std::uint64_t p, std::uint64_t x_max);
SpectrumCounts spectrum_scan(const FactoredPoly& f, std::uint64_t p, std::uint64_t x_max);

} // namespace pqs
