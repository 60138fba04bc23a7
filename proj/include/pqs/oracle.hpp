#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace pqs::oracle {

inline constexpr std::uint64_t default_enum_budget = 10'000'000;
inline constexpr std::uint64_t default_node_budget = 64'000'000;

// All distinct values a_1^n + ... + a_m^n with 0 <= a_t <= x_bound, ascending.
// Built by m-fold merging, independent of the residue machinery.
std::vector<mpz_class> enumerate_power_sums(unsigned m, unsigned n, std::uint64_t x_bound,
                                            std::uint64_t budget = default_enum_budget);

// First pair (i, j) in lexicographic order with v_p(A[i]/A[j] - r) > u,
// A[j] != 0. Exact rational arithmetic throughout.
std::optional<std::pair<std::size_t, std::size_t>> ratio_ball_hit(const std::vector<mpz_class>& values,
                                                                  const mpq_class& r, std::uint64_t p, long u);

struct BruteForceTheta {
    enum class Outcome { Found, NotFound, BudgetExceeded };
    Outcome outcome = Outcome::NotFound;
    unsigned value = 0;                // set when Found
    std::vector<std::uint64_t> tuple;  // witness when Found: first entry coprime to b
    std::uint64_t nodes = 0;
};

// Depth-first search for the smallest g with a vanishing unit-led power sum
// mod b. Shares no code with the layered computation.
BruteForceTheta brute_force_theta(std::uint64_t n, std::uint64_t b, unsigned g_max,
                                  std::uint64_t node_budget = default_node_budget);

} // namespace pqs::oracle
