#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqs/kernels.hpp"
#include "pqs/padic.hpp"
#include "pqs/poly.hpp"
#include "pqs/waring.hpp"

namespace pqs {

enum class Status { Dense, NotDense, Unknown };

enum class Reason {
    ThetaThreshold,
    Special2AdicThreshold,
    SimpleZero,
    GcdMultiplicity,
    MissingValuationClass,
    NoZeroInZp,
    OutOfTheoremScope,
};

std::string to_string(Status s);
std::string to_string(Reason r);

// Outcome of a denseness decision. `certificate` carries the machine-checkable
// evidence for the verdict; `rule` names the decision rule that fired.
struct Verdict {
    Status status = Status::Unknown;
    Reason reason = Reason::OutOfTheoremScope;
    nlohmann::json certificate;
    nlohmann::json inputs;
    std::string rule;

    nlohmann::json to_json() const;
};

// Is { (a_1^n + ... + a_m^n) / (b_1^n + ... + b_m^n) } dense in Q_p?
Verdict decide_power_sum(unsigned m, unsigned n, std::uint64_t p);

// The m = 2 special case, decided through the -1 route and cross-checked
// against decide_power_sum.
Verdict decide_s2(unsigned n, std::uint64_t p);

// Quotients of values of a degree <= 2 integer polynomial.
Verdict decide_poly_deg_le2(const DensePoly& f, std::uint64_t p);

// Multiplicity profile of a polynomial that splits over Z_p.
struct SplitProfile {
    std::vector<unsigned> multiplicities;
};

Verdict decide_split_poly(const SplitProfile& profile, std::uint64_t p);

// Denseness verdict for a factored integer polynomial (split over Z by
// construction), via the multiplicity rules.
Verdict decide_factored_poly(const FactoredPoly& f, std::uint64_t p);

// --- 2-adic closure of m-term n-th-power sums -------------------------------
//
// The sets T(m, n) below are the closures, in Z_2, of the n-th-power sums
// with exactly m terms for n in {4, 8, 16}: unions of cylinders
// 2^(n v) (j + 4 n Z_2) for 1 <= j <= m, together with 0.

bool is_valid_closure_exponent(unsigned n); // n in {4, 8, 16}

// Is the truncated 2-adic number a member of T(m, n)? Needs the unit known
// mod 2^(v_2(4n) + 2).
bool t_closure_membership(const PAdicNumber& value, const PAdicContext& ctx, unsigned m, unsigned n);

// Is the rational q a ratio of two nonzero members of T(m, n) (or 0)?
// Exact: decided by a finite congruence case split over the cylinder classes.
bool t_ratio_membership(const Rational& q, unsigned m, unsigned n);

// --- valuation spectrum ------------------------------------------------------

struct SpectrumReport {
    SpectrumCounts counts;
    std::vector<long> distinct_valuations;
    std::vector<long> difference_classes; // centered residues of differences mod `modulus`
    std::uint64_t modulus = 0;
};

// Observed v_p(f(x)) for x = 1..x_max, with pairwise differences reduced mod
// `modulus` (0 = skip the reduction).
SpectrumReport valuation_spectrum(const FactoredPoly& f, std::uint64_t p, std::uint64_t x_max,
                                  std::uint64_t modulus = 0);

} // namespace pqs
