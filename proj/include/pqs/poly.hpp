#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "pqs/padic.hpp"

namespace pqs {

// Integer polynomial with the constant term first. The zero polynomial has an
// empty coefficient vector; otherwise the top coefficient is nonzero.
struct DensePoly {
    std::vector<mpz_class> coeffs;

    DensePoly() = default;
    explicit DensePoly(std::vector<mpz_class> c) : coeffs(std::move(c)) { normalize(); }

    static DensePoly constant(const mpz_class& c);

    bool is_zero() const { return coeffs.empty(); }
    // -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    const mpz_class& leading() const;
    void normalize();

    bool operator==(const DensePoly&) const = default;
};

DensePoly poly_add(const DensePoly& a, const DensePoly& b);
DensePoly poly_mul(const DensePoly& a, const DensePoly& b);
DensePoly poly_pow(const DensePoly& a, unsigned e);
DensePoly derivative(const DensePoly& f);

mpz_class eval_at(const DensePoly& f, const mpz_class& x);
mpz_class eval_mod(const DensePoly& f, const mpz_class& x, const mpz_class& modulus);
PAdicNumber eval_padic(const DensePoly& f, const PAdicNumber& x, const PAdicContext& ctx);

// leading * prod (X - root_i)^multiplicity_i * cofactor, with distinct integer
// roots and a cofactor that vanishes at none of them.
struct FactoredPoly {
    struct Factor {
        mpz_class root;
        unsigned multiplicity = 1;
    };

    mpz_class leading = 1;
    std::vector<Factor> factors;
    DensePoly cofactor = DensePoly::constant(1);

    FactoredPoly(mpz_class leading_, std::vector<Factor> factors_,
                 DensePoly cofactor_ = DensePoly::constant(1));

    long degree() const;
};

DensePoly expand(const FactoredPoly& f);
mpz_class eval_at(const FactoredPoly& f, const mpz_class& x);

// f with the chosen linear power divided out, as (polynomial, value at that
// root). The value is never zero.
std::pair<DensePoly, mpz_class> cofactor_at_root(const FactoredPoly& f, std::size_t index);

// Text forms:
//   factored:  [int '*'] ( '(' 'X' (('+'|'-') uint)? ')' ['^' uint] )+
//   dense:     '[' int (',' int)* ']'    (constant term first)
std::variant<DensePoly, FactoredPoly> parse_poly(std::string_view text);

std::string to_string(const DensePoly& f);
std::string to_string(const FactoredPoly& f);

} // namespace pqs
