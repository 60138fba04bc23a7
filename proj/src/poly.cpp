#include "pqs/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace pqs {

DensePoly DensePoly::constant(const mpz_class& c) {
    DensePoly f;
    if (c != 0) f.coeffs.push_back(c);
    return f;
}

const mpz_class& DensePoly::leading() const {
    if (coeffs.empty()) throw std::logic_error("DensePoly::leading: zero polynomial");
    return coeffs.back();
}

void DensePoly::normalize() {
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

DensePoly poly_add(const DensePoly& a, const DensePoly& b) {
    DensePoly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
    r.normalize();
    return r;
}

DensePoly poly_mul(const DensePoly& a, const DensePoly& b) {
    if (a.is_zero() || b.is_zero()) return DensePoly{};
    DensePoly r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    r.normalize();
    return r;
}

DensePoly poly_pow(const DensePoly& a, unsigned e) {
    DensePoly acc = DensePoly::constant(1);
    DensePoly base = a;
    while (e > 0) {
        if (e & 1) acc = poly_mul(acc, base);
        e >>= 1;
        if (e > 0) base = poly_mul(base, base);
    }
    return acc;
}

DensePoly derivative(const DensePoly& f) {
    DensePoly r;
    if (f.coeffs.size() <= 1) return r;
    r.coeffs.resize(f.coeffs.size() - 1);
    for (std::size_t i = 1; i < f.coeffs.size(); ++i)
        r.coeffs[i - 1] = f.coeffs[i] * static_cast<unsigned long>(i);
    r.normalize();
    return r;
}

mpz_class eval_at(const DensePoly& f, const mpz_class& x) {
    mpz_class acc = 0;
    for (std::size_t i = f.coeffs.size(); i-- > 0;) acc = acc * x + f.coeffs[i];
    return acc;
}

mpz_class eval_mod(const DensePoly& f, const mpz_class& x, const mpz_class& modulus) {
    if (modulus < 1) throw std::invalid_argument("eval_mod: modulus must be positive");
    mpz_class acc = 0;
    mpz_class xr = x % modulus;
    for (std::size_t i = f.coeffs.size(); i-- > 0;) acc = (acc * xr + f.coeffs[i]) % modulus;
    if (acc < 0) acc += modulus;
    return acc;
}

PAdicNumber eval_padic(const DensePoly& f, const PAdicNumber& x, const PAdicContext& ctx) {
    if (!x.is_zero && x.valuation < 0)
        throw std::invalid_argument("eval_padic: point has negative valuation");
    PAdicNumber acc = padic_zero();
    for (std::size_t i = f.coeffs.size(); i-- > 0;)
        acc = padic_add(padic_mul(acc, x, ctx), padic_from_integer(f.coeffs[i], ctx), ctx);
    return acc;
}

FactoredPoly::FactoredPoly(mpz_class leading_, std::vector<Factor> factors_, DensePoly cofactor_)
    : leading(std::move(leading_)), factors(std::move(factors_)), cofactor(std::move(cofactor_)) {
    if (leading == 0) throw std::invalid_argument("FactoredPoly: leading coefficient is zero");
    if (cofactor.is_zero()) throw std::invalid_argument("FactoredPoly: cofactor is the zero polynomial");
    for (const auto& f : factors) {
        if (f.multiplicity < 1) throw std::invalid_argument("FactoredPoly: multiplicity must be >= 1");
    }
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = i + 1; j < factors.size(); ++j)
            if (factors[i].root == factors[j].root)
                throw std::invalid_argument("FactoredPoly: repeated root " + factors[i].root.get_str());
    for (const auto& f : factors)
        if (eval_at(cofactor, f.root) == 0)
            throw std::invalid_argument("FactoredPoly: cofactor vanishes at root " + f.root.get_str());
}

long FactoredPoly::degree() const {
    long d = cofactor.degree();
    for (const auto& f : factors) d += static_cast<long>(f.multiplicity);
    return d;
}

DensePoly expand(const FactoredPoly& f) {
    DensePoly acc = DensePoly::constant(f.leading);
    for (const auto& fac : f.factors) {
        DensePoly lin({-fac.root, 1});
        acc = poly_mul(acc, poly_pow(lin, fac.multiplicity));
    }
    return poly_mul(acc, f.cofactor);
}

mpz_class eval_at(const FactoredPoly& f, const mpz_class& x) {
    mpz_class acc = f.leading;
    for (const auto& fac : f.factors) {
        mpz_class d = x - fac.root;
        mpz_class dp;
        mpz_pow_ui(dp.get_mpz_t(), d.get_mpz_t(), fac.multiplicity);
        acc *= dp;
    }
    return acc * eval_at(f.cofactor, x);
}

std::pair<DensePoly, mpz_class> cofactor_at_root(const FactoredPoly& f, std::size_t index) {
    if (index >= f.factors.size()) throw std::invalid_argument("cofactor_at_root: index out of range");
    DensePoly g = DensePoly::constant(f.leading);
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        if (i == index) continue;
        DensePoly lin({-f.factors[i].root, 1});
        g = poly_mul(g, poly_pow(lin, f.factors[i].multiplicity));
    }
    g = poly_mul(g, f.cofactor);
    mpz_class value = eval_at(g, f.factors[index].root);
    if (value == 0) throw std::logic_error("cofactor_at_root: value vanished");
    return {std::move(g), std::move(value)};
}

namespace {

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("polynomial parse error at position " + std::to_string(pos) + ": " + what);
    }

    mpz_class integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        std::size_t digits = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == digits) fail("expected an integer");
        return mpz_class(std::string(s.substr(start, pos - start)));
    }

    unsigned long uinteger() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected an unsigned integer");
        mpz_class v(std::string(s.substr(start, pos - start)));
        if (!v.fits_ulong_p()) fail("integer too large");
        return v.get_ui();
    }
};

DensePoly parse_dense(Cursor& c) {
    c.expect('[');
    std::vector<mpz_class> coeffs;
    coeffs.push_back(c.integer());
    while (c.accept(',')) coeffs.push_back(c.integer());
    c.expect(']');
    if (!c.eof()) c.fail("trailing characters");
    return DensePoly(std::move(coeffs));
}

FactoredPoly parse_factored(Cursor& c) {
    mpz_class leading = 1;
    if (c.peek() != '(') {
        leading = c.integer();
        c.expect('*');
    }
    std::vector<FactoredPoly::Factor> factors;
    while (c.accept('(')) {
        if (!c.accept('X')) c.fail("expected 'X'");
        mpz_class root = 0;
        char op = c.peek();
        if (op == '+' || op == '-') {
            ++c.pos;
            mpz_class off = c.integer();
            if (off < 0) c.fail("offset must be unsigned");
            root = (op == '+') ? mpz_class(-off) : off;
        }
        c.expect(')');
        unsigned long mult = 1;
        if (c.accept('^')) {
            mult = c.uinteger();
            if (mult < 1) c.fail("exponent must be >= 1");
        }
        bool merged = false;
        for (auto& f : factors) {
            if (f.root == root) {
                f.multiplicity += static_cast<unsigned>(mult);
                merged = true;
                break;
            }
        }
        if (!merged) factors.push_back({root, static_cast<unsigned>(mult)});
    }
    if (factors.empty()) c.fail("expected at least one factor");
    if (!c.eof()) c.fail("trailing characters");
    return FactoredPoly(std::move(leading), std::move(factors));
}

} // namespace

std::variant<DensePoly, FactoredPoly> parse_poly(std::string_view text) {
    Cursor c{text};
    if (c.eof()) c.fail("empty input");
    if (c.peek() == '[') return parse_dense(c);
    return parse_factored(c);
}

std::string to_string(const DensePoly& f) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (i) os << ',';
        os << f.coeffs[i].get_str();
    }
    if (f.coeffs.empty()) os << '0';
    os << ']';
    return os.str();
}

std::string to_string(const FactoredPoly& f) {
    std::ostringstream os;
    if (f.leading != 1) os << f.leading.get_str() << '*';
    for (const auto& fac : f.factors) {
        os << "(X";
        if (fac.root > 0)
            os << '-' << fac.root.get_str();
        else if (fac.root < 0)
            os << '+' << mpz_class(-fac.root).get_str();
        os << ')';
        if (fac.multiplicity > 1) os << '^' << fac.multiplicity;
    }
    if (!f.cofactor.is_zero() && f.cofactor != DensePoly::constant(1)) os << " * " << to_string(f.cofactor);
    return os.str();
}

} // namespace pqs
