#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace wloop {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);  // "p/q" or "p"
std::string to_string(const Rational& r);        // canonical "p/q", "p" when q = 1

// Polynomial in beta with exact rational coefficients; index = power of beta. Trailing zeros trimmed.
class BetaPolynomial {
public:
    BetaPolynomial() = default;
    explicit BetaPolynomial(std::vector<Rational> coeffs);
    static BetaPolynomial monomial(int degree, Rational c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Rational coeff(int k) const;
    void set_coeff(int k, const Rational& v);
    const std::vector<Rational>& coeffs() const { return c_; }

    BetaPolynomial truncated(int k_max) const;
    double evaluate(double beta) const;

    BetaPolynomial operator+(const BetaPolynomial& o) const;
    BetaPolynomial operator-(const BetaPolynomial& o) const;
    BetaPolynomial operator*(const BetaPolynomial& o) const;
    BetaPolynomial operator*(const Rational& s) const;
    BetaPolynomial& operator+=(const BetaPolynomial& o);
    bool operator==(const BetaPolynomial& o) const { return c_ == o.c_; }

    std::string to_string() const;  // "1 - 2*b^2 + 1/3*b^5"-style; uses "β" unless ascii
    std::string to_string(bool ascii) const;
    std::map<int, std::string> to_map() const;  // nonzero coefficients as "p/q" strings

private:
    void trim();
    std::vector<Rational> c_;
};

// Exact binomial and Catalan numbers.
mpz_class binomial(unsigned n, unsigned k);
mpz_class catalan(unsigned n);

}  // namespace wloop
