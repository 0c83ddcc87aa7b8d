#include "wloop/polynomial.hpp"

#include "wloop/errors.hpp"

namespace wloop {

Rational parse_rational(const std::string& s) {
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0) throw ParseError("invalid rational '" + s + "'", 0);
    if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", 0);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return c.get_str();
}

BetaPolynomial::BetaPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

BetaPolynomial BetaPolynomial::monomial(int degree, Rational c) {
    BetaPolynomial p;
    p.set_coeff(degree, c);
    return p;
}

void BetaPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational BetaPolynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<std::size_t>(k)];
}

void BetaPolynomial::set_coeff(int k, const Rational& v) {
    if (k < 0) throw InvalidArgument("negative power of beta");
    if (k >= static_cast<int>(c_.size())) {
        if (v == 0) return;
        c_.resize(static_cast<std::size_t>(k) + 1);
    }
    c_[static_cast<std::size_t>(k)] = v;
    trim();
}

BetaPolynomial BetaPolynomial::truncated(int k_max) const {
    BetaPolynomial p = *this;
    if (k_max + 1 < static_cast<int>(p.c_.size())) p.c_.resize(static_cast<std::size_t>(std::max(k_max + 1, 0)));
    p.trim();
    return p;
}

double BetaPolynomial::evaluate(double beta) const {
    double r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * beta + it->get_d();
    return r;
}

BetaPolynomial BetaPolynomial::operator+(const BetaPolynomial& o) const {
    BetaPolynomial r = *this;
    r += o;
    return r;
}

BetaPolynomial& BetaPolynomial::operator+=(const BetaPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

BetaPolynomial BetaPolynomial::operator-(const BetaPolynomial& o) const { return *this + o * Rational(-1); }

BetaPolynomial BetaPolynomial::operator*(const BetaPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return BetaPolynomial(std::move(r));
}

BetaPolynomial BetaPolynomial::operator*(const Rational& s) const {
    BetaPolynomial r = *this;
    for (auto& v : r.c_) v *= s;
    r.trim();
    return r;
}

std::string BetaPolynomial::to_string() const { return to_string(false); }

std::string BetaPolynomial::to_string(bool ascii) const {
    if (c_.empty()) return "0";
    const std::string b = ascii ? "b" : "β";
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        const Rational& v = c_[k];
        if (v == 0) continue;
        Rational mag = abs(v);
        if (out.empty())
            out += v < 0 ? "-" : "";
        else
            out += v < 0 ? " - " : " + ";
        bool unit = mag == 1;
        if (k == 0 || !unit) out += mag.get_str();
        if (k > 0) {
            if (!unit) out += "*";
            out += b;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

std::map<int, std::string> BetaPolynomial::to_map() const {
    std::map<int, std::string> m;
    for (std::size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) m[static_cast<int>(k)] = c_[k].get_str();
    return m;
}

mpz_class binomial(unsigned n, unsigned k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

mpz_class catalan(unsigned n) { return binomial(2 * n, n) / (n + 1); }

}  // namespace wloop
