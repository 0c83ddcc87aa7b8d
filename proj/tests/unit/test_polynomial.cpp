#include <doctest.h>

#include "wloop/errors.hpp"
#include "wloop/polynomial.hpp"

using namespace wloop;

TEST_CASE("rationals") {
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-7") == -7);
    CHECK(to_string(Rational(-3, 6)) == "-1/2");
    CHECK(to_string(Rational(4, 2)) == "2");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("polynomial arithmetic") {
    BetaPolynomial b = BetaPolynomial::monomial(1);
    BetaPolynomial one = BetaPolynomial::monomial(0);
    BetaPolynomial p = (one - b) * (one + b);
    CHECK(p == BetaPolynomial({1, 0, -1}));
    CHECK(p.degree() == 2);
    CHECK((p - p).is_zero());
    CHECK((p - p).degree() == -1);
    CHECK(p.coeff(7) == 0);
    CHECK(p.truncated(1) == one);
    CHECK(p.evaluate(0.5) == doctest::Approx(0.75));
    CHECK((p * Rational(1, 2)).coeff(2) == Rational(-1, 2));
    BetaPolynomial q;
    q.set_coeff(3, 0);
    CHECK(q.is_zero());
    q.set_coeff(3, 2);
    CHECK(q.degree() == 3);
}

TEST_CASE("polynomial text") {
    BetaPolynomial p({0, 0, 2, 0, -1});
    CHECK(p.to_string(true) == "2*b^2 - b^4");
    CHECK(p.to_string() == "2*β^2 - β^4");
    CHECK(BetaPolynomial().to_string(true) == "0");
    CHECK(BetaPolynomial({Rational(1, 3), 1}).to_string(true) == "1/3 + b");
    auto m = p.to_map();
    CHECK(m.size() == 2);
    CHECK(m[4] == "-1");
}

TEST_CASE("binomials and Catalan numbers") {
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(3, 5) == 0);
    const unsigned long cat[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
    for (unsigned n = 0; n <= 10; ++n) CHECK(catalan(n) == cat[n]);
}
