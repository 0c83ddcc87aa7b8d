#include <doctest.h>

#include <cmath>
#include <set>

#include "support.hpp"
#include "wloop/errors.hpp"
#include "wloop/freeprob.hpp"

using namespace wloop;
using wloop::testing::for_each_set_partition;
using wloop::testing::from_labels;
using wloop::testing::labels_noncrossing;

namespace {

std::vector<NCPartition> brute_nc(int n) {
    std::vector<NCPartition> r;
    for_each_set_partition(n, [&](const std::vector<int>& a) {
        if (labels_noncrossing(a)) r.push_back(from_labels(a));
    });
    return r;
}

// K(pi) by definition: among sigma in NC(n) with pi and sigma together non-crossing on
// 1 1' 2 2' ..., the coarsest.
NCPartition brute_kreweras(const NCPartition& pi) {
    int n = pi.n();
    NCPartition best;
    std::size_t best_blocks = static_cast<std::size_t>(n) + 1;
    for (const auto& s : brute_nc(n)) {
        std::vector<int> lab(static_cast<std::size_t>(2 * n));
        for (int i = 0; i < n; ++i) {
            lab[static_cast<std::size_t>(2 * i)] = pi.block_of(i);
            lab[static_cast<std::size_t>(2 * i + 1)] = n + s.block_of(i);
        }
        if (labels_noncrossing(lab) && s.num_blocks() < best_blocks) {
            best = s;
            best_blocks = s.num_blocks();
        }
    }
    return best;
}

Rational poset_mobius(const NCPartition& lo, const NCPartition& hi, const std::vector<NCPartition>& all) {
    if (lo == hi) return 1;
    Rational s = 0;
    for (const auto& p : all)
        if (lo.refines(p) && p.refines(hi) && !(p == hi)) s -= poset_mobius(lo, p, all);
    return s;
}

// phi(word) summed directly over NC(n) with one-generator blocks.
BetaPolynomial brute_word_moment(const FreeWord& w, CumulantTable& t) {
    BetaPolynomial sum;
    for (const auto& p : brute_nc(static_cast<int>(w.size()))) {
        BetaPolynomial term = BetaPolynomial::monomial(0);
        bool ok = true;
        for (const auto& b : p.blocks()) {
            std::vector<int> e;
            for (int i : b) {
                if (w.letters[static_cast<std::size_t>(i)].gen != w.letters[static_cast<std::size_t>(b[0])].gen) ok = false;
                e.push_back(w.letters[static_cast<std::size_t>(i)].exp);
            }
            if (!ok) break;
            term = term * t.cumulant(e);
        }
        if (ok) sum += term;
    }
    return sum;
}

}  // namespace

TEST_CASE("free words") {
    FreeWord w{{{0, 1}, {1, 2}, {1, -2}, {0, 1}, {2, 0}}};
    CHECK(w.reduced() == FreeWord{{{0, 2}}});
    CHECK((w * w.inverse()).reduced().size() == 0);
    FreeWord c{{{0, 1}, {1, 1}, {0, -1}, {1, -1}}};
    CHECK(c.power(3).size() == 12);
    CHECK(c.power(3).total_degree() == 12);
    CHECK(c.power(0).size() == 0);
    CHECK(c.power(-1) == c.inverse());
}

TEST_CASE("non-crossing partitions match brute force") {
    for (int n = 0; n <= 8; ++n) {
        auto a = enumerate_nc(n);
        auto b = brute_nc(n);
        std::set<NCPartition> sa(a.begin(), a.end()), sb(b.begin(), b.end());
        CHECK(sa == sb);
        CHECK(a.size() == sa.size());
        CHECK(a.size() == catalan(static_cast<unsigned>(n)).get_ui());
    }
    int crossing = 0;
    for_each_set_partition(6, [&](const std::vector<int>& lab) {
        NCPartition p = from_labels(lab);
        CHECK(p.is_noncrossing() == labels_noncrossing(lab));
        crossing += !p.is_noncrossing();
    });
    CHECK(crossing == 203 - 132);
    CHECK_THROWS_AS(enumerate_nc(15), InvalidArgument);
}

TEST_CASE("partition basics") {
    NCPartition p(4, {{2, 0}, {3}, {1}});
    CHECK(p.to_string() == "{1,3}{2}{4}");
    CHECK(p.block_of(2) == p.block_of(0));
    CHECK(NCPartition::zero(3).refines(NCPartition::one(3)));
    CHECK_FALSE(NCPartition::one(3).refines(NCPartition::zero(3)));
    CHECK(p.is_noncrossing());
    CHECK_FALSE(NCPartition(4, {{0, 2}, {1, 3}}).is_noncrossing());
    CHECK_THROWS_AS(NCPartition(3, {{0, 1}}), InvalidArgument);
    CHECK_THROWS_AS(NCPartition(3, {{0, 1}, {1, 2}}), InvalidArgument);
}

TEST_CASE("Kreweras complement") {
    CHECK(kreweras(NCPartition(4, {{0, 1}, {2, 3}})).to_string() == "{1}{2,4}{3}");
    CHECK(kreweras(NCPartition::zero(4)) == NCPartition::one(4));
    CHECK(kreweras(NCPartition::one(4)) == NCPartition::zero(4));
    for (int n = 1; n <= 6; ++n) {
        for (const auto& p : enumerate_nc(n)) {
            NCPartition k = kreweras(p);
            CHECK(k.is_noncrossing());
            CHECK(p.num_blocks() + k.num_blocks() == static_cast<std::size_t>(n) + 1);
            CHECK(k == brute_kreweras(p));
        }
    }
}

TEST_CASE("Mobius function") {
    CHECK(mobius_from_zero(NCPartition::one(3)) == 2);
    CHECK(mobius_from_zero(NCPartition::zero(3)) == 1);
    CHECK(mobius_from_zero(NCPartition(4, {{0, 1}, {2, 3}})) == 1);
    for (int n = 1; n <= 7; ++n)
        CHECK(mobius_from_zero(NCPartition::one(n)) == (n % 2 ? 1 : -1) * Rational(catalan(static_cast<unsigned>(n - 1))));
    for (int n = 1; n <= 5; ++n) {
        auto all = enumerate_nc(n);
        for (const auto& lo : all)
            for (const auto& hi : all)
                if (lo.refines(hi)) CHECK(mobius(lo, hi) == poset_mobius(lo, hi, all));
    }
    CHECK_THROWS_AS(mobius(NCPartition::one(3), NCPartition::zero(3)), InvalidArgument);
}

TEST_CASE("single variable cumulants satisfy the moment-cumulant relation") {
    CumulantTable t;
    CHECK(t.cumulant({1}) == BetaPolynomial::monomial(1));
    CHECK(t.cumulant({1, -1}) == BetaPolynomial({1, 0, -1}));
    CHECK(t.cumulant({1, 1}) == BetaPolynomial({0, 0, -1}));
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> ex(-2, 2);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<int> e;
        int r = 1 + trial % 6;
        for (int i = 0; i < r; ++i) {
            int v = 0;
            while (v == 0) v = ex(rng);
            e.push_back(v);
        }
        BetaPolynomial sum;
        for (const auto& p : enumerate_nc(r)) {
            BetaPolynomial term = BetaPolynomial::monomial(0);
            for (const auto& b : p.blocks()) {
                std::vector<int> sub;
                for (int i : b) sub.push_back(e[static_cast<std::size_t>(i)]);
                term = term * t.cumulant(sub);
            }
            sum += term;
        }
        long total = 0;
        for (int v : e) total += v;
        CHECK(sum == single_variable_moment(total));
    }
}

TEST_CASE("word moments agree with the direct NC sum") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> gen(0, 2), ex(-1, 1);
    CumulantTable t;
    for (int trial = 0; trial < 80; ++trial) {
        FreeWord w;
        int n = 1 + trial % 8;
        for (int i = 0; i < n; ++i) {
            int e = 0;
            while (e == 0) e = ex(rng);
            w.letters.push_back({gen(rng), e});
        }
        CHECK(word_moment(w, t) == brute_word_moment(w, t));
    }
    FreeWord c{{{0, 1}, {1, 1}, {0, -1}, {1, -1}}};
    CHECK(word_moment(c) == BetaPolynomial({0, 0, 2, 0, -1}));
    CHECK(word_moment(FreeWord{}) == BetaPolynomial::monomial(0));
    CHECK(word_moment(FreeWord{{{0, 1}, {1, 1}}}) == BetaPolynomial::monomial(2));
    CHECK_THROWS_AS(word_moment(c.power(4), 14), InvalidArgument);
}

TEST_CASE("word moments are invariant under cyclic rotation and inversion of exponents") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> gen(0, 1), ex(-2, 2);
    CumulantTable t;
    for (int trial = 0; trial < 40; ++trial) {
        FreeWord w;
        for (int i = 0; i < 7; ++i) {
            int e = 0;
            while (e == 0) e = ex(rng);
            w.letters.push_back({gen(rng), e});
        }
        BetaPolynomial m = word_moment(w, t);
        FreeWord r = w;
        std::rotate(r.letters.begin(), r.letters.begin() + 3, r.letters.end());
        CHECK(word_moment(r, t) == m);
        CHECK(word_moment(w.inverse(), t) == m);
    }
}

TEST_CASE("spectral moments match the density integral") {
    for (double beta : {0.0, 0.15, 0.4}) {
        for (int k = 0; k <= 6; ++k) {
            const int n = 2000;
            double s = 0;
            for (int i = 0; i < n; ++i) {
                double th = -M_PI + (i + 0.5) * 2 * M_PI / n;
                s += std::pow(std::cos(th), k) * (1 + 2 * beta * std::cos(th)) / (2 * M_PI) * (2 * M_PI / n);
            }
            CHECK(spectral_moment(k).evaluate(beta) == doctest::Approx(s).epsilon(1e-9));
        }
    }
    CHECK(spectral_moment(3) == BetaPolynomial({0, Rational(3, 4)}));
}

TEST_CASE("univariate moment and cumulant transforms") {
    std::vector<Rational> semicircle(8, 0);
    semicircle[1] = 1;
    auto m = moments_from_cumulants(semicircle);
    for (int k = 1; k <= 8; ++k) CHECK(m[static_cast<std::size_t>(k - 1)] == (k % 2 ? 0 : catalan(static_cast<unsigned>(k / 2)).get_si()));
    std::vector<Rational> ones(6, 1);
    CHECK(cumulants_from_moments(moments_from_cumulants(ones)) == ones);
    // free Poisson with rate 1: all cumulants 1, moments are Catalan numbers
    auto mp = moments_from_cumulants(ones);
    for (int k = 1; k <= 6; ++k) CHECK(mp[static_cast<std::size_t>(k - 1)] == catalan(static_cast<unsigned>(k)).get_si());
}
