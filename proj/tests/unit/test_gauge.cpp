#include <doctest.h>

#include "support.hpp"
#include "wloop/gauge.hpp"
#include "wloop/loop_text.hpp"

using namespace wloop;

TEST_CASE("edge words in axial gauge") {
    auto up = edge_word(DirectedEdge{Site{3, 2}, Step(0, 1)});
    REQUIRE(up.size() == 2);
    CHECK(up[0] == FaceLetter{Site{3, 0}, 1});
    CHECK(up[1] == FaceLetter{Site{3, 1}, 1});
    auto down = edge_word(DirectedEdge{Site{3, -2}, Step(0, 1)});
    REQUIRE(down.size() == 2);
    CHECK(down[0] == FaceLetter{Site{3, -1}, -1});
    CHECK(down[1] == FaceLetter{Site{3, -2}, -1});
    CHECK(edge_word(DirectedEdge{Site{0, 0}, Step(0, 1)}).empty());
    CHECK(edge_word(DirectedEdge{Site{5, 4}, Step(1, -1)}).empty());
    // reversing an edge inverts its word
    DirectedEdge e{Site{1, 3}, Step(0, 1)};
    auto f = edge_word(e), r = edge_word(e.reversed());
    REQUIRE(f.size() == r.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(r[i].first == f[f.size() - 1 - i].first);
        CHECK(r[i].second == -f[f.size() - 1 - i].second);
    }
}

TEST_CASE("plaquette and rectangle words") {
    GaugeWord p = loop_to_word(parse_walk("@(2,5) y+ x+ y- x-", 2));
    REQUIRE(p.word.size() == 1);
    CHECK(std::abs(p.word.letters[0].exp) == 1);
    CHECK(p.faces[static_cast<std::size_t>(p.word.letters[0].gen)] == Site{2, 5});
    GaugeWord r = loop_to_word(parse_loop("rect 2 2", 2));
    CHECK(r.word.size() == 4);
    CHECK(r.faces.size() == 4);
    CHECK(degree_bound(parse_loop("rect 2 2", 2)) == 4);
    CHECK(loop_to_word(parse_loop("commutator 1", 2)).word.size() == 4);
    CHECK(degree_bound(parse_loop("wrap 3", 2)) == 3);
    CHECK(degree_bound(parse_loop("@(0,7) y+ x+ y- x-", 2)) == 1);
}

TEST_CASE("gauge polynomial does not depend on where the loop sits") {
    CumulantTable t;
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> shift(-4, 4);
    for (const auto& l : testing::random_loops(30, 10, 66)) {
        BetaPolynomial p = gauge_polynomial(l, t, 64);
        for (int i = 0; i < 3; ++i) {
            ClosedWalk w = translate(l.walk(), Site{shift(rng), shift(rng)});
            CHECK(word_moment(loop_to_word(w).word, t, 64) == p);
        }
        CHECK(gauge_polynomial(reversed(l), t, 64) == p);
        CHECK(p.degree() <= degree_bound(l));
    }
}

TEST_CASE("simple loops give beta to the area") {
    CumulantTable t;
    for (const char* s : {"rect 1 1", "rect 3 2", "x+ x+ y+ x- y+ x- y- y-", "tree [(1,1,1),(1,0,1)]"}) {
        Loop l = parse_loop(s, 2);
        CHECK(gauge_polynomial(l, t) == BetaPolynomial::monomial(static_cast<int>(area(l))));
    }
}

TEST_CASE("gauge words are cyclically reduced") {
    CumulantTable t;
    for (const auto& l : testing::random_loops(40, 12, 67)) {
        for (int dy : {-3, 0, 4}) {
            FreeWord w = loop_to_word(translate(l.walk(), Site{1, dy})).word;
            CHECK(w == w.reduced());
            if (w.size() >= 2) CHECK(w.letters.front().gen != w.letters.back().gen);
            CHECK(w.total_degree() >= degree_bound(l));
        }
    }
}
