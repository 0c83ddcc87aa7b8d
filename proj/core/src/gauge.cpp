#include "wloop/gauge.hpp"

#include <algorithm>
#include <map>

#include "wloop/errors.hpp"

namespace wloop {

std::vector<FaceLetter> edge_word(const DirectedEdge& e) {
    if (e.tail.dim() != 2) throw Unsupported("axial gauge words are defined for d = 2 only");
    std::vector<FaceLetter> r;
    DirectedEdge p = e.positive();
    if (p.step.axis() != 0) return r;
    const int i = p.tail[0], j = p.tail[1];
    if (j > 0)
        for (int h = 0; h < j; ++h) r.push_back({Site{i, h}, 1});
    else
        for (int h = -1; h >= j; --h) r.push_back({Site{i, h}, -1});
    if (!e.positively_oriented()) {
        std::vector<FaceLetter> inv;
        for (auto it = r.rbegin(); it != r.rend(); ++it) inv.push_back({it->first, -it->second});
        return inv;
    }
    return r;
}

namespace {

// The trace only sees the conjugacy class, so fold the ends of the word together too.
FreeWord cyclically_reduced(FreeWord w) {
    w = w.reduced();
    while (w.size() >= 2 && w.letters.front().gen == w.letters.back().gen) {
        w.letters.front().exp += w.letters.back().exp;
        w.letters.pop_back();
        if (w.letters.front().exp == 0) w.letters.erase(w.letters.begin());
        w = w.reduced();
    }
    return w;
}

}  // namespace

GaugeWord loop_to_word(const ClosedWalk& w) {
    if (w.dim() != 2) throw Unsupported("axial gauge words are defined for d = 2 only");
    if (!w.is_closed()) throw InvalidArgument("walk is not closed");
    std::vector<Site> faces;
    std::map<Site, int> id;
    FreeWord raw;
    for (const auto& e : w.edges()) {
        for (const auto& [face, ex] : edge_word(e)) {
            auto it = id.find(face);
            if (it == id.end()) {
                it = id.emplace(face, static_cast<int>(faces.size())).first;
                faces.push_back(face);
            }
            raw.letters.push_back({it->second, ex});
        }
    }
    // renumber the generators that survive reduction
    GaugeWord g;
    std::map<int, int> renum;
    for (auto l : cyclically_reduced(raw).letters) {
        auto [it, fresh] = renum.emplace(l.gen, static_cast<int>(g.faces.size()));
        if (fresh) g.faces.push_back(faces[static_cast<std::size_t>(l.gen)]);
        g.word.letters.push_back({it->second, l.exp});
    }
    return g;
}

GaugeWord loop_to_word(const Loop& l) { return loop_to_word(l.walk()); }

long degree_bound(const Loop& l) {
    // Every vertical placement gives a valid bound; the shortest word is found with the x-axis
    // somewhere inside the loop's height range.
    ClosedWalk w = l.walk();
    int top = 0;
    for (const auto& s : w.sites()) top = std::max(top, s[1]);
    long best = loop_to_word(w).word.total_degree();
    for (int dy = 1; dy <= top; ++dy) best = std::min(best, loop_to_word(translate(w, Site{0, -dy})).word.total_degree());
    return best;
}

BetaPolynomial gauge_polynomial(const Loop& l, CumulantTable& table, std::size_t max_letters) {
    return word_moment(loop_to_word(l).word, table, max_letters);
}

}  // namespace wloop
