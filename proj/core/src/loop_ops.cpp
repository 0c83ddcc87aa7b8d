#include "wloop/loop_ops.hpp"

#include <algorithm>

#include "wloop/detail/words.hpp"
#include "wloop/errors.hpp"

namespace wloop {

namespace detail {

Side side_of(const DirectedEdge& e, const Plaquette& p) {
    if (!p.contains(e)) throw InvalidArgument("edge is not an edge of the plaquette");
    int a = e.step.axis();
    int b = p.axis_lo == a ? p.axis_hi : p.axis_lo;
    int base = std::min(e.tail[b], e.head()[b]);
    return {b, p.corner[b] == base ? 1 : -1};
}

Plaquette plaquette_of(const DirectedEdge& e, Side s) {
    DirectedEdge pe = e.positive();
    Site corner = pe.tail;
    if (s.sigma < 0) corner[s.axis] -= 1;
    return make_plaquette(corner, pe.step.axis(), s.axis, 1);
}

std::vector<Side> sides_around(int axis, int dim) {
    std::vector<Side> r;
    for (int b = 0; b < dim; ++b) {
        if (b == axis) continue;
        r.push_back({b, 1});
        r.push_back({b, -1});
    }
    return r;
}

namespace {

inline char code(int axis, int sign) { return static_cast<char>(Step(axis, sign).code()); }

}  // namespace

// e -> q, the other three sides of the plaquette from tail(e) to head(e).
std::string deform_neg_word(std::string_view w, std::size_t x, Side s) {
    Step e = Step::from_code(static_cast<unsigned char>(w[x]));
    std::string out;
    out.reserve(w.size() + 2);
    out.append(w.substr(0, x));
    out.push_back(code(s.axis, s.sigma));
    out.push_back(static_cast<char>(e.code()));
    out.push_back(code(s.axis, -s.sigma));
    out.append(w.substr(x + 1));
    return out;
}

// e -> e (q^-1) e: go around the plaquette backwards and traverse e again.
std::string deform_pos_word(std::string_view w, std::size_t x, Side s) {
    Step e = Step::from_code(static_cast<unsigned char>(w[x]));
    std::string out;
    out.reserve(w.size() + 4);
    out.append(w.substr(0, x + 1));
    out.push_back(code(s.axis, s.sigma));
    out.push_back(static_cast<char>(e.reversed().code()));
    out.push_back(code(s.axis, -s.sigma));
    out.push_back(static_cast<char>(e.code()));
    out.append(w.substr(x + 1));
    return out;
}

std::pair<std::string, std::string> split_pos_word(std::string_view w, std::size_t x, std::size_t y) {
    std::string first(w.substr(x, y - x));
    std::string second(w.substr(y));
    second.append(w.substr(0, x));
    return {first, second};
}

std::pair<std::string, std::string> split_neg_word(std::string_view w, std::size_t x, std::size_t y) {
    std::string first(w.substr(x + 1, y - x - 1));
    std::string second(w.substr(y + 1));
    second.append(w.substr(0, x));
    return {first, second};
}

}  // namespace detail

EdgeLocations locations_of(const Loop& l, const DirectedEdge& e) {
    if (e.tail.dim() != l.dim()) throw InvalidArgument("edge and loop dimensions differ");
    EdgeLocations r;
    auto edges = l.walk().edges();
    DirectedEdge re = e.reversed();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i] == e) r.same.push_back({i});
        else if (edges[i] == re) r.reversed.push_back({i});
    }
    return r;
}

std::vector<Plaquette> plaquettes_containing(const DirectedEdge& e) {
    check_dim(e.tail.dim());
    std::vector<Plaquette> r;
    for (auto s : detail::sides_around(e.step.axis(), e.tail.dim())) r.push_back(detail::plaquette_of(e, s));
    return r;
}

namespace {

void check_location(const Loop& l, Location x) {
    if (x.index >= l.size()) throw InvalidArgument("location " + std::to_string(x.index) + " out of range for loop of length " + std::to_string(l.size()));
}

void check_plaquette(const Loop& l, const Plaquette& p) {
    if (p.corner.dim() != l.dim()) throw InvalidArgument("plaquette and loop dimensions differ");
}

Loop make(int dim, const std::string& w) { return Loop::from_canonical_codes(dim, detail::canonical_loop_codes(w)); }

}  // namespace

Loop deform_neg(const Loop& l, Location x, const Plaquette& p) {
    check_location(l, x);
    check_plaquette(l, p);
    auto s = detail::side_of(l.edge(x.index), p);
    return make(l.dim(), detail::deform_neg_word(l.codes(), x.index, s));
}

Loop deform_pos(const Loop& l, Location x, const Plaquette& p) {
    check_location(l, x);
    check_plaquette(l, p);
    auto s = detail::side_of(l.edge(x.index), p);
    return make(l.dim(), detail::deform_pos_word(l.codes(), x.index, s));
}

std::pair<Loop, Loop> split_pos(const Loop& l, Location x, Location y) {
    check_location(l, x);
    check_location(l, y);
    if (x == y) throw InvalidArgument("split needs two distinct locations");
    if (l.edge(x.index) != l.edge(y.index)) throw InvalidArgument("positive split needs two occurrences of the same directed edge");
    auto [a, b] = detail::split_pos_word(l.codes(), std::min(x.index, y.index), std::max(x.index, y.index));
    if (x.index > y.index) std::swap(a, b);
    return {make(l.dim(), a), make(l.dim(), b)};
}

std::pair<Loop, Loop> split_neg(const Loop& l, Location x, Location y) {
    check_location(l, x);
    check_location(l, y);
    if (x == y) throw InvalidArgument("split needs two distinct locations");
    if (l.edge(x.index) != l.edge(y.index).reversed()) throw InvalidArgument("negative split needs an edge and its reverse");
    auto [a, b] = detail::split_neg_word(l.codes(), std::min(x.index, y.index), std::max(x.index, y.index));
    if (x.index > y.index) std::swap(a, b);
    return {make(l.dim(), a), make(l.dim(), b)};
}

}  // namespace wloop
