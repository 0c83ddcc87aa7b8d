#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wloop/lattice.hpp"

namespace wloop {

// Index into a loop's stored (canonical) representative.
struct Location {
    std::size_t index = 0;
    auto operator<=>(const Location&) const = default;
};

struct EdgeLocations {
    std::vector<Location> same;      // A: occurrences of e
    std::vector<Location> reversed;  // B: occurrences of e^-1
    std::size_t multiplicity() const { return same.size() + reversed.size(); }
};

EdgeLocations locations_of(const Loop& l, const DirectedEdge& e);

// Positively oriented plaquettes containing e: 2(d-1) of them.
std::vector<Plaquette> plaquettes_containing(const DirectedEdge& e);

Loop deform_neg(const Loop& l, Location x, const Plaquette& p);
Loop deform_pos(const Loop& l, Location x, const Plaquette& p);
std::pair<Loop, Loop> split_pos(const Loop& l, Location x, Location y);
std::pair<Loop, Loop> split_neg(const Loop& l, Location x, Location y);

namespace detail {

// The plaquette next to an edge of axis a, described by the other axis b and the side
// sigma = +-1 on which it lies (in the b direction).
struct Side {
    int axis = 1;
    int sigma = 1;
    auto operator<=>(const Side&) const = default;
};

Side side_of(const DirectedEdge& e, const Plaquette& p);  // throws if e is not on p
Plaquette plaquette_of(const DirectedEdge& e, Side s);
std::vector<Side> sides_around(int axis, int dim);

// Walk-level moves on step codes, before backtrack erasure. Lengths: neg +2, pos +4.
std::string deform_neg_word(std::string_view w, std::size_t x, Side s);
std::string deform_pos_word(std::string_view w, std::size_t x, Side s);
// x < y. pos: [x, y) and [y, n) + [0, x). neg: (x, y) and (y, n) + [0, x).
std::pair<std::string, std::string> split_pos_word(std::string_view w, std::size_t x, std::size_t y);
std::pair<std::string, std::string> split_neg_word(std::string_view w, std::size_t x, std::size_t y);

}  // namespace detail

}  // namespace wloop
