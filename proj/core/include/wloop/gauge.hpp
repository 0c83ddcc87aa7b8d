#pragma once

#include <utility>
#include <vector>

#include "wloop/freeprob.hpp"
#include "wloop/lattice.hpp"

namespace wloop {

// Axial gauge in the plane: vertical edges and edges on the x-axis carry the identity, and the
// plaquette variables q_f (f = lower-left corner of a face) are independent. A horizontal edge
// above the axis is the product of the faces beneath it, bottom to top; below the axis it is
// the product of inverse faces above it, top to bottom.
using FaceLetter = std::pair<Site, int>;

std::vector<FaceLetter> edge_word(const DirectedEdge& e);

struct GaugeWord {
    FreeWord word;            // cyclically reduced
    std::vector<Site> faces;  // generator id -> face corner
};

GaugeWord loop_to_word(const ClosedWalk& w);
GaugeWord loop_to_word(const Loop& l);

// Largest power of beta that can appear: smallest total exponent magnitude of the reduced word
// over vertical placements of the loop.
long degree_bound(const Loop& l);

BetaPolynomial gauge_polynomial(const Loop& l, CumulantTable& table, std::size_t max_letters = kDefaultNcBound);

}  // namespace wloop
