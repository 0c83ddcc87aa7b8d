#pragma once

#include <string>
#include <string_view>

#include "wloop/lattice.hpp"

namespace wloop {

// Loop grammar:
//   walk     := ['@(' int {',' int} ')'] {step}
//   step     := axis ('+'|'-')          axis in x y z w, or a1 .. ad
//   macro    := 'rect' W H | 'wrap' K | 'commutator' K | 'tree' '[' (g,k,s) {',' (g,k,s)} ']' | 'null'
//   sequence := loop {';' loop}
// Macros are anchored at the origin and live in the (x, y) plane.
ClosedWalk parse_walk(std::string_view text, int dim);  // not required to be closed
Loop parse_loop(std::string_view text, int dim);
LoopSequence parse_sequence(std::string_view text, int dim);
DecoratedTree parse_tree(std::string_view text);
DirectedEdge parse_edge(std::string_view text, int dim);  // "@(1,0) y+"

std::string axis_name(int axis, int dim);
std::string format_step(Step s, int dim);
std::string format_steps(const std::vector<Step>& steps, int dim);
std::string format_walk(const ClosedWalk& w);  // with explicit basepoint
std::string format_loop(const Loop& l);        // canonical steps, "null" for the null loop
std::string format_sequence(const LoopSequence& s, int dim);
std::string format_site(const Site& s);
std::string format_edge(const DirectedEdge& e);
std::string format_tree(const DecoratedTree& t);

ClosedWalk rect_walk(int w, int h, int dim = 2);
ClosedWalk wrap_walk(int k, int dim = 2);
ClosedWalk commutator_walk(int k, int dim = 2);

}  // namespace wloop
