#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "wloop/lattice.hpp"
#include "wloop/loop_ops.hpp"

namespace wloop {

enum class MoveKind { DeformPos, DeformNeg, SplitPos, SplitNeg };

// One string move on loop `loop` of the current sequence. Locations index the canonical
// representative of that loop; the plaquette is given in the same coordinates.
struct Move {
    MoveKind kind = MoveKind::DeformNeg;
    std::size_t loop = 0;
    Location x;
    Location y;           // splits only
    Plaquette plaquette;  // deformations only

    bool is_deformation() const { return kind == MoveKind::DeformPos || kind == MoveKind::DeformNeg; }
};

// The moved loop is replaced, in place, by its non-null results.
LoopSequence apply_move(const LoopSequence& s, const Move& m);

// One move per line, '#' comments:
//   DEF+ loop=0 loc=3 plq=(0,1)@(0,0)+
//   DEF- loop=0 loc=5 plq=(0,1)@(0,0)+
//   SPLIT+ loop=0 x=2 y=7
//   SPLIT- loop=1 x=0 y=4
// plq=(a,b)@corner[+-] names the plaquette on axes a, b (0-based) at `corner`.
std::vector<Move> parse_trajectory(std::string_view text, int dim);
std::string format_move(const Move& m);

enum class Color { Blue, Red };

// Unreduced closed walk built backwards from a vanishing trajectory. Blue entries embed the
// root walk in order; the partner relation pairs each entry with an inverse entry and is
// non-crossing; origin is the move that introduced a red entry (-1 for blue).
struct AuditedWalk {
    Site basepoint;
    std::vector<Step> steps;
    std::vector<Color> colors;
    std::vector<std::size_t> partner;
    std::vector<int> origin;
    std::size_t deformations = 0;

    ClosedWalk walk() const { return {basepoint, steps}; }
    std::vector<std::size_t> blue_positions() const;
    bool partners_are_inverse() const;
    bool pairing_noncrossing() const;
};

// Throws InvalidArgument if a move does not apply or the trajectory does not end at the null
// sequence.
AuditedWalk build_audited_walk(const ClosedWalk& root, const std::vector<Move>& trajectory);

struct SingletonAudit {
    std::size_t filtered = 0;    // blue entries whose edge is in the filter
    std::size_t singletons = 0;  // ... whose partner is not
    std::size_t deformations = 0;
    bool bound_holds = false;       // singletons <= deformations
    bool distinct_sources = false;  // partners of singletons are red and come from distinct moves
    std::vector<std::size_t> singleton_positions;
};

// Restrict the pairing to blue entries lying on the given edges (either direction). An empty
// filter means every blue entry.
SingletonAudit audit_singletons(const AuditedWalk& w, const std::vector<DirectedEdge>& filter);

}  // namespace wloop
