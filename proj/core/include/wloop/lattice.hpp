#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace wloop {

inline constexpr int kMaxDim = 16;

void check_dim(int d);

// Unit step along `axis` (0-based) with sign +1/-1. Packed as code = 2*axis + (sign<0),
// so the lexicographic order on codes is x+ < x- < y+ < y- < ...
class Step {
public:
    constexpr Step() = default;
    constexpr Step(int axis, int sign) : code_(static_cast<unsigned char>(2 * axis + (sign < 0 ? 1 : 0))) {}
    static constexpr Step from_code(unsigned char c) {
        Step s;
        s.code_ = c;
        return s;
    }

    constexpr int axis() const { return code_ >> 1; }
    constexpr int sign() const { return (code_ & 1) ? -1 : 1; }
    constexpr unsigned char code() const { return code_; }
    constexpr Step reversed() const { return from_code(code_ ^ 1); }

    constexpr auto operator<=>(const Step&) const = default;

private:
    unsigned char code_ = 0;
};

class Site {
public:
    Site() = default;
    explicit Site(int dim) : c_(static_cast<std::size_t>(dim), 0) {}
    Site(std::initializer_list<int> c) : c_(c) {}
    explicit Site(std::vector<int> c) : c_(std::move(c)) {}

    int dim() const { return static_cast<int>(c_.size()); }
    int operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& coords() const { return c_; }

    Site moved(Step s) const {
        Site r = *this;
        r.c_[static_cast<std::size_t>(s.axis())] += s.sign();
        return r;
    }
    Site operator+(const Site& o) const;
    Site operator-(const Site& o) const;

    auto operator<=>(const Site&) const = default;

private:
    std::vector<int> c_;
};

struct DirectedEdge {
    Site tail;
    Step step;

    Site head() const { return tail.moved(step); }
    DirectedEdge reversed() const { return {head(), step.reversed()}; }
    bool positively_oriented() const { return step.sign() > 0; }
    // The positively oriented member of {e, e^-1}.
    DirectedEdge positive() const { return positively_oriented() ? *this : reversed(); }
    bool same_undirected(const DirectedEdge& o) const { return positive() == o.positive(); }

    auto operator<=>(const DirectedEdge&) const = default;
};

struct ClosedWalk;

// Unit square at `corner` spanning axes lo < hi. orientation +1 is the positive plaquette:
// (corner, corner+e_hi, corner+e_hi+e_lo, corner+e_lo).
struct Plaquette {
    Site corner;
    int axis_lo = 0;
    int axis_hi = 1;
    int orientation = 1;

    Plaquette reversed() const { return {corner, axis_lo, axis_hi, -orientation}; }
    ClosedWalk boundary() const;
    std::vector<DirectedEdge> edges() const;
    bool contains(const DirectedEdge& e) const;  // e or e^-1 is an edge of the plaquette

    auto operator<=>(const Plaquette&) const = default;
};

Plaquette make_plaquette(const Site& corner, int axis_a, int axis_b, int orientation = 1);

struct ClosedWalk {
    Site basepoint;
    std::vector<Step> steps;

    int dim() const { return basepoint.dim(); }
    std::size_t size() const { return steps.size(); }
    bool is_closed() const;
    bool is_non_backtracking() const;  // cyclically
    std::vector<Site> sites() const;   // size()+1 entries, last == first for closed walks
    DirectedEdge edge(std::size_t i) const;
    std::vector<DirectedEdge> edges() const;

    bool operator==(const ClosedWalk&) const = default;
};

ClosedWalk translate(const ClosedWalk& w, const Site& v);
ClosedWalk rotate(const ClosedWalk& w, std::size_t r);
ClosedWalk reverse(const ClosedWalk& w);
ClosedWalk concat(const ClosedWalk& a, const ClosedWalk& b);

// Non-backtracking closed loop modulo rotation and translation. The stored representative is
// the lexicographically least rotation of the step codes, placed so that the coordinatewise
// minimum of its visited sites is the origin. Default-constructed and `null(d)` are the null loop.
class Loop {
public:
    Loop() : dim_(2) {}
    static Loop null(int dim);
    // `codes` must already be canonical; use canonicalize() otherwise.
    static Loop from_canonical_codes(int dim, std::string codes);

    int dim() const { return dim_; }
    std::size_t size() const { return codes_.size(); }
    bool is_null() const { return codes_.empty(); }
    Step step(std::size_t i) const { return Step::from_code(static_cast<unsigned char>(codes_[i])); }
    std::vector<Step> steps() const;
    const std::string& codes() const { return codes_; }

    Site basepoint() const;
    ClosedWalk walk() const;
    std::vector<Site> sites() const;
    DirectedEdge edge(std::size_t i) const;

    bool operator==(const Loop& o) const { return dim_ == o.dim_ && codes_ == o.codes_; }
    std::strong_ordering operator<=>(const Loop& o) const;

private:
    int dim_;
    std::string codes_;
};

struct LoopHash {
    std::size_t operator()(const Loop& l) const noexcept {
        return std::hash<std::string>{}(l.codes()) ^ static_cast<std::size_t>(l.dim()) * 0x9e3779b97f4a7c15ULL;
    }
};

Loop erase_backtracks(const ClosedWalk& w);
// Precondition: w closed and cyclically non-backtracking (throws InvalidArgument otherwise).
Loop canonicalize(const ClosedWalk& w);
// Reversal is a distinct loop by default; this helper is the only place orientation is flipped.
Loop reversed(const Loop& l);

// Ordered list of non-null loops sharing one dimension.
class LoopSequence {
public:
    LoopSequence() = default;
    explicit LoopSequence(std::vector<Loop> loops);  // nulls dropped

    void push_back(const Loop& l);
    std::size_t size() const { return loops_.size(); }
    bool empty() const { return loops_.empty(); }
    const Loop& operator[](std::size_t i) const { return loops_[i]; }
    const std::vector<Loop>& loops() const { return loops_; }
    auto begin() const { return loops_.begin(); }
    auto end() const { return loops_.end(); }

    bool operator==(const LoopSequence&) const = default;

private:
    std::vector<Loop> loops_;
};

// Integer 1-chain keyed by positively oriented edges.
struct OneChain {
    std::map<DirectedEdge, long> coeff;

    void add(const DirectedEdge& e, long c);
    bool is_zero() const { return coeff.empty(); }
    long l1_norm() const;
    bool operator==(const OneChain&) const = default;
};

OneChain boundary_chain(const ClosedWalk& w);
OneChain boundary_chain(const Loop& l);

// Planar 2-chain: winding number per unit face, keyed by the face's lower-left corner.
struct WindingMap {
    std::map<Site, long> eta;

    long l1_norm() const;
    OneChain boundary() const;
};

WindingMap winding_numbers(const ClosedWalk& w);  // d = 2 only
WindingMap winding_numbers(const Loop& l);

// Minimal L1 norm of a 2-chain bounded by the loop. Exact for d = 2; for d >= 3 only the
// zero-boundary case (area 0) is handled, anything else throws Unsupported.
long area(const Loop& l);

// Lower bound on the number of deformations any vanishing trajectory of `l` needs:
// area in the plane, ceil(|r(l)|_1 / 4) in higher dimension.
long deformation_lower_bound(const Loop& l);

struct TreeLevel {
    int g = 1;
    int k = 0;
    int sigma = 1;
    bool operator==(const TreeLevel&) const = default;
};

struct DecoratedTree {
    std::vector<TreeLevel> levels;

    void validate() const;
    bool is_path() const;
    bool operator==(const DecoratedTree&) const = default;
};

ClosedWalk tree_walk(const DecoratedTree& t, int dim = 2);  // before backtrack erasure, based at origin
Loop tree_to_loop(const DecoratedTree& t, int dim = 2);
long tree_area(const DecoratedTree& t);

// Every valid decorated tree with tree_area <= max_area.
std::vector<DecoratedTree> enumerate_trees(int max_area);

}  // namespace wloop
