#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

#include "wloop/lattice.hpp"
#include "wloop/polynomial.hpp"

namespace wloop {

// Which edge of the first loop the recursion is rooted at. Any choice gives the same
// coefficients; the policy only changes cost.
enum class EdgePolicy {
    LexMin,             // smallest undirected edge (min endpoint, then axis)
    TopmostHorizontal,  // highest x-edge, leftmost on ties; LexMin if there is none
    SeededRandom,       // a fixed pseudo-random edge per (loop, seed)
};

std::string to_string(EdgePolicy p);
EdgePolicy parse_edge_policy(const std::string& s);

struct SolverBudget {
    std::size_t max_memo_entries = 40'000'000;
    std::size_t max_depth = 200'000;
    double max_seconds = 0;  // wall clock per top-level call, 0 = unlimited
};

struct SolverConfig {
    int dim = 2;
    EdgePolicy policy = EdgePolicy::LexMin;
    std::uint64_t seed = 0;
    // Skip states whose coefficient is forced to zero: k below the summed deformation lower
    // bound, or (for planar data) k of the wrong parity. Off means every state is expanded.
    bool area_pruning = true;
    // Assert that every child state has a smaller (k, length multiset) measure.
    bool check_termination = false;
    SolverBudget budget;
};

struct SolverStats {
    std::size_t memo_entries = 0;
    std::size_t memo_hits = 0;
    std::size_t expansions = 0;
    std::size_t pruned = 0;
    std::size_t max_depth = 0;
    double seconds = 0;
};

class MleSolver {
public:
    explicit MleSolver(SolverConfig cfg = {});
    ~MleSolver();
    MleSolver(MleSolver&&) noexcept;
    MleSolver& operator=(MleSolver&&) noexcept;

    Rational coefficient(const LoopSequence& s, int k);
    Rational coefficient(const Loop& l, int k);
    BetaPolynomial polynomial(const LoopSequence& s, int k_max);
    BetaPolynomial polynomial(const Loop& l, int k_max);

    DirectedEdge rooted_edge(const Loop& l) const;

    const SolverConfig& config() const;
    const SolverStats& stats() const;
    void clear();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct PolynomialReport {
    BetaPolynomial poly;
    int k_max = 0;
    long degree_bound = -1;  // -1 when unknown (d >= 3)
    bool complete = false;   // degree_bound <= k_max, so no coefficient was cut off
};

// polynomial() plus the gauge-side degree bound certificate in d = 2.
PolynomialReport solve_polynomial(MleSolver& solver, const LoopSequence& s, int k_max);

}  // namespace wloop
