#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "wloop/polynomial.hpp"

namespace wloop {

struct Letter {
    int gen = 0;
    int exp = 1;
    bool operator==(const Letter&) const = default;
};

// Word in free generators q_0, q_1, ... (each distributed like a single plaquette variable).
struct FreeWord {
    std::vector<Letter> letters;

    FreeWord reduced() const;  // merge equal neighbours, drop zero exponents
    FreeWord inverse() const;
    FreeWord power(int k) const;
    long total_degree() const;  // sum of |exp|
    std::size_t size() const { return letters.size(); }
    bool operator==(const FreeWord&) const = default;
};

FreeWord operator*(const FreeWord& a, const FreeWord& b);

// Set partition of {0..n-1}; blocks sorted internally and by minimum element.
class NCPartition {
public:
    NCPartition() = default;
    NCPartition(int n, std::vector<std::vector<int>> blocks);  // validates cover/disjointness only
    static NCPartition zero(int n);
    static NCPartition one(int n);

    int n() const { return n_; }
    std::size_t num_blocks() const { return blocks_.size(); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int block_of(int i) const { return label_[static_cast<std::size_t>(i)]; }
    bool is_noncrossing() const;
    bool refines(const NCPartition& coarser) const;  // this <= coarser
    std::string to_string() const;                   // 1-based, e.g. {1,2}{3}

    bool operator==(const NCPartition& o) const { return n_ == o.n_ && blocks_ == o.blocks_; }
    bool operator<(const NCPartition& o) const { return blocks_ < o.blocks_; }

private:
    int n_ = 0;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> label_;
};

inline constexpr int kDefaultNcBound = 14;

std::vector<NCPartition> enumerate_nc(int n, int bound = kDefaultNcBound);

// Interleave 1, 1', 2, 2', ..., n, n' (i' right after i); K(pi) is the largest partition of
// the primed points that does not cross pi.
NCPartition kreweras(const NCPartition& pi);

Rational mobius_from_zero(const NCPartition& pi);
Rational mobius(const NCPartition& lo, const NCPartition& hi);  // mu(lo, hi), lo <= hi

// Single plaquette variable: phi(a^m) = 1, beta, 0 for m = 0, |m| = 1, |m| >= 2.
BetaPolynomial single_variable_moment(long m);

// Free cumulants kappa(a^{e_1}, ..., a^{e_r}) of one plaquette variable, memoized by exponent list.
class CumulantTable {
public:
    const BetaPolynomial& cumulant(const std::vector<int>& exps);
    std::size_t size() const { return cache_.size(); }

private:
    std::map<std::vector<int>, BetaPolynomial> cache_;
};

// phi(word) for free plaquette variables: sum over non-crossing partitions whose blocks use
// one generator, of the product of block cumulants. Throws InvalidArgument beyond max_letters.
BetaPolynomial word_moment(const FreeWord& w, CumulantTable& table, std::size_t max_letters = kDefaultNcBound);
BetaPolynomial word_moment(const FreeWord& w, std::size_t max_letters = kDefaultNcBound);

// E cos^k(theta) for the limiting eigenvalue density (1 + 2 beta cos theta) / 2 pi.
BetaPolynomial spectral_moment(int k);

// Univariate moment/cumulant transforms over NC(n) (index 0 holds order 1).
std::vector<Rational> moments_from_cumulants(const std::vector<Rational>& kappa);
std::vector<Rational> cumulants_from_moments(const std::vector<Rational>& moments);

}  // namespace wloop
