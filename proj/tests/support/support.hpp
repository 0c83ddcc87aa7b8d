#pragma once

#include <algorithm>
#include <climits>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "wloop/freeprob.hpp"
#include "wloop/lattice.hpp"

namespace wloop::testing {

// Distinct non-null planar loops from rejection-sampled closed walks of even length <= max_len.
inline std::vector<Loop> random_loops(std::size_t count, std::size_t max_len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dir(0, 3);
    std::uniform_int_distribution<std::size_t> half(2, max_len / 2);
    std::set<Loop> seen;
    std::vector<Loop> out;
    while (out.size() < count) {
        std::size_t n = 2 * half(rng);
        ClosedWalk w{Site{0, 0}, {}};
        int x = 0, y = 0;
        for (std::size_t i = 0; i < n; ++i) {
            int d = dir(rng);
            Step s(d / 2, d % 2 ? -1 : 1);
            (d / 2 ? y : x) += s.sign();
            w.steps.push_back(s);
        }
        if (x != 0 || y != 0) continue;
        Loop l = erase_backtracks(w);
        if (l.is_null() || !seen.insert(l).second) continue;
        out.push_back(l);
    }
    return out;
}

// All set partitions of {0..n-1}, as block-label vectors (restricted growth strings).
inline void for_each_set_partition(int n, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int m) {
        if (i == n) {
            f(a);
            return;
        }
        for (int b = 0; b <= m + 1; ++b) {
            a[static_cast<std::size_t>(i)] = b;
            rec(i + 1, std::max(m, b));
        }
    };
    if (n == 0) {
        f(a);
        return;
    }
    rec(1, 0);
}

inline bool labels_noncrossing(const std::vector<int>& a) {
    int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l)
                    if (a[i] == a[k] && a[j] == a[l] && a[i] != a[j]) return false;
    return true;
}

inline NCPartition from_labels(const std::vector<int>& a) {
    int m = a.empty() ? 0 : *std::max_element(a.begin(), a.end()) + 1;
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < a.size(); ++i) blocks[static_cast<std::size_t>(a[i])].push_back(static_cast<int>(i));
    return NCPartition(static_cast<int>(a.size()), blocks);
}

// Alternating commutator word a b a^-1 b^-1 a b ... of length n.
inline std::vector<Letter> alternating_word(int n) {
    static const Letter cyc[4] = {{0, 1}, {1, 1}, {0, -1}, {1, -1}};
    std::vector<Letter> w;
    for (int i = 0; i < n; ++i) w.push_back(cyc[i % 4]);
    return w;
}

struct PairingCensus {
    std::size_t partitions = 0;
    int min_singletons = INT_MAX;
};

// Every non-crossing partition of the word into singletons and pairs {x, x^-1} of one generator.
inline PairingCensus pairing_census(const std::vector<Letter>& w) {
    PairingCensus c;
    std::vector<std::size_t> open;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int singles) {
        if (i == w.size()) {
            if (open.empty()) {
                ++c.partitions;
                c.min_singletons = std::min(c.min_singletons, singles);
            }
            return;
        }
        if (open.size() > w.size() - i) return;
        rec(i + 1, singles + 1);
        if (!open.empty()) {
            const Letter& t = w[open.back()];
            if (t.gen == w[i].gen && t.exp == -w[i].exp) {
                std::size_t top = open.back();
                open.pop_back();
                rec(i + 1, singles);
                open.push_back(top);
            }
        }
        open.push_back(i);
        rec(i + 1, singles);
        open.pop_back();
    };
    rec(0, 0);
    return c;
}

}  // namespace wloop::testing
