#include "wloop/solver.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

#include "wloop/detail/words.hpp"
#include "wloop/errors.hpp"
#include "wloop/gauge.hpp"
#include "wloop/loop_ops.hpp"

namespace wloop {

std::string to_string(EdgePolicy p) {
    switch (p) {
        case EdgePolicy::LexMin: return "lexmin";
        case EdgePolicy::TopmostHorizontal: return "topmost";
        case EdgePolicy::SeededRandom: return "random";
    }
    return "?";
}

EdgePolicy parse_edge_policy(const std::string& s) {
    if (s == "lexmin") return EdgePolicy::LexMin;
    if (s == "topmost") return EdgePolicy::TopmostHorizontal;
    if (s == "random") return EdgePolicy::SeededRandom;
    throw InvalidArgument("unknown edge policy '" + s + "' (expected lexmin, topmost or random)");
}

namespace {

using Word = std::string;
using Seq = std::vector<Word>;

bool seq_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

struct Bound {
    long value = 0;
    bool parity = false;  // value has the parity of every filling
};

}  // namespace

struct MleSolver::Impl {
    SolverConfig cfg;
    SolverStats stats;
    std::unordered_map<std::string, Rational> memo;
    std::unordered_map<Word, Bound> bounds;
    std::chrono::steady_clock::time_point started;
    std::size_t tick = 0;

    explicit Impl(SolverConfig c) : cfg(c) { check_dim(cfg.dim); }

    // Undirected edge key for the rooted-edge choice: (min endpoint, axis).
    struct EdgeKey {
        std::vector<int> lo;
        int axis;
        auto operator<=>(const EdgeKey&) const = default;
    };

    std::size_t rooted_index(const Word& w) const {
        const int d = cfg.dim;
        auto mn = detail::min_corner(d, w);
        std::vector<int> cur(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) cur[static_cast<std::size_t>(i)] = -mn[static_cast<std::size_t>(i)];
        std::vector<EdgeKey> keys;
        keys.reserve(w.size());
        for (char c : w) {
            Step s = Step::from_code(static_cast<unsigned char>(c));
            EdgeKey k{cur, s.axis()};
            cur[static_cast<std::size_t>(s.axis())] += s.sign();
            if (s.sign() < 0) k.lo = cur;
            keys.push_back(std::move(k));
        }
        std::size_t best = 0;
        switch (cfg.policy) {
            case EdgePolicy::LexMin:
                for (std::size_t i = 1; i < keys.size(); ++i)
                    if (keys[i] < keys[best]) best = i;
                return best;
            case EdgePolicy::TopmostHorizontal: {
                long found = -1;
                for (std::size_t i = 0; i < keys.size(); ++i) {
                    if (keys[i].axis != 0) continue;
                    if (found < 0) {
                        found = static_cast<long>(i);
                        continue;
                    }
                    const auto& a = keys[i].lo;
                    const auto& b = keys[static_cast<std::size_t>(found)].lo;
                    if (a[1] > b[1] || (a[1] == b[1] && a < b)) found = static_cast<long>(i);
                }
                if (found >= 0) return static_cast<std::size_t>(found);
                for (std::size_t i = 1; i < keys.size(); ++i)
                    if (keys[i] < keys[best]) best = i;
                return best;
            }
            case EdgePolicy::SeededRandom: {
                std::vector<EdgeKey> distinct(keys);
                std::sort(distinct.begin(), distinct.end());
                distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
                std::uint64_t h = mix(cfg.seed ^ 0x5bd1e995ULL);
                for (char c : w) h = mix(h ^ static_cast<unsigned char>(c));
                const EdgeKey& pick = distinct[h % distinct.size()];
                for (std::size_t i = 0; i < keys.size(); ++i)
                    if (keys[i] == pick) return i;
                return 0;
            }
        }
        return 0;
    }

    Bound bound_of(const Word& w) {
        auto it = bounds.find(w);
        if (it != bounds.end()) return it->second;
        Loop l = Loop::from_canonical_codes(cfg.dim, w);
        Bound b;
        b.value = deformation_lower_bound(l);
        bool planar = cfg.dim == 2;
        if (!planar) {
            int axes = 0;
            std::vector<bool> used(static_cast<std::size_t>(cfg.dim), false);
            for (char c : w) used[static_cast<std::size_t>(Step::from_code(static_cast<unsigned char>(c)).axis())] = true;
            for (bool u : used) axes += u;
            planar = axes == 2;
        }
        b.parity = planar;
        bounds.emplace(w, b);
        return b;
    }

    static std::string key_of(const Seq& s, int k) {
        std::string key;
        key.push_back(static_cast<char>(k & 0xff));
        key.push_back(static_cast<char>((k >> 8) & 0xff));
        for (const auto& w : s) {
            key.append(w);
            key.push_back(static_cast<char>(0xff));
        }
        return key;
    }

    void check_budget(std::size_t depth) {
        stats.max_depth = std::max(stats.max_depth, depth);
        if (depth > cfg.budget.max_depth) throw BudgetExceeded("recursion depth budget exceeded (" + std::to_string(cfg.budget.max_depth) + ")");
        if (memo.size() >= cfg.budget.max_memo_entries) throw BudgetExceeded("memo entry budget exceeded (" + std::to_string(cfg.budget.max_memo_entries) + ")");
        if (cfg.budget.max_seconds > 0 && (++tick & 1023) == 0) {
            double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
            if (el > cfg.budget.max_seconds) throw BudgetExceeded("time budget exceeded (" + std::to_string(cfg.budget.max_seconds) + " s)");
        }
    }

    static std::vector<std::size_t> lengths(const Seq& s) {
        std::vector<std::size_t> r;
        for (const auto& w : s) r.push_back(w.size());
        std::sort(r.rbegin(), r.rend());
        return r;
    }

    Seq child(const Seq& rest, std::initializer_list<const Word*> fresh) {
        Seq s;
        s.reserve(rest.size() + fresh.size());
        s.insert(s.end(), rest.begin(), rest.end());
        for (const Word* w : fresh) {
            Word c = detail::canonical_loop_codes(*w);
            if (!c.empty()) s.push_back(std::move(c));
        }
        std::sort(s.begin(), s.end(), seq_less);
        return s;
    }

    void check_measure(const Seq& parent, int kp, const Seq& kid, int kk) {
        if (!cfg.check_termination) return;
        bool ok = kk < kp;
        if (kk == kp) {
            // Splits at the same k: the first loop is replaced by strictly shorter pieces.
            auto a = lengths(parent), b = lengths(kid);
            ok = std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
        }
        if (!ok) throw Error("termination measure did not decrease");
    }

    Rational eval(const Seq& s, int k, std::size_t depth) {
        if (k < 0) return 0;
        if (s.empty()) return k == 0 ? 1 : 0;
        if (cfg.area_pruning) {
            long lb = 0;
            bool parity = true;
            for (const auto& w : s) {
                Bound b = bound_of(w);
                lb += b.value;
                parity = parity && b.parity;
            }
            if (k < lb || (parity && ((k - lb) & 1))) {
                ++stats.pruned;
                return 0;
            }
        }
        std::string key = key_of(s, k);
        if (auto it = memo.find(key); it != memo.end()) {
            ++stats.memo_hits;
            return it->second;
        }
        check_budget(depth);
        ++stats.expansions;

        const Word& l = s.front();
        Seq rest(s.begin() + 1, s.end());
        const std::size_t r = rooted_index(l);
        const Step e = Step::from_code(static_cast<unsigned char>(l[r]));
        // Locations of the rooted edge and its reverse. A directed edge is fixed by its tail
        // site and step, so compare both.
        std::vector<std::size_t> same, rev;
        {
            const int d = cfg.dim;
            auto mn = detail::min_corner(d, l);
            std::vector<int> cur(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) cur[static_cast<std::size_t>(i)] = -mn[static_cast<std::size_t>(i)];
            std::vector<std::vector<int>> tails;
            tails.reserve(l.size());
            for (char c : l) {
                tails.push_back(cur);
                Step st = Step::from_code(static_cast<unsigned char>(c));
                cur[static_cast<std::size_t>(st.axis())] += st.sign();
            }
            std::vector<int> head = tails[r];
            head[static_cast<std::size_t>(e.axis())] += e.sign();
            for (std::size_t i = 0; i < l.size(); ++i) {
                Step st = Step::from_code(static_cast<unsigned char>(l[i]));
                if (st == e && tails[i] == tails[r]) same.push_back(i);
                else if (st == e.reversed() && tails[i] == head) rev.push_back(i);
            }
        }
        const long m = static_cast<long>(same.size() + rev.size());

        Rational acc = 0;
        auto visit = [&](const Seq& c, int kc, long weight) {
            check_measure(s, k, c, kc);
            Rational v = eval(c, kc, depth + 1);
            if (v != 0) acc += weight * v;
        };

        for (std::size_t x : same) {
            for (std::size_t y : rev) {
                auto [a, b] = detail::split_neg_word(l, std::min(x, y), std::max(x, y));
                visit(child(rest, {&a, &b}), k, 2);
            }
        }
        for (const auto* set : {&same, &rev}) {
            for (std::size_t i = 0; i < set->size(); ++i) {
                for (std::size_t j = i + 1; j < set->size(); ++j) {
                    auto [a, b] = detail::split_pos_word(l, (*set)[i], (*set)[j]);
                    visit(child(rest, {&a, &b}), k, -2);  // ordered pairs (x,y) and (y,x) agree
                }
            }
        }
        if (k >= 1) {
            auto sides = detail::sides_around(e.axis(), cfg.dim);
            for (const auto* set : {&same, &rev}) {
                for (std::size_t x : *set) {
                    for (const auto& side : sides) {
                        Word n = detail::deform_neg_word(l, x, side);
                        visit(child(rest, {&n}), k - 1, 1);
                        Word p = detail::deform_pos_word(l, x, side);
                        visit(child(rest, {&p}), k - 1, -1);
                    }
                }
            }
        }
        acc /= m;
        memo.emplace(std::move(key), acc);
        stats.memo_entries = memo.size();
        return acc;
    }

    Seq to_seq(const LoopSequence& s) const {
        Seq r;
        for (const auto& l : s) {
            if (l.dim() != cfg.dim) throw InvalidArgument("loop dimension " + std::to_string(l.dim()) + " does not match solver dimension " + std::to_string(cfg.dim));
            r.push_back(l.codes());
        }
        std::sort(r.begin(), r.end(), seq_less);
        return r;
    }

    template <class F>
    auto timed(F&& f) {
        started = std::chrono::steady_clock::now();
        tick = 0;
        struct Guard {
            Impl* self;
            ~Guard() { self->stats.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - self->started).count(); }
        } g{this};
        return f();
    }
};

MleSolver::MleSolver(SolverConfig cfg) : impl_(std::make_unique<Impl>(cfg)) {}
MleSolver::~MleSolver() = default;
MleSolver::MleSolver(MleSolver&&) noexcept = default;
MleSolver& MleSolver::operator=(MleSolver&&) noexcept = default;

Rational MleSolver::coefficient(const LoopSequence& s, int k) {
    Seq q = impl_->to_seq(s);
    return impl_->timed([&] { return impl_->eval(q, k, 0); });
}

Rational MleSolver::coefficient(const Loop& l, int k) { return coefficient(LoopSequence({l}), k); }

BetaPolynomial MleSolver::polynomial(const LoopSequence& s, int k_max) {
    Seq q = impl_->to_seq(s);
    return impl_->timed([&] {
        BetaPolynomial p;
        for (int k = 0; k <= k_max; ++k) p.set_coeff(k, impl_->eval(q, k, 0));
        return p;
    });
}

BetaPolynomial MleSolver::polynomial(const Loop& l, int k_max) { return polynomial(LoopSequence({l}), k_max); }

DirectedEdge MleSolver::rooted_edge(const Loop& l) const {
    if (l.is_null()) throw InvalidArgument("the null loop has no edges");
    if (l.dim() != impl_->cfg.dim) throw InvalidArgument("loop dimension does not match solver dimension");
    return l.edge(impl_->rooted_index(l.codes())).positive();
}

const SolverConfig& MleSolver::config() const { return impl_->cfg; }
const SolverStats& MleSolver::stats() const { return impl_->stats; }

void MleSolver::clear() {
    impl_->memo.clear();
    impl_->bounds.clear();
    impl_->stats = {};
}

PolynomialReport solve_polynomial(MleSolver& solver, const LoopSequence& s, int k_max) {
    PolynomialReport r;
    r.k_max = k_max;
    r.poly = solver.polynomial(s, k_max);
    if (solver.config().dim == 2) {
        long b = 0;
        for (const auto& l : s) b += degree_bound(l);
        r.degree_bound = b;
        r.complete = b <= k_max;
    }
    return r;
}

}  // namespace wloop
