#include "wloop/freeprob.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "wloop/errors.hpp"

namespace wloop {

// ---- FreeWord ----

FreeWord FreeWord::reduced() const {
    FreeWord r;
    for (const auto& l : letters) {
        if (l.exp == 0) continue;
        if (!r.letters.empty() && r.letters.back().gen == l.gen) {
            r.letters.back().exp += l.exp;
            if (r.letters.back().exp == 0) r.letters.pop_back();
        } else {
            r.letters.push_back(l);
        }
    }
    return r;
}

FreeWord FreeWord::inverse() const {
    FreeWord r;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) r.letters.push_back({it->gen, -it->exp});
    return r;
}

FreeWord FreeWord::power(int k) const {
    FreeWord base = k < 0 ? inverse() : *this, r;
    for (int i = 0; i < std::abs(k); ++i) r.letters.insert(r.letters.end(), base.letters.begin(), base.letters.end());
    return r;
}

long FreeWord::total_degree() const {
    long s = 0;
    for (const auto& l : letters) s += std::abs(l.exp);
    return s;
}

FreeWord operator*(const FreeWord& a, const FreeWord& b) {
    FreeWord r = a;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
}

// ---- NCPartition ----

NCPartition::NCPartition(int n, std::vector<std::vector<int>> blocks) : n_(n), blocks_(std::move(blocks)) {
    if (n < 0) throw InvalidArgument("partition size must be >= 0");
    label_.assign(static_cast<std::size_t>(n), -1);
    for (auto& b : blocks_) {
        if (b.empty()) throw InvalidArgument("empty block in partition");
        std::sort(b.begin(), b.end());
    }
    std::sort(blocks_.begin(), blocks_.end());
    for (std::size_t bi = 0; bi < blocks_.size(); ++bi) {
        for (int x : blocks_[bi]) {
            if (x < 0 || x >= n) throw InvalidArgument("partition element out of range");
            if (label_[static_cast<std::size_t>(x)] != -1) throw InvalidArgument("partition blocks overlap");
            label_[static_cast<std::size_t>(x)] = static_cast<int>(bi);
        }
    }
    for (int l : label_)
        if (l == -1) throw InvalidArgument("partition blocks do not cover all points");
}

NCPartition NCPartition::zero(int n) {
    std::vector<std::vector<int>> b;
    for (int i = 0; i < n; ++i) b.push_back({i});
    return NCPartition(n, std::move(b));
}

NCPartition NCPartition::one(int n) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    return n == 0 ? NCPartition(0, {}) : NCPartition(n, {all});
}

bool NCPartition::is_noncrossing() const {
    // Between consecutive members a < c of a block, every other block must stay inside (a, c).
    for (const auto& b : blocks_) {
        for (std::size_t t = 0; t + 1 < b.size(); ++t) {
            for (int x = b[t] + 1; x < b[t + 1]; ++x) {
                const auto& o = blocks_[static_cast<std::size_t>(label_[static_cast<std::size_t>(x)])];
                if (o.front() < b[t] || o.back() > b[t + 1]) return false;
            }
        }
    }
    return true;
}

bool NCPartition::refines(const NCPartition& c) const {
    if (n_ != c.n_) return false;
    for (const auto& b : blocks_)
        for (int x : b)
            if (c.block_of(x) != c.block_of(b.front())) return false;
    return true;
}

std::string NCPartition::to_string() const {
    std::string s;
    for (const auto& b : blocks_) {
        s += '{';
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(b[i] + 1);
        }
        s += '}';
    }
    return s;
}

namespace {

// All NC partitions of {lo..hi-1}, as block lists appended onto `cur`.
void gen_nc(int lo, int hi, std::vector<std::vector<int>>& cur, const std::function<void()>& emit);

void gen_gaps(const std::vector<int>& block, std::size_t g, int hi, std::vector<std::vector<int>>& cur, const std::function<void()>& emit) {
    if (g == block.size()) {
        emit();
        return;
    }
    int a = block[g] + 1;
    int b = g + 1 < block.size() ? block[g + 1] : hi;
    gen_nc(a, b, cur, [&] { gen_gaps(block, g + 1, hi, cur, emit); });
}

void gen_nc(int lo, int hi, std::vector<std::vector<int>>& cur, const std::function<void()>& emit) {
    if (lo >= hi) {
        emit();
        return;
    }
    const int rest = hi - lo - 1;
    for (long mask = 0; mask < (1L << rest); ++mask) {
        std::vector<int> block{lo};
        for (int t = 0; t < rest; ++t)
            if (mask >> t & 1) block.push_back(lo + 1 + t);
        cur.push_back(block);
        gen_gaps(block, 0, hi, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

std::vector<NCPartition> enumerate_nc(int n, int bound) {
    if (n < 0) throw InvalidArgument("n must be >= 0");
    if (n > bound) throw InvalidArgument("NC(" + std::to_string(n) + ") exceeds the enumeration bound " + std::to_string(bound));
    std::vector<NCPartition> out;
    std::vector<std::vector<int>> cur;
    gen_nc(0, n, cur, [&] { out.emplace_back(n, cur); });
    std::sort(out.begin(), out.end());
    return out;
}

NCPartition kreweras(const NCPartition& pi) {
    const int n = pi.n();
    // As permutations with increasing cycles: K = pi^{-1} o gamma, gamma = (0 1 ... n-1).
    std::vector<int> inv(static_cast<std::size_t>(n));
    for (const auto& b : pi.blocks())
        for (std::size_t t = 0; t < b.size(); ++t) inv[static_cast<std::size_t>(b[(t + 1) % b.size()])] = b[t];
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<std::vector<int>> blocks;
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<int> cyc;
        for (int x = s; !seen[static_cast<std::size_t>(x)]; x = inv[static_cast<std::size_t>((x + 1) % n)]) {
            seen[static_cast<std::size_t>(x)] = true;
            cyc.push_back(x);
        }
        blocks.push_back(cyc);
    }
    return NCPartition(n, std::move(blocks));
}

Rational mobius_from_zero(const NCPartition& pi) {
    Rational r = 1;
    for (const auto& b : pi.blocks()) {
        unsigned s = static_cast<unsigned>(b.size()) - 1;
        Rational c(catalan(s));
        r *= (s % 2 ? -c : c);
    }
    return r;
}

Rational mobius(const NCPartition& lo, const NCPartition& hi) {
    if (!lo.refines(hi)) throw InvalidArgument("mobius(lo, hi) needs lo <= hi");
    // [lo, hi] is the product over blocks V of hi of [lo|V, 1_V], and [sigma, 1] ~ [0, K(sigma)].
    Rational r = 1;
    for (const auto& v : hi.blocks()) {
        std::vector<int> pos(static_cast<std::size_t>(lo.n()), -1);
        for (std::size_t i = 0; i < v.size(); ++i) pos[static_cast<std::size_t>(v[i])] = static_cast<int>(i);
        std::vector<std::vector<int>> sub;
        for (const auto& b : lo.blocks()) {
            if (pos[static_cast<std::size_t>(b.front())] < 0) continue;
            std::vector<int> nb;
            for (int x : b) nb.push_back(pos[static_cast<std::size_t>(x)]);
            sub.push_back(nb);
        }
        r *= mobius_from_zero(kreweras(NCPartition(static_cast<int>(v.size()), sub)));
    }
    return r;
}

// ---- moments and cumulants ----

BetaPolynomial single_variable_moment(long m) {
    if (m == 0) return BetaPolynomial::monomial(0);
    if (m == 1 || m == -1) return BetaPolynomial::monomial(1);
    return {};
}

const BetaPolynomial& CumulantTable::cumulant(const std::vector<int>& e) {
    if (auto it = cache_.find(e); it != cache_.end()) return it->second;
    const int r = static_cast<int>(e.size());
    if (r == 0) throw InvalidArgument("cumulant of an empty block");
    auto gap_moment = [&](int a, int b) {
        long s = 0;
        for (int t = a; t < b; ++t) s += e[static_cast<std::size_t>(t)];
        return single_variable_moment(s);
    };
    // phi(a^{e_0} ... a^{e_{r-1}}) = sum over the block B containing 0 of kappa(e|B) times the
    // moments of the intervals B leaves uncovered; solve for the B = everything term.
    BetaPolynomial k = gap_moment(0, r);
    for (long mask = 0; mask + 1 < (1L << (r - 1)); ++mask) {
        std::vector<int> members{0};
        for (int t = 1; t < r; ++t)
            if (mask >> (t - 1) & 1) members.push_back(t);
        BetaPolynomial term = BetaPolynomial::monomial(0);
        for (std::size_t g = 0; g < members.size() && !term.is_zero(); ++g) {
            int a = members[g] + 1;
            int b = g + 1 < members.size() ? members[g + 1] : r;
            if (a < b) term = term * gap_moment(a, b);
        }
        if (term.is_zero()) continue;
        std::vector<int> sub;
        for (int t : members) sub.push_back(e[static_cast<std::size_t>(t)]);
        term = term * cumulant(sub);
        k = k - term;
    }
    return cache_.emplace(e, std::move(k)).first->second;
}

BetaPolynomial word_moment(const FreeWord& w0, CumulantTable& table, std::size_t max_letters) {
    FreeWord w = w0.reduced();
    const int n = static_cast<int>(w.size());
    if (w.size() > max_letters)
        throw InvalidArgument("word has " + std::to_string(w.size()) + " letters, above the bound " + std::to_string(max_letters));
    // F[i][j]: sum over single-generator NC partitions of letters [i, j).
    std::vector<std::vector<BetaPolynomial>> F(static_cast<std::size_t>(n) + 1, std::vector<BetaPolynomial>(static_cast<std::size_t>(n) + 1));
    for (int i = 0; i <= n; ++i) F[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = BetaPolynomial::monomial(0);
    for (int len = 1; len <= n; ++len) {
        for (int i = 0; i + len <= n; ++i) {
            const int j = i + len;
            const int g = w.letters[static_cast<std::size_t>(i)].gen;
            std::vector<int> cand;
            for (int t = i + 1; t < j; ++t)
                if (w.letters[static_cast<std::size_t>(t)].gen == g) cand.push_back(t);
            BetaPolynomial total;
            for (long mask = 0; mask < (1L << cand.size()); ++mask) {
                std::vector<int> members{i};
                for (std::size_t t = 0; t < cand.size(); ++t)
                    if (mask >> t & 1) members.push_back(cand[t]);
                BetaPolynomial term = BetaPolynomial::monomial(0);
                for (std::size_t q = 0; q < members.size() && !term.is_zero(); ++q) {
                    int a = members[q] + 1;
                    int b = q + 1 < members.size() ? members[q + 1] : j;
                    if (a < b) term = term * F[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                }
                if (term.is_zero()) continue;
                std::vector<int> ex;
                for (int t : members) ex.push_back(w.letters[static_cast<std::size_t>(t)].exp);
                total += term * table.cumulant(ex);
            }
            F[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(total);
        }
    }
    return F[0][static_cast<std::size_t>(n)];
}

BetaPolynomial word_moment(const FreeWord& w, std::size_t max_letters) {
    CumulantTable t;
    return word_moment(w, t, max_letters);
}

BetaPolynomial spectral_moment(int k) {
    if (k < 0) throw InvalidArgument("moment order must be >= 0");
    const unsigned u = static_cast<unsigned>(k);
    if (k % 2 == 0) {
        Rational v(binomial(u, u / 2));
        v /= Rational(mpz_class(1) << u);
        return BetaPolynomial::monomial(0, v);
    }
    Rational v(binomial(u, (u - 1) / 2));
    v /= Rational(mpz_class(1) << (u - 1));
    return BetaPolynomial::monomial(1, v);
}

std::vector<Rational> moments_from_cumulants(const std::vector<Rational>& kappa) {
    std::vector<Rational> m;
    for (int n = 1; n <= static_cast<int>(kappa.size()); ++n) {
        Rational s = 0;
        for (const auto& pi : enumerate_nc(n)) {
            Rational t = 1;
            for (const auto& b : pi.blocks()) t *= kappa[b.size() - 1];
            s += t;
        }
        m.push_back(s);
    }
    return m;
}

std::vector<Rational> cumulants_from_moments(const std::vector<Rational>& moments) {
    std::vector<Rational> k;
    for (int n = 1; n <= static_cast<int>(moments.size()); ++n) {
        NCPartition top = NCPartition::one(n);
        Rational s = 0;
        for (const auto& pi : enumerate_nc(n)) {
            Rational t = 1;
            for (const auto& b : pi.blocks()) t *= moments[b.size() - 1];
            s += t * mobius(pi, top);
        }
        k.push_back(s);
    }
    return k;
}

}  // namespace wloop
