#include "wloop/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "wloop/detail/words.hpp"
#include "wloop/errors.hpp"

namespace wloop {

void check_dim(int d) {
    if (d < 2 || d > kMaxDim) throw InvalidArgument("dimension must be in [2, " + std::to_string(kMaxDim) + "], got " + std::to_string(d));
}

Site Site::operator+(const Site& o) const {
    if (dim() != o.dim()) throw InvalidArgument("site dimension mismatch");
    Site r = *this;
    for (int i = 0; i < dim(); ++i) r[i] += o[i];
    return r;
}

Site Site::operator-(const Site& o) const {
    if (dim() != o.dim()) throw InvalidArgument("site dimension mismatch");
    Site r = *this;
    for (int i = 0; i < dim(); ++i) r[i] -= o[i];
    return r;
}

namespace detail {

std::string to_codes(const std::vector<Step>& steps) {
    std::string s;
    s.reserve(steps.size());
    for (Step st : steps) s.push_back(static_cast<char>(st.code()));
    return s;
}

std::vector<Step> to_steps(std::string_view codes) {
    std::vector<Step> r;
    r.reserve(codes.size());
    for (char c : codes) r.push_back(Step::from_code(static_cast<unsigned char>(c)));
    return r;
}

std::string reduce_linear(std::string_view w, std::vector<std::pair<std::size_t, std::size_t>>* pairs) {
    std::string out;
    std::vector<std::size_t> pos;
    out.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto c = static_cast<unsigned char>(w[i]);
        if (!out.empty() && static_cast<unsigned char>(out.back()) == inv(c)) {
            if (pairs) pairs->emplace_back(pos.back(), i);
            out.pop_back();
            pos.pop_back();
        } else {
            out.push_back(static_cast<char>(c));
            pos.push_back(i);
        }
    }
    return out;
}

std::string reduce_cyclic(std::string_view w) {
    std::string s = reduce_linear(w);
    std::size_t lo = 0, hi = s.size();
    while (hi - lo >= 2 && static_cast<unsigned char>(s[lo]) == inv(static_cast<unsigned char>(s[hi - 1]))) {
        ++lo;
        --hi;
    }
    return s.substr(lo, hi - lo);
}

std::size_t least_rotation(std::string_view s) {
    const std::size_t n = s.size();
    std::size_t i = 0, j = 1, k = 0;
    while (i < n && j < n && k < n) {
        auto a = static_cast<unsigned char>(s[(i + k) % n]);
        auto b = static_cast<unsigned char>(s[(j + k) % n]);
        if (a == b) {
            ++k;
            continue;
        }
        if (a > b)
            i += k + 1;
        else
            j += k + 1;
        if (i == j) ++j;
        k = 0;
    }
    return n == 0 ? 0 : std::min(i, j);
}

std::string canonical_rotation(std::string_view w) {
    std::size_t r = least_rotation(w);
    std::string out;
    out.reserve(w.size());
    out.append(w.substr(r));
    out.append(w.substr(0, r));
    return out;
}

std::vector<int> min_corner(int dim, std::string_view w) {
    std::vector<int> cur(static_cast<std::size_t>(dim), 0), mn(static_cast<std::size_t>(dim), 0);
    for (char c : w) {
        Step s = Step::from_code(static_cast<unsigned char>(c));
        auto a = static_cast<std::size_t>(s.axis());
        cur[a] += s.sign();
        mn[a] = std::min(mn[a], cur[a]);
    }
    return mn;
}

std::vector<Site> sites_from(const Site& base, std::string_view w) {
    std::vector<Site> r;
    r.reserve(w.size() + 1);
    r.push_back(base);
    for (char c : w) r.push_back(r.back().moved(Step::from_code(static_cast<unsigned char>(c))));
    return r;
}

}  // namespace detail

namespace {

void check_steps(int dim, const std::vector<Step>& steps) {
    for (Step s : steps)
        if (s.axis() >= dim) throw InvalidArgument("step axis out of range for dimension " + std::to_string(dim));
}

}  // namespace

// ---- Plaquette ----

Plaquette make_plaquette(const Site& corner, int a, int b, int orientation) {
    check_dim(corner.dim());
    if (a == b || a < 0 || b < 0 || a >= corner.dim() || b >= corner.dim()) throw InvalidArgument("plaquette needs two distinct axes");
    if (orientation != 1 && orientation != -1) throw InvalidArgument("plaquette orientation must be +1 or -1");
    return {corner, std::min(a, b), std::max(a, b), orientation};
}

ClosedWalk Plaquette::boundary() const {
    if (orientation > 0) return {corner, {Step(axis_hi, 1), Step(axis_lo, 1), Step(axis_hi, -1), Step(axis_lo, -1)}};
    return {corner, {Step(axis_lo, 1), Step(axis_hi, 1), Step(axis_lo, -1), Step(axis_hi, -1)}};
}

std::vector<DirectedEdge> Plaquette::edges() const { return boundary().edges(); }

bool Plaquette::contains(const DirectedEdge& e) const {
    for (const auto& f : edges())
        if (f.same_undirected(e)) return true;
    return false;
}

// ---- ClosedWalk ----

bool ClosedWalk::is_closed() const {
    std::vector<int> net(static_cast<std::size_t>(dim()), 0);
    for (Step s : steps) {
        if (s.axis() >= dim()) return false;
        net[static_cast<std::size_t>(s.axis())] += s.sign();
    }
    return std::all_of(net.begin(), net.end(), [](int v) { return v == 0; });
}

bool ClosedWalk::is_non_backtracking() const {
    const std::size_t n = steps.size();
    for (std::size_t i = 0; i < n; ++i)
        if (steps[(i + 1) % n] == steps[i].reversed()) return false;
    return true;
}

std::vector<Site> ClosedWalk::sites() const { return detail::sites_from(basepoint, detail::to_codes(steps)); }

DirectedEdge ClosedWalk::edge(std::size_t i) const {
    Site s = basepoint;
    for (std::size_t j = 0; j < i; ++j) s = s.moved(steps[j]);
    return {s, steps[i]};
}

std::vector<DirectedEdge> ClosedWalk::edges() const {
    std::vector<DirectedEdge> r;
    r.reserve(steps.size());
    Site s = basepoint;
    for (Step st : steps) {
        r.push_back({s, st});
        s = s.moved(st);
    }
    return r;
}

ClosedWalk translate(const ClosedWalk& w, const Site& v) { return {w.basepoint + v, w.steps}; }

ClosedWalk rotate(const ClosedWalk& w, std::size_t r) {
    if (w.steps.empty()) return w;
    r %= w.steps.size();
    ClosedWalk out{w.edge(r).tail, {}};
    out.steps.insert(out.steps.end(), w.steps.begin() + static_cast<long>(r), w.steps.end());
    out.steps.insert(out.steps.end(), w.steps.begin(), w.steps.begin() + static_cast<long>(r));
    return out;
}

ClosedWalk reverse(const ClosedWalk& w) {
    ClosedWalk out{w.basepoint, {}};
    for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) out.steps.push_back(it->reversed());
    return out;
}

ClosedWalk concat(const ClosedWalk& a, const ClosedWalk& b) {
    ClosedWalk out = a;
    out.steps.insert(out.steps.end(), b.steps.begin(), b.steps.end());
    return out;
}

// ---- Loop ----

Loop Loop::null(int dim) {
    check_dim(dim);
    Loop l;
    l.dim_ = dim;
    return l;
}

Loop Loop::from_canonical_codes(int dim, std::string codes) {
    Loop l = null(dim);
    l.codes_ = std::move(codes);
    return l;
}

std::vector<Step> Loop::steps() const { return detail::to_steps(codes_); }

Site Loop::basepoint() const {
    auto mn = detail::min_corner(dim_, codes_);
    Site b(dim_);
    for (int i = 0; i < dim_; ++i) b[i] = -mn[static_cast<std::size_t>(i)];
    return b;
}

ClosedWalk Loop::walk() const { return {basepoint(), steps()}; }

std::vector<Site> Loop::sites() const { return detail::sites_from(basepoint(), codes_); }

DirectedEdge Loop::edge(std::size_t i) const {
    Site s = basepoint();
    for (std::size_t j = 0; j < i; ++j) s = s.moved(step(j));
    return {s, step(i)};
}

std::strong_ordering Loop::operator<=>(const Loop& o) const {
    if (auto c = dim_ <=> o.dim_; c != 0) return c;
    if (auto c = codes_.size() <=> o.codes_.size(); c != 0) return c;
    return codes_ <=> o.codes_;
}

Loop erase_backtracks(const ClosedWalk& w) {
    check_dim(w.dim());
    check_steps(w.dim(), w.steps);
    if (!w.is_closed()) throw InvalidArgument("walk is not closed");
    return Loop::from_canonical_codes(w.dim(), detail::canonical_loop_codes(detail::to_codes(w.steps)));
}

Loop canonicalize(const ClosedWalk& w) {
    check_dim(w.dim());
    check_steps(w.dim(), w.steps);
    if (!w.is_closed()) throw InvalidArgument("walk is not closed");
    if (!w.is_non_backtracking()) throw InvalidArgument("canonicalize requires a non-backtracking loop");
    return Loop::from_canonical_codes(w.dim(), detail::canonical_rotation(detail::to_codes(w.steps)));
}

Loop reversed(const Loop& l) { return erase_backtracks(reverse(l.walk())); }

// ---- LoopSequence ----

LoopSequence::LoopSequence(std::vector<Loop> loops) {
    for (auto& l : loops) push_back(l);
}

void LoopSequence::push_back(const Loop& l) {
    if (!loops_.empty() && loops_.front().dim() != l.dim()) throw InvalidArgument("mixed dimensions in loop sequence");
    if (!l.is_null()) loops_.push_back(l);
}

// ---- chains ----

void OneChain::add(const DirectedEdge& e, long c) {
    DirectedEdge p = e.positive();
    if (!e.positively_oriented()) c = -c;
    auto it = coeff.find(p);
    if (it == coeff.end()) {
        if (c != 0) coeff.emplace(p, c);
        return;
    }
    it->second += c;
    if (it->second == 0) coeff.erase(it);
}

long OneChain::l1_norm() const {
    long s = 0;
    for (const auto& [e, c] : coeff) s += std::labs(c);
    return s;
}

OneChain boundary_chain(const ClosedWalk& w) {
    OneChain r;
    for (const auto& e : w.edges()) r.add(e, 1);
    return r;
}

OneChain boundary_chain(const Loop& l) { return boundary_chain(l.walk()); }

long WindingMap::l1_norm() const {
    long s = 0;
    for (const auto& [f, c] : eta) s += std::labs(c);
    return s;
}

OneChain WindingMap::boundary() const {
    OneChain r;
    for (const auto& [corner, c] : eta) {
        Plaquette p{corner, 0, 1, 1};
        for (const auto& e : p.edges()) r.add(e, c);
    }
    return r;
}

WindingMap winding_numbers(const ClosedWalk& w) {
    if (w.dim() != 2) throw Unsupported("winding numbers are defined for d = 2 only");
    if (!w.is_closed()) throw InvalidArgument("walk is not closed");
    // Horizontal edge (i,y)->(i+1,y) bounds face (i,y-1) from above and face (i,y) from below,
    // so eta(i,j) = sum over y > j of the net traversal count of that edge.
    std::map<int, std::map<int, long>> cols;
    for (const auto& [e, c] : boundary_chain(w).coeff)
        if (e.step.axis() == 0) cols[e.tail[0]][e.tail[1]] += c;
    WindingMap m;
    for (const auto& [i, col] : cols) {
        long run = 0;
        int lo = col.begin()->first, hi = col.rbegin()->first;
        for (int j = hi - 1; j >= lo - 1; --j) {
            auto it = col.find(j + 1);
            if (it != col.end()) run += it->second;
            if (run != 0) m.eta[Site{i, j}] = run;
        }
    }
    return m;
}

WindingMap winding_numbers(const Loop& l) { return winding_numbers(l.walk()); }

namespace {

// Axes the loop moves along, or empty for the null loop.
std::set<int> used_axes(const Loop& l) {
    std::set<int> ax;
    for (char c : l.codes()) ax.insert(Step::from_code(static_cast<unsigned char>(c)).axis());
    return ax;
}

// Planar projection of a loop that only moves along axes a < b.
ClosedWalk project(const Loop& l, int a, int b) {
    ClosedWalk w{Site(2), {}};
    for (Step s : l.steps()) w.steps.emplace_back(s.axis() == a ? 0 : 1, s.sign());
    (void)b;
    return w;
}

}  // namespace

long area(const Loop& l) {
    if (l.is_null()) return 0;
    if (l.dim() == 2) return winding_numbers(l).l1_norm();
    auto ax = used_axes(l);
    if (ax.size() == 2) {
        // A loop confined to a coordinate 2-plane: projecting onto that plane is a chain map
        // that does not increase L1 norm, so the planar filling is minimal.
        return winding_numbers(project(l, *ax.begin(), *ax.rbegin())).l1_norm();
    }
    if (boundary_chain(l).is_zero()) return 0;
    throw Unsupported("area of a non-planar loop with nonzero boundary is not implemented for d >= 3");
}

long deformation_lower_bound(const Loop& l) {
    if (l.is_null()) return 0;
    if (l.dim() == 2 || used_axes(l).size() == 2) return area(l);
    long n = boundary_chain(l).l1_norm();
    return (n + 3) / 4;
}

// ---- decorated trees ----

void DecoratedTree::validate() const {
    if (levels.empty()) throw InvalidArgument("decorated tree needs at least one level");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const auto& v = levels[i];
        if (v.g < 1) throw InvalidArgument("tree level " + std::to_string(i + 1) + ": g must be >= 1");
        if (v.sigma != 1 && v.sigma != -1) throw InvalidArgument("tree level " + std::to_string(i + 1) + ": sigma must be +1 or -1");
        bool last = i + 1 == levels.size();
        if (last && v.k != 0) throw InvalidArgument("last tree level must have k = 0");
        if (!last && (v.k < 1 || v.k > v.g)) throw InvalidArgument("tree level " + std::to_string(i + 1) + ": k must be in [1, g]");
    }
}

bool DecoratedTree::is_path() const {
    return std::all_of(levels.begin(), levels.end(), [](const TreeLevel& v) { return v.g == 1; });
}

namespace {

void append_pow(std::vector<Step>& out, int sigma, int times) {
    static const Step pos[4] = {Step(1, 1), Step(0, 1), Step(1, -1), Step(0, -1)};
    static const Step neg[4] = {Step(0, 1), Step(1, 1), Step(0, -1), Step(1, -1)};
    for (int t = 0; t < times; ++t)
        for (Step s : (sigma > 0 ? pos : neg)) out.push_back(s);
}

void build_tree_steps(const DecoratedTree& t, std::size_t i, std::vector<Step>& out) {
    const auto& v = t.levels[i];
    if (i + 1 == t.levels.size()) {
        append_pow(out, v.sigma, v.g);
        return;
    }
    append_pow(out, v.sigma, v.sigma > 0 ? v.k - 1 : v.k);
    out.emplace_back(1, 1);
    build_tree_steps(t, i + 1, out);
    out.emplace_back(1, -1);
    append_pow(out, v.sigma, v.sigma > 0 ? v.g - v.k + 1 : v.g - v.k);
}

}  // namespace

ClosedWalk tree_walk(const DecoratedTree& t, int dim) {
    check_dim(dim);
    t.validate();
    ClosedWalk w{Site(dim), {}};
    build_tree_steps(t, 0, w.steps);
    return w;
}

Loop tree_to_loop(const DecoratedTree& t, int dim) { return erase_backtracks(tree_walk(t, dim)); }

long tree_area(const DecoratedTree& t) {
    t.validate();
    long s = 0;
    for (const auto& v : t.levels) s += v.g;
    return s;
}

namespace {

void grow_trees(int budget, std::vector<TreeLevel>& cur, std::vector<DecoratedTree>& out) {
    for (int g = 1; g <= budget; ++g) {
        for (int sigma : {1, -1}) {
            cur.push_back({g, 0, sigma});
            out.push_back({cur});
            cur.pop_back();
            for (int k = 1; k <= g; ++k) {
                cur.push_back({g, k, sigma});
                grow_trees(budget - g, cur, out);
                cur.pop_back();
            }
        }
    }
}

}  // namespace

std::vector<DecoratedTree> enumerate_trees(int max_area) {
    std::vector<DecoratedTree> out;
    std::vector<TreeLevel> cur;
    grow_trees(max_area, cur, out);
    return out;
}

}  // namespace wloop
