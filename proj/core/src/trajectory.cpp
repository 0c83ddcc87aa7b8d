#include "wloop/trajectory.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "wloop/detail/words.hpp"
#include "wloop/errors.hpp"
#include "wloop/loop_text.hpp"

namespace wloop {

namespace {

Loop make(int dim, const std::string& w) { return Loop::from_canonical_codes(dim, detail::canonical_loop_codes(w)); }

// The raw (unreduced) results of a move on a canonical word, in a layout where the loop's own
// positions keep their order: see build_audited_walk.
struct Raw {
    std::vector<std::string> parts;
    std::size_t x = 0, y = 0;
};

Raw raw_move(const Loop& l, const Move& m) {
    Raw r;
    const std::string& w = l.codes();
    auto in_range = [&](Location p) {
        if (p.index >= w.size()) throw InvalidArgument("location " + std::to_string(p.index) + " out of range for loop of length " + std::to_string(w.size()));
    };
    in_range(m.x);
    r.x = m.x.index;
    switch (m.kind) {
        case MoveKind::DeformNeg:
        case MoveKind::DeformPos: {
            if (m.plaquette.corner.dim() != l.dim()) throw InvalidArgument("plaquette dimension does not match the loop");
            auto side = detail::side_of(l.edge(r.x), m.plaquette);
            r.parts.push_back(m.kind == MoveKind::DeformNeg ? detail::deform_neg_word(w, r.x, side) : detail::deform_pos_word(w, r.x, side));
            return r;
        }
        case MoveKind::SplitPos:
        case MoveKind::SplitNeg: {
            in_range(m.y);
            if (m.x == m.y) throw InvalidArgument("split needs two distinct locations");
            r.x = std::min(m.x.index, m.y.index);
            r.y = std::max(m.x.index, m.y.index);
            DirectedEdge ex = l.edge(r.x), ey = l.edge(r.y);
            if (m.kind == MoveKind::SplitPos) {
                if (ex != ey) throw InvalidArgument("positive split needs two occurrences of the same directed edge");
                r.parts.push_back(w.substr(0, r.x) + w.substr(r.y));
                r.parts.push_back(w.substr(r.x, r.y - r.x));
            } else {
                if (ex != ey.reversed()) throw InvalidArgument("negative split needs an edge and its reverse");
                r.parts.push_back(w.substr(0, r.x) + w.substr(r.y + 1));
                r.parts.push_back(w.substr(r.x + 1, r.y - r.x - 1));
            }
            return r;
        }
    }
    return r;
}

}  // namespace

LoopSequence apply_move(const LoopSequence& s, const Move& m) {
    if (m.loop >= s.size()) throw InvalidArgument("move refers to loop " + std::to_string(m.loop) + " but the sequence has " + std::to_string(s.size()));
    const Loop& l = s[m.loop];
    Raw raw = raw_move(l, m);
    std::vector<Loop> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i != m.loop) {
            out.push_back(s[i]);
            continue;
        }
        // Splits list the piece containing the first chosen location first.
        if (raw.parts.size() == 2) std::swap(raw.parts[0], raw.parts[1]);
        for (const auto& p : raw.parts) out.push_back(make(l.dim(), p));
    }
    return LoopSequence(std::move(out));
}

// ---- text format ----

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

long to_long(const std::string& v, std::size_t line, const std::string& what) {
    long r = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), r);
    if (ec != std::errc() || p != v.data() + v.size()) throw ParseError("line " + std::to_string(line) + ": bad " + what + " '" + v + "'", line);
    return r;
}

Plaquette parse_plq(const std::string& v, int dim, std::size_t line) {
    // (a,b)@(c1,...,cd)[+-]
    auto fail = [&](const std::string& why) -> Plaquette { throw ParseError("line " + std::to_string(line) + ": " + why + " in plaquette '" + v + "'", line); };
    auto at = v.find('@');
    if (at == std::string::npos || v.size() < 2 || v.front() != '(') return fail("expected (a,b)@(corner)");
    std::string axes = v.substr(1, at - 1);
    if (axes.empty() || axes.back() != ')') return fail("expected (a,b)");
    axes.pop_back();
    auto comma = axes.find(',');
    if (comma == std::string::npos) return fail("expected two axes");
    int a = static_cast<int>(to_long(trim(axes.substr(0, comma)), line, "axis"));
    int b = static_cast<int>(to_long(trim(axes.substr(comma + 1)), line, "axis"));
    std::string rest = v.substr(at + 1);
    int orient = 1;
    if (!rest.empty() && (rest.back() == '+' || rest.back() == '-')) {
        orient = rest.back() == '+' ? 1 : -1;
        rest.pop_back();
    }
    try {
        ClosedWalk w = parse_walk("@" + rest, dim);
        return make_plaquette(w.basepoint, a, b, orient);
    } catch (const ParseError& e) {
        return fail(e.what());
    } catch (const InvalidArgument& e) {
        return fail(e.what());
    }
}

}  // namespace

std::vector<Move> parse_trajectory(std::string_view text, int dim) {
    check_dim(dim);
    std::vector<Move> out;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
        std::istringstream ls(raw);
        std::string tok;
        if (!(ls >> tok)) continue;
        Move m;
        if (tok == "DEF+") m.kind = MoveKind::DeformPos;
        else if (tok == "DEF-") m.kind = MoveKind::DeformNeg;
        else if (tok == "SPLIT+") m.kind = MoveKind::SplitPos;
        else if (tok == "SPLIT-") m.kind = MoveKind::SplitNeg;
        else throw ParseError("line " + std::to_string(lineno) + ": unknown move '" + tok + "'", lineno);
        bool have_x = false, have_y = false, have_p = false;
        while (ls >> tok) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key=value, got '" + tok + "'", lineno);
            std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
            if (key == "loop") {
                m.loop = static_cast<std::size_t>(to_long(val, lineno, "loop index"));
            } else if (key == "loc" || key == "x") {
                m.x = {static_cast<std::size_t>(to_long(val, lineno, "location"))};
                have_x = true;
            } else if (key == "y") {
                m.y = {static_cast<std::size_t>(to_long(val, lineno, "location"))};
                have_y = true;
            } else if (key == "plq") {
                m.plaquette = parse_plq(val, dim, lineno);
                have_p = true;
            } else {
                throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'", lineno);
            }
        }
        if (!have_x) throw ParseError("line " + std::to_string(lineno) + ": missing location", lineno);
        if (m.is_deformation() && !have_p) throw ParseError("line " + std::to_string(lineno) + ": deformation needs plq=", lineno);
        if (!m.is_deformation() && !have_y) throw ParseError("line " + std::to_string(lineno) + ": split needs y=", lineno);
        out.push_back(m);
    }
    return out;
}

std::string format_move(const Move& m) {
    std::string s;
    switch (m.kind) {
        case MoveKind::DeformPos: s = "DEF+"; break;
        case MoveKind::DeformNeg: s = "DEF-"; break;
        case MoveKind::SplitPos: s = "SPLIT+"; break;
        case MoveKind::SplitNeg: s = "SPLIT-"; break;
    }
    s += " loop=" + std::to_string(m.loop);
    if (m.is_deformation()) {
        s += " loc=" + std::to_string(m.x.index);
        s += " plq=(" + std::to_string(m.plaquette.axis_lo) + "," + std::to_string(m.plaquette.axis_hi) + ")@" + format_site(m.plaquette.corner) +
             (m.plaquette.orientation > 0 ? "+" : "-");
    } else {
        s += " x=" + std::to_string(m.x.index) + " y=" + std::to_string(m.y.index);
    }
    return s;
}

// ---- audited walk ----

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Entry {
    Step step;
    std::size_t partner = kNone;
    int origin = -1;
};

// f(L) for a canonical loop L, with embed[i] the entry carrying L's i-th edge.
struct Fragment {
    std::vector<Entry> e;
    std::vector<std::size_t> embed;
};

struct Inst {
    std::string codes;
    int move = -1;
    Raw raw;
    std::vector<int> kids;  // per raw part; -1 when it erases to the null loop
};

class Builder {
public:
    Builder(int dim, const std::vector<Move>& traj) : dim_(dim), traj_(traj) {}

    int add(const std::string& w) {
        std::string c = detail::canonical_loop_codes(w);
        if (c.empty()) return -1;
        insts_.push_back({c, -1, {}, {}});
        return static_cast<int>(insts_.size()) - 1;
    }

    void simulate(int root) {
        std::vector<int> seq;
        if (root >= 0) seq.push_back(root);
        for (std::size_t j = 0; j < traj_.size(); ++j) {
            const Move& m = traj_[j];
            if (m.loop >= seq.size())
                throw InvalidArgument("move " + std::to_string(j + 1) + " refers to loop " + std::to_string(m.loop) + " but the sequence has " + std::to_string(seq.size()));
            int id = seq[m.loop];
            Raw raw;
            try {
                raw = raw_move(Loop::from_canonical_codes(dim_, insts_[static_cast<std::size_t>(id)].codes), m);
            } catch (const InvalidArgument& e) {
                throw InvalidArgument("move " + std::to_string(j + 1) + " (" + format_move(m) + "): " + e.what());
            }
            std::vector<int> kids;
            for (const auto& p : raw.parts) kids.push_back(add(p));
            Inst& in = insts_[static_cast<std::size_t>(id)];
            in.move = static_cast<int>(j);
            in.raw = std::move(raw);
            in.kids = kids;
            std::vector<int> next;
            for (std::size_t i = 0; i < seq.size(); ++i) {
                if (i != m.loop) {
                    next.push_back(seq[i]);
                    continue;
                }
                // Same ordering as apply_move.
                for (auto it = kids.rbegin(); it != kids.rend(); ++it)
                    if (*it >= 0) next.push_back(*it);
            }
            seq = std::move(next);
        }
        if (!seq.empty()) throw InvalidArgument("trajectory does not reduce the loop to the null sequence (" + std::to_string(seq.size()) + " loop(s) left)");
    }

    // f(U) for a raw walk U whose erasure is instance `kid`; embed covers every position of U.
    Fragment from_raw(const std::string& U, int kid) {
        const std::size_t n = U.size();
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        detail::reduce_linear(U, &pairs);
        std::vector<std::size_t> partner_u(n, kNone);
        for (auto [a, b] : pairs) {
            partner_u[a] = b;
            partner_u[b] = a;
        }
        std::vector<std::size_t> rem;
        for (std::size_t i = 0; i < n; ++i)
            if (partner_u[i] == kNone) rem.push_back(i);
        std::size_t lo = 0, hi = rem.size();
        while (hi - lo >= 2 && static_cast<unsigned char>(U[rem[lo]]) == detail::inv(static_cast<unsigned char>(U[rem[hi - 1]]))) {
            partner_u[rem[lo]] = rem[hi - 1];
            partner_u[rem[hi - 1]] = rem[lo];
            ++lo;
            --hi;
        }
        std::vector<std::size_t> core(rem.begin() + static_cast<long>(lo), rem.begin() + static_cast<long>(hi));

        Fragment out;
        out.embed.assign(n, kNone);
        if (core.empty()) {
            for (std::size_t i = 0; i < n; ++i) {
                out.e.push_back({Step::from_code(static_cast<unsigned char>(U[i])), partner_u[i], -1});
                out.embed[i] = i;
            }
            return out;
        }
        if (kid < 0) throw Error("internal: non-null core without an instance");

        const Fragment L = build(kid);
        const std::string& lc = insts_[static_cast<std::size_t>(kid)].codes;
        const std::size_t m = lc.size(), len = L.e.size();
        std::string W;
        for (std::size_t c : core) W.push_back(U[c]);
        std::size_t r = 0;
        for (; r < m; ++r)
            if (lc.compare(r, m - r, W, 0, m - r) == 0 && lc.compare(0, r, W, m - r, r) == 0) break;
        if (r == m) throw Error("internal: reduced walk is not a rotation of its canonical loop");

        // Rotate f(L) to start right after the entry of W's last edge, so that each edge of W
        // owns the red entries just before it.
        const std::size_t start = (L.embed[(m - 1 + r) % m] + 1) % len;
        auto rot = [&](std::size_t p) { return (p + len - start) % len; };
        std::vector<std::size_t> ew(m);
        for (std::size_t i = 0; i < m; ++i) ew[i] = rot(L.embed[(i + r) % m]);

        std::vector<std::size_t> new_of_rot(len, kNone), pos_of_u(n, kNone);
        std::vector<std::pair<std::size_t, bool>> src;  // (index, from L) per output entry
        std::size_t ci = 0;
        for (std::size_t u = 0; u < n; ++u) {
            if (ci < m && core[ci] == u) {
                std::size_t a = ci == 0 ? 0 : ew[ci - 1] + 1;
                for (std::size_t t = a; t <= ew[ci]; ++t) {
                    new_of_rot[t] = src.size();
                    src.push_back({t, true});
                }
                pos_of_u[u] = src.size() - 1;
                ++ci;
            } else {
                pos_of_u[u] = src.size();
                src.push_back({u, false});
            }
        }
        for (const auto& [idx, fromL] : src) {
            if (fromL) {
                const Entry& le = L.e[(idx + start) % len];
                out.e.push_back({le.step, new_of_rot[rot(le.partner)], le.origin});
            } else {
                out.e.push_back({Step::from_code(static_cast<unsigned char>(U[idx])), pos_of_u[partner_u[idx]], -1});
            }
        }
        out.embed = pos_of_u;
        return out;
    }

    Fragment build(int id) {
        const Inst& in = insts_[static_cast<std::size_t>(id)];
        if (in.move < 0) throw Error("internal: loop left untouched by the trajectory");
        const Move& m = traj_[static_cast<std::size_t>(in.move)];
        const int j = in.move;
        const std::size_t n = in.codes.size(), x = in.raw.x, y = in.raw.y;
        Fragment f;
        f.embed.resize(n);
        switch (m.kind) {
            case MoveKind::DeformPos: {
                // U = a e (3 steps) e b; L sits on a, the second e, b.
                Fragment g = from_raw(in.raw.parts[0], in.kids[0]);
                for (std::size_t t = x; t < x + 4; ++t) mark(g, g.embed[t], j);
                for (std::size_t i = 0; i < n; ++i) f.embed[i] = g.embed[i < x ? i : i + 4];
                f.e = std::move(g.e);
                return f;
            }
            case MoveKind::DeformNeg: {
                // U = a q b. Insert e e^-1 right after a.
                Fragment g = from_raw(in.raw.parts[0], in.kids[0]);
                for (std::size_t t = x; t < x + 3; ++t) mark(g, g.embed[t], j);
                const std::size_t ins = x == 0 ? 0 : g.embed[x - 1] + 1;
                Step e = Step::from_code(static_cast<unsigned char>(in.codes[x]));
                std::vector<Entry> pair = {{e, ins + 1, -1}, {e.reversed(), ins, j}};
                splice(g, ins, pair);
                for (std::size_t i = 0; i < n; ++i) f.embed[i] = i < x ? g.embed[i] : i == x ? ins : g.embed[i + 2];
                f.e = std::move(g.e);
                return f;
            }
            case MoveKind::SplitPos: {
                // U1 = a e c (e taken at y), U2 = e b (e taken at x). f = ... a f(U2) ... e c ...
                Fragment g1 = from_raw(in.raw.parts[0], in.kids[0]);
                Fragment g2 = from_raw(in.raw.parts[1], in.kids[1]);
                const std::size_t ins = x == 0 ? 0 : g1.embed[x - 1] + 1;
                const std::size_t k = g2.e.size();
                for (auto& en : g2.e) en.partner += ins;
                splice(g1, ins, g2.e);
                for (std::size_t i = 0; i < n; ++i) {
                    if (i < x) f.embed[i] = g1.embed[i];
                    else if (i < y) f.embed[i] = ins + g2.embed[i - x];
                    else f.embed[i] = g1.embed[x + (i - y)];
                }
                (void)k;
                f.e = std::move(g1.e);
                return f;
            }
            case MoveKind::SplitNeg: {
                // U1 = a c, U2 = b. f = ... a e f(b) e^-1 ... c ...
                Fragment g1 = from_raw(in.raw.parts[0], in.kids[0]);
                Fragment g2 = from_raw(in.raw.parts[1], in.kids[1]);
                const std::size_t ins = x == 0 ? 0 : g1.embed[x - 1] + 1;
                const std::size_t k = g2.e.size();
                std::vector<Entry> block;
                Step ex = Step::from_code(static_cast<unsigned char>(in.codes[x]));
                Step ey = Step::from_code(static_cast<unsigned char>(in.codes[y]));
                block.push_back({ex, ins + k + 1, -1});
                for (auto en : g2.e) {
                    en.partner += ins + 1;
                    block.push_back(en);
                }
                block.push_back({ey, ins, -1});
                splice(g1, ins, block);
                for (std::size_t i = 0; i < n; ++i) {
                    if (i < x) f.embed[i] = g1.embed[i];
                    else if (i == x) f.embed[i] = ins;
                    else if (i < y) f.embed[i] = ins + 1 + g2.embed[i - x - 1];
                    else if (i == y) f.embed[i] = ins + k + 1;
                    else f.embed[i] = g1.embed[x + (i - y - 1)];
                }
                f.e = std::move(g1.e);
                return f;
            }
        }
        return f;
    }

    const std::vector<Move>& traj() const { return traj_; }

private:
    static void mark(Fragment& g, std::size_t pos, int move) {
        if (g.e[pos].origin < 0) g.e[pos].origin = move;
    }

    // Insert `block` (partners already absolute) at position ins, shifting g around it.
    static void splice(Fragment& g, std::size_t ins, const std::vector<Entry>& block) {
        const std::size_t k = block.size();
        auto shift = [&](std::size_t p) { return p >= ins ? p + k : p; };
        for (auto& en : g.e) en.partner = shift(en.partner);
        for (auto& p : g.embed) p = shift(p);
        g.e.insert(g.e.begin() + static_cast<long>(ins), block.begin(), block.end());
    }

    int dim_;
    const std::vector<Move>& traj_;
    std::vector<Inst> insts_;
};

}  // namespace

std::vector<std::size_t> AuditedWalk::blue_positions() const {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < colors.size(); ++i)
        if (colors[i] == Color::Blue) r.push_back(i);
    return r;
}

bool AuditedWalk::partners_are_inverse() const {
    for (std::size_t i = 0; i < steps.size(); ++i) {
        std::size_t p = partner[i];
        if (p >= steps.size() || p == i || partner[p] != i || steps[p] != steps[i].reversed()) return false;
    }
    auto e = walk().edges();
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[partner[i]] != e[i].reversed()) return false;
    return true;
}

bool AuditedWalk::pairing_noncrossing() const {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < partner.size(); ++i) {
        if (partner[i] > i) {
            open.push_back(i);
        } else {
            if (open.empty() || open.back() != partner[i]) return false;
            open.pop_back();
        }
    }
    return open.empty();
}

AuditedWalk build_audited_walk(const ClosedWalk& root, const std::vector<Move>& trajectory) {
    check_dim(root.dim());
    if (!root.is_closed()) throw InvalidArgument("root walk is not closed");
    Builder b(root.dim(), trajectory);
    const std::string U = detail::to_codes(root.steps);
    int r = b.add(U);
    b.simulate(r);
    Fragment f = b.from_raw(U, r);

    AuditedWalk w;
    w.basepoint = root.basepoint;
    w.colors.assign(f.e.size(), Color::Red);
    for (std::size_t p : f.embed) w.colors[p] = Color::Blue;
    for (const auto& en : f.e) {
        w.steps.push_back(en.step);
        w.partner.push_back(en.partner);
        w.origin.push_back(en.origin);
    }
    for (std::size_t i = 0; i < w.colors.size(); ++i)
        if (w.colors[i] == Color::Blue) w.origin[i] = -1;
    for (const auto& m : trajectory) w.deformations += m.is_deformation();
    return w;
}

SingletonAudit audit_singletons(const AuditedWalk& w, const std::vector<DirectedEdge>& filter) {
    SingletonAudit a;
    a.deformations = w.deformations;
    auto edges = w.walk().edges();
    auto selected = [&](std::size_t i) {
        if (w.colors[i] != Color::Blue) return false;
        if (filter.empty()) return true;
        return std::any_of(filter.begin(), filter.end(), [&](const DirectedEdge& f) { return f.same_undirected(edges[i]); });
    };
    std::set<int> sources;
    bool all_red = true;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!selected(i)) continue;
        ++a.filtered;
        std::size_t p = w.partner[i];
        if (selected(p)) continue;
        ++a.singletons;
        a.singleton_positions.push_back(i);
        if (w.colors[p] != Color::Red || w.origin[p] < 0) all_red = false;
        sources.insert(w.origin[p]);
    }
    a.bound_holds = a.singletons <= a.deformations;
    a.distinct_sources = all_red && sources.size() == a.singletons;
    return a;
}

}  // namespace wloop
