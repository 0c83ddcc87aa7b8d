#include "wloop/loop_text.hpp"

#include <cctype>
#include <charconv>

#include "wloop/errors.hpp"

namespace wloop {

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool done() {
        skip_ws();
        return i_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++i_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool accept_word(std::string_view w) {
        skip_ws();
        if (s_.substr(i_, w.size()) != w) return false;
        std::size_t e = i_ + w.size();
        if (e < s_.size() && std::isalnum(static_cast<unsigned char>(s_[e]))) return false;
        i_ = e;
        return true;
    }
    long integer() {
        skip_ws();
        std::size_t start = i_;
        if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) ++i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        long v = 0;
        const char* b = s_.data() + start;
        if (*b == '+') ++b;
        auto [p, ec] = std::from_chars(b, s_.data() + i_, v);
        if (ec != std::errc() || p != s_.data() + i_) {
            i_ = start;
            fail("expected an integer");
        }
        return v;
    }
    std::size_t pos() const { return i_; }
    void advance() { ++i_; }
    char raw() const { return i_ < s_.size() ? s_[i_] : '\0'; }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }

private:
    std::string_view s_;
    std::size_t i_ = 0;
};

int parse_axis(Cursor& c, int dim) {
    char ch = c.peek();
    int axis = -1;
    switch (ch) {
        case 'x': axis = 0; break;
        case 'y': axis = 1; break;
        case 'z': axis = 2; break;
        case 'w': axis = 3; break;
        case 'a': {
            c.advance();
            if (!std::isdigit(static_cast<unsigned char>(c.raw()))) c.fail("expected axis number after 'a'");
            long n = 0;
            while (std::isdigit(static_cast<unsigned char>(c.raw()))) {
                n = n * 10 + (c.raw() - '0');
                c.advance();
            }
            if (n < 1 || n > dim) c.fail("axis a" + std::to_string(n) + " out of range for dimension " + std::to_string(dim));
            return static_cast<int>(n - 1);
        }
        default: c.fail(std::string("unexpected character '") + ch + "'");
    }
    if (axis >= dim) c.fail(std::string("axis '") + ch + "' out of range for dimension " + std::to_string(dim));
    c.advance();
    return axis;
}

Step parse_step(Cursor& c, int dim) {
    int axis = parse_axis(c, dim);
    char s = c.raw();
    if (s != '+' && s != '-') c.fail("expected '+' or '-' after axis");
    c.advance();
    return Step(axis, s == '+' ? 1 : -1);
}

Site parse_site(Cursor& c, int dim) {
    c.expect('(');
    std::vector<int> v;
    do {
        v.push_back(static_cast<int>(c.integer()));
    } while (c.accept(','));
    c.expect(')');
    if (static_cast<int>(v.size()) != dim) c.fail("site has " + std::to_string(v.size()) + " coordinates, dimension is " + std::to_string(dim));
    return Site(std::move(v));
}

DecoratedTree parse_tree_body(Cursor& c) {
    DecoratedTree t;
    c.expect('[');
    do {
        c.expect('(');
        TreeLevel v;
        v.g = static_cast<int>(c.integer());
        c.expect(',');
        v.k = static_cast<int>(c.integer());
        c.expect(',');
        if (c.peek() == '+' || c.peek() == '-') {
            char sgn = c.peek();
            c.advance();
            if (std::isdigit(static_cast<unsigned char>(c.raw()))) {
                long m = c.integer();
                v.sigma = static_cast<int>(sgn == '-' ? -m : m);
            } else {
                v.sigma = sgn == '-' ? -1 : 1;
            }
        } else {
            v.sigma = static_cast<int>(c.integer());
        }
        c.expect(')');
        t.levels.push_back(v);
    } while (c.accept(','));
    c.expect(']');
    try {
        t.validate();
    } catch (const InvalidArgument& e) {
        c.fail(e.what());
    }
    return t;
}

long positive_arg(Cursor& c, const char* what) {
    long v = c.integer();
    if (v < 1) c.fail(std::string(what) + " must be >= 1");
    return v;
}

ClosedWalk parse_one(Cursor& c, int dim) {
    check_dim(dim);
    if (c.accept_word("null")) return {Site(dim), {}};
    if (c.accept_word("rect")) {
        long w = positive_arg(c, "rect width");
        long h = positive_arg(c, "rect height");
        return rect_walk(static_cast<int>(w), static_cast<int>(h), dim);
    }
    if (c.accept_word("wrap")) return wrap_walk(static_cast<int>(positive_arg(c, "wrap count")), dim);
    if (c.accept_word("commutator")) return commutator_walk(static_cast<int>(positive_arg(c, "commutator power")), dim);
    if (c.accept_word("tree")) return tree_walk(parse_tree_body(c), dim);
    ClosedWalk w{Site(dim), {}};
    if (c.accept('@')) w.basepoint = parse_site(c, dim);
    while (!c.done() && c.peek() != ';') w.steps.push_back(parse_step(c, dim));
    return w;
}

void expect_end(Cursor& c) {
    if (!c.done()) c.fail("trailing input");
}

}  // namespace

ClosedWalk rect_walk(int w, int h, int dim) {
    if (w < 1 || h < 1) throw InvalidArgument("rectangle sides must be >= 1");
    ClosedWalk r{Site(dim), {}};
    r.steps.insert(r.steps.end(), static_cast<std::size_t>(h), Step(1, 1));
    r.steps.insert(r.steps.end(), static_cast<std::size_t>(w), Step(0, 1));
    r.steps.insert(r.steps.end(), static_cast<std::size_t>(h), Step(1, -1));
    r.steps.insert(r.steps.end(), static_cast<std::size_t>(w), Step(0, -1));
    return r;
}

ClosedWalk wrap_walk(int k, int dim) {
    if (k < 1) throw InvalidArgument("wrap count must be >= 1");
    ClosedWalk r{Site(dim), {}};
    for (int i = 0; i < k; ++i) r.steps.insert(r.steps.end(), {Step(1, 1), Step(0, 1), Step(1, -1), Step(0, -1)});
    return r;
}

ClosedWalk commutator_walk(int k, int dim) {
    if (k < 1) throw InvalidArgument("commutator power must be >= 1");
    // a: origin plaquette, clockwise; b: the plaquette left of the y-axis, entered upward along
    // the shared edge.
    const std::vector<Step> a = {Step(1, 1), Step(0, 1), Step(1, -1), Step(0, -1)};
    const std::vector<Step> b = {Step(1, 1), Step(0, -1), Step(1, -1), Step(0, 1)};
    ClosedWalk pa{Site(dim), a}, pb{Site(dim), b};
    ClosedWalk one = concat(concat(pa, pb), concat(reverse(pa), reverse(pb)));
    ClosedWalk r{Site(dim), {}};
    for (int i = 0; i < k; ++i) r = concat(r, one);
    return r;
}

ClosedWalk parse_walk(std::string_view text, int dim) {
    Cursor c(text);
    ClosedWalk w = parse_one(c, dim);
    expect_end(c);
    return w;
}

Loop parse_loop(std::string_view text, int dim) {
    ClosedWalk w = parse_walk(text, dim);
    if (!w.is_closed()) throw ParseError("walk is not closed", text.size());
    return erase_backtracks(w);
}

LoopSequence parse_sequence(std::string_view text, int dim) {
    Cursor c(text);
    LoopSequence s;
    do {
        std::size_t start = c.pos();
        ClosedWalk w = parse_one(c, dim);
        if (!w.is_closed()) throw ParseError("walk is not closed", start);
        s.push_back(erase_backtracks(w));
    } while (c.accept(';'));
    expect_end(c);
    return s;
}

DecoratedTree parse_tree(std::string_view text) {
    Cursor c(text);
    c.accept_word("tree");
    DecoratedTree t = parse_tree_body(c);
    expect_end(c);
    return t;
}

DirectedEdge parse_edge(std::string_view text, int dim) {
    ClosedWalk w = parse_walk(text, dim);
    if (w.steps.size() != 1) throw ParseError("an edge is a basepoint and exactly one step", 0);
    return w.edge(0);
}

std::string axis_name(int axis, int dim) {
    if (dim <= 4) return std::string(1, "xyzw"[axis]);
    return "a" + std::to_string(axis + 1);
}

std::string format_step(Step s, int dim) { return axis_name(s.axis(), dim) + (s.sign() > 0 ? "+" : "-"); }

std::string format_steps(const std::vector<Step>& steps, int dim) {
    std::string out;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i) out += ' ';
        out += format_step(steps[i], dim);
    }
    return out;
}

std::string format_site(const Site& s) {
    std::string out = "(";
    for (int i = 0; i < s.dim(); ++i) {
        if (i) out += ',';
        out += std::to_string(s[i]);
    }
    return out + ")";
}

std::string format_walk(const ClosedWalk& w) {
    std::string out = "@" + format_site(w.basepoint);
    if (!w.steps.empty()) out += " " + format_steps(w.steps, w.dim());
    return out;
}

std::string format_loop(const Loop& l) {
    if (l.is_null()) return "null";
    return format_steps(l.steps(), l.dim());
}

std::string format_sequence(const LoopSequence& s, int dim) {
    if (s.empty()) return "null";
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += " ; ";
        out += format_loop(s[i]);
    }
    (void)dim;
    return out;
}

std::string format_edge(const DirectedEdge& e) { return "@" + format_site(e.tail) + " " + format_step(e.step, e.tail.dim()); }

std::string format_tree(const DecoratedTree& t) {
    std::string out = "tree [";
    for (std::size_t i = 0; i < t.levels.size(); ++i) {
        const auto& v = t.levels[i];
        if (i) out += ',';
        out += "(" + std::to_string(v.g) + "," + std::to_string(v.k) + "," + (v.sigma > 0 ? "+1" : "-1") + ")";
    }
    return out + "]";
}

}  // namespace wloop
