// Runs every acceptance criterion and prints one PASS/FAIL line each. Exit status is the
// number of failures (capped).
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "support.hpp"
#include "wloop/errors.hpp"
#include "wloop/freeprob.hpp"
#include "wloop/gauge.hpp"
#include "wloop/loop_text.hpp"
#include "wloop/mc.hpp"
#include "wloop/solver.hpp"
#include "wloop/trajectory.hpp"

using namespace wloop;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string str(const BetaPolynomial& p) { return p.to_string(true); }

Outcome c1_plaquette() {
    Outcome o;
    MleSolver s;
    BetaPolynomial p = s.polynomial(parse_loop("rect 1 1", 2), 6);
    o.check(p == BetaPolynomial::monomial(1), "got " + str(p));
    o.detail = o.pass ? "poly = " + str(p) : o.detail;
    return o;
}

Outcome c2_simple_loops() {
    Outcome o;
    const std::pair<const char*, int> cases[] = {
        {"rect 1 2", 2}, {"rect 2 2", 4}, {"rect 1 3", 3}, {"x+ x+ y+ x- y+ x- y- y-", 3}};
    MleSolver s;
    for (auto [spec, a] : cases) {
        Loop l = parse_loop(spec, 2);
        o.check(area(l) == a, std::string(spec) + ": area " + std::to_string(area(l)));
        BetaPolynomial p = s.polynomial(l, a + 2);
        o.check(p == BetaPolynomial::monomial(a), std::string(spec) + ": " + str(p));
    }
    if (o.pass) o.detail = "beta^area for 1x2, 2x2, 1x3 and an L of area 3";
    return o;
}

Outcome c3_wrapped() {
    Outcome o;
    MleSolver s;
    for (int k : {2, 3}) {
        BetaPolynomial p = s.polynomial(parse_loop("wrap " + std::to_string(k), 2), 5);
        o.check(p.is_zero(), "wrap " + std::to_string(k) + ": " + str(p));
    }
    if (o.pass) o.detail = "wrap 2, wrap 3 vanish up to k = 5";
    return o;
}

FreeWord commutator_word(int k) {
    FreeWord c{{{0, 1}, {1, 1}, {0, -1}, {1, -1}}};
    return c.power(k);
}

Outcome c4_commutator_freeprob() {
    Outcome o;
    CumulantTable t;
    for (int k : {1, 2}) {
        BetaPolynomial p = word_moment(commutator_word(k), t);
        for (int j = 0; j < k; ++j) o.check(p.coeff(j) == 0, "k=" + std::to_string(k) + " a_" + std::to_string(j) + " != 0");
        Rational want = -Rational(catalan(static_cast<unsigned>(2 * k - 1)));
        o.check(p.coeff(4 * k) == want, "k=" + std::to_string(k) + " a_4k = " + to_string(p.coeff(4 * k)));
        o.check(p.degree() <= 4 * k, "degree above 4k");
        o.detail += (o.detail.empty() ? "" : ", ") + std::string("l_") + std::to_string(k) + ": " + str(p);
    }
    return o;
}

// Freeprob gives a_2(l_1) = 2 (phi(a b a^-1 b^-1) = 2 beta^2 - beta^4), so the solver is held to
// the oracle at every k rather than to zeros at k = 1, 2.
Outcome c5_commutator_solver() {
    Outcome o;
    SolverConfig cfg;
    cfg.budget.max_seconds = 600;
    MleSolver s(cfg);
    Loop l = parse_loop("commutator 1", 2);
    CumulantTable t;
    BetaPolynomial oracle = word_moment(commutator_word(1), t);
    std::string got;
    for (int k = 0; k <= 4; ++k) {
        try {
            Rational c = s.coefficient(l, k);
            got += (got.empty() ? "" : " ") + ("a" + std::to_string(k) + "=" + to_string(c));
            o.check(c == oracle.coeff(k), "a_" + std::to_string(k) + " = " + to_string(c) + ", oracle " + to_string(oracle.coeff(k)));
        } catch (const BudgetExceeded& e) {
            o.check(k >= 3, "budget exceeded at k=" + std::to_string(k));
            got += " a" + std::to_string(k) + "=budget";
        }
    }
    o.check(s.coefficient(l, 0) == 0, "a_0 != 0");
    o.check(s.coefficient(l, 4) == -1, "a_4 != -1");
    o.detail = o.pass ? got + " (matches freeprob)" : got + ": " + o.detail;
    return o;
}

Outcome oracle_suite(EdgePolicy policy, std::uint64_t seed, std::vector<BetaPolynomial>* record, const std::vector<BetaPolynomial>* reference) {
    Outcome o;
    auto loops = testing::random_loops(30, 10, 20240917);
    SolverConfig cfg;
    cfg.policy = policy;
    cfg.seed = seed;
    MleSolver s(cfg);
    CumulantTable t;
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < loops.size(); ++i) {
        BetaPolynomial a = s.polynomial(loops[i], 4);
        BetaPolynomial b = gauge_polynomial(loops[i], t, 64).truncated(4);
        o.check(a == b, format_loop(loops[i]) + ": solver " + str(a) + " oracle " + str(b));
        if (reference) o.check(a == (*reference)[i], format_loop(loops[i]) + ": differs from lexmin");
        if (record) record->push_back(a);
        nonzero += !a.is_zero();
    }
    if (o.pass)
        o.detail = std::to_string(loops.size()) + " loops (" + std::to_string(nonzero) + " nonzero), policy " + to_string(policy);
    return o;
}

Outcome c8_trees() {
    Outcome o;
    SolverConfig cfg;
    cfg.area_pruning = false;
    MleSolver s(cfg);
    auto trees = enumerate_trees(4);
    std::size_t paths = 0;
    for (const auto& t : trees) {
        Loop l = tree_to_loop(t);
        long a = tree_area(t);
        o.check(area(l) == a, format_tree(t) + ": area mismatch");
        for (int k = 0; k < a; ++k) o.check(s.coefficient(l, k) == 0, format_tree(t) + ": a_" + std::to_string(k) + " != 0");
        Rational top = s.coefficient(l, static_cast<int>(a));
        o.check((top == 1) == t.is_path(), format_tree(t) + ": a_area = " + to_string(top));
        paths += t.is_path();
    }
    if (o.pass) o.detail = std::to_string(trees.size()) + " trees, " + std::to_string(paths) + " paths, pruning off";
    return o;
}

Outcome c9_factorization() {
    Outcome o;
    const std::pair<const char*, const char*> pairs[] = {
        {"rect 1 1", "@(3,0) x+ y+ x- y-"},
        {"rect 1 2", "@(5,5) x+ y+ x- y-"},
        {"rect 2 1", "@(-4,0) y+ y+ x+ y- y- x-"},
        {"x+ x+ y+ x- y+ x- y- y-", "@(0,6) x+ x+ y+ x- x- y-"},
        {"rect 2 2", "@(-3,-3) y+ x+ y- x-"},
    };
    MleSolver s;
    for (auto [a, b] : pairs) {
        Loop la = parse_loop(a, 2), lb = parse_loop(b, 2);
        BetaPolynomial joint = s.polynomial(LoopSequence({la, lb}), 4);
        BetaPolynomial prod = (s.polynomial(la, 4) * s.polynomial(lb, 4)).truncated(4);
        o.check(joint == prod, std::string(a) + " ; " + b + ": " + str(joint) + " vs " + str(prod));
    }
    if (o.pass) o.detail = "5 pairs up to k = 4";
    return o;
}

Outcome c10_nc_kernel() {
    Outcome o;
    for (int n = 1; n <= 10; ++n)
        o.check(enumerate_nc(n).size() == catalan(static_cast<unsigned>(n)).get_ui(), "|NC(" + std::to_string(n) + ")|");
    // sum_{lo <= pi <= hi} mu(lo, pi) = [lo == hi]
    for (int n = 1; n <= 6; ++n) {
        auto all = enumerate_nc(n);
        for (const auto& lo : all)
            for (const auto& hi : all) {
                if (!lo.refines(hi)) continue;
                Rational sum = 0;
                for (const auto& p : all)
                    if (lo.refines(p) && p.refines(hi)) sum += mobius(lo, p);
                o.check(sum == (lo == hi ? 1 : 0), "convolution at n=" + std::to_string(n) + " " + lo.to_string() + " " + hi.to_string());
            }
    }
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> m;
        for (int i = 0; i < 8; ++i) {
            Rational r(num(rng), den(rng));
            r.canonicalize();
            m.push_back(r);
        }
        o.check(moments_from_cumulants(cumulants_from_moments(m)) == m, "moment roundtrip");
        o.check(cumulants_from_moments(moments_from_cumulants(m)) == m, "cumulant roundtrip");
    }
    CumulantTable t;
    BetaPolynomial k2 = t.cumulant({1, -1});
    BetaPolynomial want({1, 0, -1});
    o.check(k2 == want, "k2(a, a^-1) = " + str(k2));
    if (o.pass) o.detail = "Catalan counts n<=10, convolution n<=6, roundtrip n=8, k2(a,a^-1) = " + str(k2);
    return o;
}

Outcome c11_lemma_min() {
    Outcome o;
    for (int n : {4, 8, 12, 16}) {
        auto c = testing::pairing_census(testing::alternating_word(n));
        o.check(4 * c.min_singletons >= n, "n=" + std::to_string(n) + " min " + std::to_string(c.min_singletons));
        o.detail += (o.detail.empty() ? "" : ", ") + ("n=" + std::to_string(n) + ": " + std::to_string(c.partitions) + " partitions, min singletons " + std::to_string(c.min_singletons));
    }
    return o;
}

Outcome c12_audit() {
    Outcome o;
    std::ifstream in(std::string(WLOOP_FIXTURES) + "/worked_example.traj");
    std::stringstream ss;
    ss << in.rdbuf();
    auto traj = parse_trajectory(ss.str(), 2);
    ClosedWalk root = parse_walk("@(0,0) y+ x+ y- x-", 2);
    AuditedWalk w = build_audited_walk(root, traj);
    ClosedWalk want = parse_walk("@(0,0) y+ y- x- y+ x+ x- y- x+ y+ y- x+ y+ x- x+ y- x-", 2);
    o.check(w.walk() == want, "walk " + format_walk(w.walk()));
    o.check(w.blue_positions() == std::vector<std::size_t>{8, 13, 14, 15}, "blue positions");
    o.check(w.partners_are_inverse(), "partners not inverse");
    o.check(w.pairing_noncrossing(), "pairing crosses");
    SingletonAudit all = audit_singletons(w, {});
    o.check(all.deformations == 3 && all.bound_holds == false && all.singletons == 4, "unfiltered audit");
    SingletonAudit f = audit_singletons(w, {parse_edge("@(1,0) y+", 2), parse_edge("@(-1,0) y+", 2)});
    o.check(f.singletons == 1 && f.bound_holds && f.distinct_sources, "filtered audit");
    if (o.pass)
        o.detail = "f3 reproduced, non-crossing, filtered singletons " + std::to_string(f.singletons) + " <= deformations " + std::to_string(f.deformations);
    return o;
}

Outcome c13_monte_carlo() {
    Outcome o;
    char buf[160];
    for (double beta : {0.1, 0.2}) {
        McConfig cfg;
        cfg.N = 40;
        cfg.beta = beta;
        cfg.seed = 11;
        auto gate = [&](const std::string& what, const Estimate& e, double want, double tol) {
            double dev = std::abs(e.mean - want);
            bool ok = dev <= tol && 3 * e.stderr_ <= tol;
            std::snprintf(buf, sizeof buf, "%s(b=%.1f)=%.4f+-%.4f", what.c_str(), beta, e.mean, e.stderr_);
            o.check(ok, buf);
            if (ok) o.detail += (o.detail.empty() ? "" : " ") + std::string(buf);
        };
        gate("plaq", estimate_wilson(parse_loop("rect 1 1", 2), cfg), beta, 0.02);
        gate("rect12", estimate_wilson(parse_loop("rect 1 2", 2), cfg), beta * beta, 0.02);
        cfg.seed = 12;
        SpectralResult r = spectral_histogram(cfg, 32, 3);
        const double want[3] = {beta, 0.5, 0.75 * beta};
        for (int k = 0; k < 3; ++k) gate("Ecos^" + std::to_string(k + 1), r.cos_moments[static_cast<std::size_t>(k)], want[k], 0.03);
    }
    return o;
}

// Frozen from a single solver run (pruning off agrees): a_2 = a_3 = 0, and the first nonzero
// correction is a_5 = 2 from the two unit cubes on either side.
Outcome c14_three_dim() {
    Outcome o;
    SolverConfig cfg;
    cfg.dim = 3;
    MleSolver s(cfg);
    Loop p = parse_loop("rect 1 1", 3);
    o.check(s.coefficient(p, 0) == 0, "a_0");
    o.check(s.coefficient(p, 1) == 1, "a_1");
    o.check(s.coefficient(p, 2) == 0, "a_2 regression");
    o.check(s.coefficient(p, 3) == 0, "a_3 regression");
    o.check(s.coefficient(p, 5) == 2, "a_5 regression");
    if (o.pass) o.detail = "a0=0 a1=1 a2=0 a3=0 a5=2";
    return o;
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    std::vector<BetaPolynomial> lexmin;
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {"plaquette law", c1_plaquette},
        {"simple-loop area law", c2_simple_loops},
        {"wrapped plaquette", c3_wrapped},
        {"commutator via freeprob", c4_commutator_freeprob},
        {"commutator via solver", c5_commutator_solver},
        {"oracle equivalence", [&] { return oracle_suite(EdgePolicy::LexMin, 0, &lexmin, nullptr); }},
        {"edge-policy independence", [&] {
             Outcome a = oracle_suite(EdgePolicy::TopmostHorizontal, 0, nullptr, &lexmin);
             Outcome b = oracle_suite(EdgePolicy::SeededRandom, 99, nullptr, &lexmin);
             a.check(b.pass, b.detail);
             if (a.pass) a.detail = "topmost and seeded-random match lexmin on all loops";
             return a;
         }},
        {"area-law zeros on trees", c8_trees},
        {"factorization", c9_factorization},
        {"NC/Mobius kernel", c10_nc_kernel},
        {"singleton lower bound", c11_lemma_min},
        {"trajectory audit", c12_audit},
        {"Monte Carlo N=40", c13_monte_carlo},
        {"d=3 plaquette", c14_three_dim},
    };
    int failed = 0, idx = 0;
    for (const auto& c : criteria) {
        ++idx;
        auto t0 = clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double sec = std::chrono::duration<double>(clock::now() - t0).count();
        failed += !o.pass;
        char t[32];
        std::snprintf(t, sizeof t, "%.2fs", sec);
        std::cout << (o.pass ? "PASS " : "FAIL ") << idx << ". " << c.name << " [" << t << "]: " << o.detail << std::endl;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << (14 - failed) << "/14" << std::endl;
    return failed > 100 ? 100 : failed;
}
