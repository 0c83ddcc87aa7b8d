#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "wloop/errors.hpp"
#include "wloop/freeprob.hpp"
#include "wloop/gauge.hpp"
#include "wloop/loop_text.hpp"
#include "wloop/mc.hpp"
#include "wloop/solver.hpp"
#include "wloop/trajectory.hpp"

namespace wloop::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

struct Globals {
    int dim = 2;
    int kmax = 6;
    std::string policy = "lexmin";
    std::uint64_t seed = 0;
    std::string format = "text";
    std::size_t budget_memo = SolverBudget{}.max_memo_entries;
    double budget_seconds = 0;
    bool no_prune = false;
    std::size_t max_letters = 32;
};

struct McArgs {
    int N = 40;
    double beta = 0.1;
    std::size_t samples = 2000;
    std::size_t burn_in = 2000;
    std::size_t thin = 10;
    double eps = 0;
};

Format format_of(const Globals& g) {
    if (g.format == "json") return Format::Json;
    if (g.format == "csv") return Format::Csv;
    return Format::Text;
}

SolverConfig solver_config(const Globals& g) {
    SolverConfig c;
    c.dim = g.dim;
    c.policy = parse_edge_policy(g.policy);
    c.seed = g.seed;
    c.area_pruning = !g.no_prune;
    c.budget.max_memo_entries = g.budget_memo;
    c.budget.max_seconds = g.budget_seconds;
    return c;
}

McConfig mc_config(const Globals& g, const McArgs& a) {
    McConfig c;
    c.N = a.N;
    c.beta = a.beta;
    c.samples = a.samples;
    c.burn_in = a.burn_in;
    c.thin = a.thin;
    c.proposal_scale = a.eps;
    c.seed = g.seed;
    return c;
}

json header(const std::string& cmd, const Globals& g) {
    json j;
    j["schema"] = 1;
    j["command"] = cmd;
    j["dim"] = g.dim;
    return j;
}

json coeff_json(const BetaPolynomial& p, int kmax) {
    json c = json::object();
    for (int k = 0; k <= kmax; ++k) c[std::to_string(k)] = to_string(p.coeff(k));
    return c;
}

json stats_json(const SolverStats& s) {
    return {{"memo_entries", s.memo_entries}, {"memo_hits", s.memo_hits}, {"expansions", s.expansions}, {"pruned", s.pruned}, {"max_depth", s.max_depth}, {"seconds", s.seconds}};
}

void print_poly_csv(std::ostream& out, const BetaPolynomial& p, int kmax) {
    out << "k,coefficient\n";
    for (int k = 0; k <= kmax; ++k) out << k << ',' << to_string(p.coeff(k)) << '\n';
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string colors_string(const AuditedWalk& w) {
    std::string s;
    for (auto c : w.colors) s += c == Color::Blue ? 'B' : 'r';
    return s;
}

// ---- commands ----

int cmd_poly(const Globals& g, const std::string& spec, std::ostream& out) {
    LoopSequence s = parse_sequence(spec, g.dim);
    MleSolver solver(solver_config(g));
    PolynomialReport r = solve_polynomial(solver, s, g.kmax);
    switch (format_of(g)) {
        case Format::Json: {
            json j = header("poly", g);
            j["input"] = spec;
            j["loops"] = format_sequence(s, g.dim);
            j["k_max"] = g.kmax;
            j["policy"] = g.policy;
            j["coefficients"] = coeff_json(r.poly, g.kmax);
            j["polynomial"] = r.poly.to_string();
            j["degree_bound"] = r.degree_bound >= 0 ? json(r.degree_bound) : json(nullptr);
            j["complete"] = r.complete;
            j["stats"] = stats_json(solver.stats());
            out << j.dump(2) << '\n';
            break;
        }
        case Format::Csv: print_poly_csv(out, r.poly, g.kmax); break;
        case Format::Text:
            out << r.poly.to_string() << '\n';
            if (r.degree_bound >= 0)
                out << (r.complete ? "# complete: degree bound " : "# truncated: degree bound ") << r.degree_bound << ", k_max " << g.kmax << '\n';
            else
                out << "# coefficients up to k_max " << g.kmax << '\n';
            break;
    }
    return kOk;
}

int cmd_coeff(const Globals& g, const std::string& spec, int k, std::ostream& out) {
    LoopSequence s = parse_sequence(spec, g.dim);
    MleSolver solver(solver_config(g));
    Rational c = solver.coefficient(s, k);
    switch (format_of(g)) {
        case Format::Json: {
            json j = header("coeff", g);
            j["input"] = spec;
            j["k"] = k;
            j["coefficient"] = to_string(c);
            j["stats"] = stats_json(solver.stats());
            out << j.dump(2) << '\n';
            break;
        }
        case Format::Csv: out << "k,coefficient\n" << k << ',' << to_string(c) << '\n'; break;
        case Format::Text: out << to_string(c) << '\n'; break;
    }
    return kOk;
}

int cmd_compare(const Globals& g, const std::string& spec, std::ostream& out) {
    if (g.dim != 2) throw Unsupported("compare needs the planar gauge oracle (--dim 2)");
    Loop l = parse_loop(spec, g.dim);
    MleSolver solver(solver_config(g));
    BetaPolynomial a = solver.polynomial(l, g.kmax);
    CumulantTable t;
    BetaPolynomial b = gauge_polynomial(l, t, g.max_letters).truncated(g.kmax);
    bool ok = a == b;
    switch (format_of(g)) {
        case Format::Json: {
            json j = header("compare", g);
            j["input"] = spec;
            j["k_max"] = g.kmax;
            j["solver"] = coeff_json(a, g.kmax);
            j["oracle"] = coeff_json(b, g.kmax);
            j["match"] = ok;
            out << j.dump(2) << '\n';
            break;
        }
        case Format::Csv:
            out << "k,solver,oracle\n";
            for (int k = 0; k <= g.kmax; ++k) out << k << ',' << to_string(a.coeff(k)) << ',' << to_string(b.coeff(k)) << '\n';
            break;
        case Format::Text:
            out << "solver: " << a.to_string() << '\n' << "oracle: " << b.to_string() << '\n' << (ok ? "match" : "MISMATCH") << '\n';
            break;
    }
    return ok ? kOk : kOracleMismatch;
}

int cmd_area(const Globals& g, const std::string& spec, std::ostream& out) {
    Loop l = parse_loop(spec, g.dim);
    long a = area(l);
    json j = header("area", g);
    j["input"] = spec;
    j["loop"] = format_loop(l);
    j["area"] = a;
    WindingMap wm;
    if (g.dim == 2) {
        wm = winding_numbers(l);
        json faces = json::array();
        for (const auto& [f, e] : wm.eta) faces.push_back({{"face", f.coords()}, {"eta", e}});
        j["winding"] = faces;
    }
    switch (format_of(g)) {
        case Format::Json: out << j.dump(2) << '\n'; break;
        case Format::Csv:
            out << "x,y,eta\n";
            for (const auto& [f, e] : wm.eta) out << f[0] << ',' << f[1] << ',' << e << '\n';
            break;
        case Format::Text:
            out << a << '\n';
            for (const auto& [f, e] : wm.eta) out << "# face " << format_site(f) << " eta " << e << '\n';
            break;
    }
    return kOk;
}

int cmd_tree(const Globals& g, const std::string& spec, bool with_coeff, std::ostream& out) {
    DecoratedTree t = parse_tree(spec);
    Loop l = tree_to_loop(t, g.dim);
    long ta = tree_area(t);
    json j = header("tree", g);
    j["tree"] = format_tree(t);
    j["loop"] = format_loop(l);
    j["tree_area"] = ta;
    j["area"] = area(l);
    j["path"] = t.is_path();
    Rational c;
    if (with_coeff) {
        MleSolver solver(solver_config(g));
        c = solver.coefficient(l, static_cast<int>(ta));
        j["coefficient_at_area"] = to_string(c);
    }
    switch (format_of(g)) {
        case Format::Json: out << j.dump(2) << '\n'; break;
        case Format::Csv:
            out << "loop,tree_area,area,path" << (with_coeff ? ",coefficient_at_area" : "") << '\n';
            out << '"' << format_loop(l) << "\"," << ta << ',' << area(l) << ',' << t.is_path();
            if (with_coeff) out << ',' << to_string(c);
            out << '\n';
            break;
        case Format::Text:
            out << format_loop(l) << '\n';
            out << "tree_area " << ta << ", area " << area(l) << (t.is_path() ? ", path" : "") << '\n';
            if (with_coeff) out << "a_" << ta << " = " << to_string(c) << '\n';
            break;
    }
    return kOk;
}

int cmd_audit(const Globals& g, const std::string& spec, const std::string& file, const std::string& filter_spec, std::ostream& out) {
    ClosedWalk root = parse_walk(spec, g.dim);
    if (!root.is_closed()) throw ParseError("walk is not closed", spec.size());
    auto traj = parse_trajectory(read_file(file), g.dim);
    std::vector<DirectedEdge> filter;
    if (!filter_spec.empty()) {
        std::stringstream ss(filter_spec);
        std::string item;
        while (std::getline(ss, item, ';'))
            if (item.find_first_not_of(" \t") != std::string::npos) filter.push_back(parse_edge(item, g.dim));
    }
    std::vector<std::string> states;
    LoopSequence s;
    s.push_back(erase_backtracks(root));
    for (const auto& m : traj) {
        std::string st;
        for (std::size_t i = 0; i < s.size(); ++i) st += (i ? " ; " : "") + format_walk(s[i].walk());
        states.push_back(st.empty() ? "null" : st);
        s = apply_move(s, m);
    }
    AuditedWalk w = build_audited_walk(root, traj);
    SingletonAudit a = audit_singletons(w, filter);
    switch (format_of(g)) {
        case Format::Json: {
            json j = header("audit", g);
            j["root"] = format_walk(root);
            json moves = json::array();
            for (std::size_t i = 0; i < traj.size(); ++i) moves.push_back({{"before", states[i]}, {"move", format_move(traj[i])}});
            j["moves"] = moves;
            j["walk"] = format_walk(w.walk());
            j["colors"] = colors_string(w);
            std::vector<std::size_t> partners;
            for (auto p : w.partner) partners.push_back(p + 1);
            j["partner"] = partners;
            j["origin"] = w.origin;
            j["noncrossing"] = w.pairing_noncrossing();
            j["filtered"] = a.filtered;
            j["singletons"] = a.singletons;
            j["deformations"] = a.deformations;
            j["bound_holds"] = a.bound_holds;
            j["distinct_sources"] = a.distinct_sources;
            out << j.dump(2) << '\n';
            break;
        }
        case Format::Csv: {
            out << "position,step,color,partner,origin\n";
            for (std::size_t i = 0; i < w.steps.size(); ++i)
                out << i + 1 << ',' << format_step(w.steps[i], g.dim) << ',' << (w.colors[i] == Color::Blue ? "blue" : "red") << ',' << w.partner[i] + 1 << ',' << w.origin[i] << '\n';
            break;
        }
        case Format::Text: {
            for (std::size_t i = 0; i < traj.size(); ++i) out << "# " << states[i] << "\n#   " << format_move(traj[i]) << '\n';
            out << format_walk(w.walk()) << '\n';
            out << "colors  " << colors_string(w) << '\n';
            out << "pairs  ";
            for (std::size_t i = 0; i < w.partner.size(); ++i)
                if (w.partner[i] > i) out << " (" << i + 1 << ',' << w.partner[i] + 1 << ')';
            out << '\n';
            out << "noncrossing " << (w.pairing_noncrossing() ? "yes" : "no") << '\n';
            out << "singletons " << a.singletons << " of " << a.filtered << " filtered blue, deformations " << a.deformations
                << (a.bound_holds ? " (bound holds)" : " (BOUND VIOLATED)") << (a.distinct_sources ? ", partners from distinct deformations" : "") << '\n';
            break;
        }
    }
    return kOk;
}

int cmd_mc(const Globals& g, const McArgs& m, const std::string& spec, std::ostream& out) {
    if (g.dim != 2) throw Unsupported("Monte Carlo estimates need --dim 2");
    Loop l = parse_loop(spec, g.dim);
    GaugeWord gw = loop_to_word(l);
    McConfig cfg = mc_config(g, m);
    WordSample ws = sample_word(gw.word, cfg);
    CumulantTable t;
    double exact = word_moment(gw.word, t, g.max_letters).evaluate(m.beta);
    const Estimate& e = ws.estimate;
    switch (format_of(g)) {
        case Format::Json: {
            json j = header("mc", g);
            j["input"] = spec;
            j["N"] = m.N;
            j["beta"] = m.beta;
            j["mean"] = e.mean;
            j["stderr"] = e.stderr_;
            j["n_eff"] = e.n_eff;
            j["samples"] = e.samples;
            j["limit_value"] = exact;
            j["min_acceptance"] = ws.min_acceptance;
            out << j.dump(2) << '\n';
            break;
        }
        case Format::Csv: out << "mean,stderr,n_eff,limit_value\n" << e.mean << ',' << e.stderr_ << ',' << e.n_eff << ',' << exact << '\n'; break;
        case Format::Text:
            out << std::setprecision(6) << e.mean << " +- " << e.stderr_ << "  (n_eff " << std::setprecision(4) << e.n_eff << ")\n";
            out << "# N->infinity value at beta " << m.beta << ": " << std::setprecision(6) << exact << '\n';
            break;
    }
    return kOk;
}

int cmd_spectral(const Globals& g, const McArgs& m, int bins, int moments, std::ostream& out) {
    McConfig cfg = mc_config(g, m);
    SpectralResult r = spectral_histogram(cfg, bins, moments);
    switch (format_of(g)) {
        case Format::Json: {
            json j = header("spectral", g);
            j["N"] = m.N;
            j["beta"] = m.beta;
            j["theta"] = r.theta;
            j["density"] = r.density;
            json mm = json::array();
            for (std::size_t k = 0; k < r.cos_moments.size(); ++k)
                mm.push_back({{"k", k + 1}, {"moment", r.cos_moments[k].mean}, {"stderr", r.cos_moments[k].stderr_},
                              {"limit", spectral_moment(static_cast<int>(k) + 1).evaluate(m.beta)}});
            j["moments"] = mm;
            j["acceptance"] = r.acceptance;
            out << j.dump(2) << '\n';
            break;
        }
        case Format::Csv: out << density_csv(r) << '\n' << moments_csv(r); break;
        case Format::Text:
            out << density_csv(r) << '\n' << moments_csv(r);
            for (std::size_t k = 0; k < r.cos_moments.size(); ++k)
                out << "# E cos^" << k + 1 << " limit " << spectral_moment(static_cast<int>(k) + 1).evaluate(m.beta) << '\n';
            break;
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact large-N Wilson loop coefficients on the hypercubic lattice"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value configuration file (flags override it)");
    Globals g;
    app.add_option("--dim", g.dim, "lattice dimension")->check(CLI::Range(2, kMaxDim));
    app.add_option("--kmax", g.kmax, "largest power of beta")->check(CLI::NonNegativeNumber);
    app.add_option("--policy", g.policy, "rooted edge policy: lexmin, topmost, random");
    app.add_option("--seed", g.seed, "seed for the random edge policy and Monte Carlo");
    app.add_option("--format", g.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--budget-memo", g.budget_memo, "maximum memo entries");
    app.add_option("--budget-seconds", g.budget_seconds, "wall clock budget per solve (0 = none)");
    app.add_flag("--no-prune", g.no_prune, "expand states whose coefficient is forced to zero");
    app.add_option("--max-letters", g.max_letters, "largest gauge word handled by the free probability oracle");

    std::string spec, file, filter;
    int k = 0;
    bool with_coeff = false;
    McArgs m;
    int bins = 64, moments = 3;

    auto* poly = app.add_subcommand("poly", "polynomial in beta up to --kmax");
    poly->add_option("loop", spec, "loop or loop sequence (';' separated)")->required();
    auto* coeff = app.add_subcommand("coeff", "single coefficient a_k");
    coeff->add_option("loop", spec)->required();
    coeff->add_option("-k,--k", k, "power of beta")->required()->check(CLI::NonNegativeNumber);
    auto* compare = app.add_subcommand("compare", "solver against the gauge + free probability oracle");
    compare->add_option("loop", spec)->required();
    auto* ar = app.add_subcommand("area", "area and winding numbers");
    ar->add_option("loop", spec)->required();
    auto* tree = app.add_subcommand("tree", "loop of a decorated tree, e.g. \"[(1,1,+1),(1,0,-1)]\"");
    tree->add_option("tree", spec)->required();
    tree->add_flag("--coeff", with_coeff, "also compute the coefficient at k = tree area");
    auto* audit = app.add_subcommand("audit", "audited walk of a vanishing trajectory");
    audit->add_option("loop", spec, "root walk, with basepoint")->required();
    audit->add_option("trajectory", file, "trajectory file")->required();
    audit->add_option("--filter", filter, "edges to keep, ';' separated, e.g. \"@(1,0) y+ ; @(-1,0) y+\"");
    auto add_mc = [&](CLI::App* c) {
        c->add_option("--N", m.N, "matrix size")->check(CLI::Range(2, 1000));
        c->add_option("--beta", m.beta, "inverse coupling");
        c->add_option("--samples", m.samples, "kept draws per chain");
        c->add_option("--burn-in", m.burn_in, "burn-in steps");
        c->add_option("--thin", m.thin, "steps between kept draws");
        c->add_option("--eps", m.eps, "initial proposal scale (0 = automatic)");
    };
    auto* mc = app.add_subcommand("mc", "finite-N Monte Carlo estimate of (1/N) E Tr W");
    mc->add_option("loop", spec)->required();
    add_mc(mc);
    auto* spectral = app.add_subcommand("spectral", "eigenvalue angle density of one plaquette");
    add_mc(spectral);
    spectral->add_option("--bins", bins, "histogram bins")->check(CLI::PositiveNumber);
    spectral->add_option("--moments", moments, "largest k for E cos^k")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kParseError;
    }

    try {
        if (*poly) return cmd_poly(g, spec, out);
        if (*coeff) return cmd_coeff(g, spec, k, out);
        if (*compare) return cmd_compare(g, spec, out);
        if (*ar) return cmd_area(g, spec, out);
        if (*tree) return cmd_tree(g, spec, with_coeff, out);
        if (*audit) return cmd_audit(g, spec, file, filter, out);
        if (*mc) return cmd_mc(g, m, spec, out);
        if (*spectral) return cmd_spectral(g, m, bins, moments, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParseError;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kBudgetExceeded;
    } catch (const InvalidArgument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kParseError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kFailure;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace wloop::cli
