#include "wloop/mc.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "wloop/errors.hpp"
#include "wloop/gauge.hpp"

namespace wloop {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void reproject(OrthMatrix& q) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(q, Eigen::ComputeFullU | Eigen::ComputeFullV);
    q = svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace

void McConfig::validate() const {
    if (N < 2) throw InvalidArgument("N must be >= 2");
    if (samples == 0 || thin == 0 || batches == 0) throw InvalidArgument("samples, thin and batches must be positive");
    if (proposal_scale < 0) throw InvalidArgument("proposal scale must be >= 0");
    if (!std::isfinite(beta)) throw InvalidArgument("beta must be finite");
}

Estimate batch_means(const std::vector<double>& xs, std::size_t batches) {
    Estimate e;
    e.samples = xs.size();
    if (xs.empty()) return e;
    double sum = 0;
    for (double x : xs) sum += x;
    e.mean = sum / static_cast<double>(xs.size());
    const std::size_t b = std::max<std::size_t>(2, std::min(batches, xs.size()));
    const std::size_t per = xs.size() / b;
    if (per == 0) return e;
    std::vector<double> means;
    for (std::size_t i = 0; i < b; ++i) {
        double s = 0;
        for (std::size_t t = i * per; t < (i + 1) * per; ++t) s += xs[t];
        means.push_back(s / static_cast<double>(per));
    }
    double mm = 0;
    for (double m : means) mm += m;
    mm /= static_cast<double>(b);
    double v = 0;
    for (double m : means) v += (m - mm) * (m - mm);
    v /= static_cast<double>(b - 1);
    e.stderr_ = std::sqrt(v / static_cast<double>(b));
    double var = 0;
    for (double x : xs) var += (x - e.mean) * (x - e.mean);
    var /= static_cast<double>(xs.size() - 1);
    // Floor keeps stderr strictly positive for degenerate series.
    e.stderr_ = std::max(e.stderr_, 1e-15);
    e.n_eff = var / (e.stderr_ * e.stderr_);
    return e;
}

bool is_special_orthogonal(const OrthMatrix& q, double orth_tol, double det_tol) {
    if (q.rows() != q.cols() || q.rows() < 1) return false;
    const auto I = Eigen::MatrixXd::Identity(q.rows(), q.cols());
    if ((q.transpose() * q - I).cwiseAbs().maxCoeff() > orth_tol) return false;
    return std::abs(q.determinant() - 1.0) <= det_tol;
}

OrthMatrix haar_sample(int N, std::mt19937_64& rng) {
    if (N < 2) throw InvalidArgument("N must be >= 2");
    std::normal_distribution<double> g;
    Eigen::MatrixXd a(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) a(i, j) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd& r = qr.matrixQR();
    for (int i = 0; i < N; ++i)
        if (r(i, i) < 0) q.col(i) *= -1;
    if (q.determinant() < 0) q.col(0) *= -1;
    return q;
}

OrthMatrix haar_sample(int N, std::uint64_t seed) {
    std::mt19937_64 rng(splitmix(seed));
    return haar_sample(N, rng);
}

PlaquetteChain::PlaquetteChain(const McConfig& cfg, std::uint64_t stream)
    : cfg_(cfg), rng_(splitmix(cfg.seed ^ splitmix(stream + 1))), unif_(0.0, 1.0) {
    cfg_.validate();
    q_ = haar_sample(cfg_.N, rng_);
    tr_ = q_.trace();
    eps_ = cfg_.proposal_scale > 0 ? cfg_.proposal_scale : 1.0 / std::sqrt(static_cast<double>(cfg_.N));
}

void PlaquetteChain::step() {
    const int n = cfg_.N;
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = gauss_(rng_);
    Eigen::MatrixXd a = (g - g.transpose()) * (eps_ / std::sqrt(2.0));
    Eigen::MatrixXd prop = a.exp() * q_;
    double tp = prop.trace();
    double log_ratio = static_cast<double>(n) * cfg_.beta * (tp - tr_);
    ++steps_;
    if (log_ratio >= 0 || std::log(unif_(rng_)) < log_ratio) {
        q_ = std::move(prop);
        tr_ = tp;
        ++accepted_;
    }
    if (++since_proj_ >= cfg_.reproject_every) {
        reproject(q_);
        tr_ = q_.trace();
        since_proj_ = 0;
    }
}

void PlaquetteChain::burn_in() {
    const std::size_t window = 100;
    std::size_t done = 0;
    while (done < cfg_.burn_in) {
        steps_ = accepted_ = 0;
        std::size_t w = std::min(window, cfg_.burn_in - done);
        for (std::size_t i = 0; i < w; ++i) step();
        done += w;
        double rate = static_cast<double>(accepted_) / static_cast<double>(steps_);
        if (rate < 0.30) eps_ *= 0.8;
        else if (rate > 0.50) eps_ = std::min(eps_ * 1.25, 2.0);
    }
    steps_ = accepted_ = 0;
    burned_ = true;
}

const OrthMatrix& PlaquetteChain::next() {
    if (!burned_) burn_in();
    for (std::size_t i = 0; i < cfg_.thin; ++i) step();
    // At beta = 0 every proposal is accepted by construction; that is not a calibration problem.
    double rate = acceptance();
    if (steps_ >= 500 && (rate < 0.01 || (cfg_.beta != 0 && rate > 0.99)))
        throw CalibrationError("pathological acceptance rate " + std::to_string(rate) + " (epsilon " + std::to_string(eps_) + ")");
    return q_;
}

double PlaquetteChain::acceptance() const { return steps_ ? static_cast<double>(accepted_) / static_cast<double>(steps_) : 0.0; }

WordSample sample_word(const FreeWord& w0, const McConfig& cfg, const OrthMatrix& conjugate) {
    cfg.validate();
    FreeWord w = w0.reduced();
    std::map<int, std::size_t> slot;
    for (const auto& l : w.letters) slot.emplace(l.gen, slot.size());
    std::vector<PlaquetteChain> chains;
    for (std::size_t i = 0; i < slot.size(); ++i) chains.emplace_back(cfg, i);
    const int n = cfg.N;
    WordSample out;
    out.values.reserve(cfg.samples);
    std::vector<OrthMatrix> draw(slot.size());
    for (std::size_t t = 0; t < cfg.samples; ++t) {
        for (std::size_t c = 0; c < chains.size(); ++c) {
            draw[c] = chains[c].next();
            if (conjugate.size()) draw[c] = conjugate * draw[c] * conjugate.transpose();
        }
        Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(n, n);
        for (const auto& l : w.letters) {
            const OrthMatrix& q = draw[slot[l.gen]];
            for (int e = 0; e < std::abs(l.exp); ++e) prod = l.exp > 0 ? Eigen::MatrixXd(prod * q) : Eigen::MatrixXd(prod * q.transpose());
        }
        out.values.push_back(prod.trace() / n);
    }
    for (const auto& c : chains) out.min_acceptance = std::min(out.min_acceptance, c.acceptance());
    out.estimate = batch_means(out.values, cfg.batches);
    return out;
}

Estimate estimate_word(const FreeWord& w, const McConfig& cfg) { return sample_word(w, cfg).estimate; }

Estimate estimate_wilson(const Loop& l, const McConfig& cfg) {
    if (l.dim() != 2) throw Unsupported("Monte Carlo estimates go through the planar gauge word (d = 2)");
    return estimate_word(loop_to_word(l).word, cfg);
}

SpectralResult spectral_histogram(const McConfig& cfg, int bins, int max_moment) {
    cfg.validate();
    if (bins < 1) throw InvalidArgument("need at least one bin");
    if (max_moment < 1) throw InvalidArgument("max_moment must be >= 1");
    PlaquetteChain chain(cfg, 0);
    SpectralResult r;
    std::vector<double> counts(static_cast<std::size_t>(bins), 0);
    std::vector<std::vector<double>> mom(static_cast<std::size_t>(max_moment));
    const double pi = std::numbers::pi;
    double sin_sum = 0;
    for (std::size_t t = 0; t < cfg.samples; ++t) {
        const OrthMatrix& q = chain.next();
        Eigen::EigenSolver<Eigen::MatrixXd> es(q, false);
        auto ev = es.eigenvalues();
        std::vector<double> acc(static_cast<std::size_t>(max_moment), 0);
        for (int i = 0; i < ev.size(); ++i) {
            double th = std::arg(ev(i));
            sin_sum += std::sin(th);
            auto b = static_cast<std::size_t>(std::floor((th + pi) / (2 * pi) * bins));
            counts[std::min(b, static_cast<std::size_t>(bins - 1))] += 1;
            double c = std::cos(th), p = 1;
            for (int k = 0; k < max_moment; ++k) {
                p *= c;
                acc[static_cast<std::size_t>(k)] += p;
            }
        }
        for (int k = 0; k < max_moment; ++k) mom[static_cast<std::size_t>(k)].push_back(acc[static_cast<std::size_t>(k)] / static_cast<double>(ev.size()));
        r.angles += static_cast<std::size_t>(ev.size());
    }
    const double width = 2 * pi / bins;
    for (int b = 0; b < bins; ++b) {
        r.theta.push_back(-pi + (b + 0.5) * width);
        r.density.push_back(counts[static_cast<std::size_t>(b)] / (static_cast<double>(r.angles) * width));
    }
    for (auto& m : mom) r.cos_moments.push_back(batch_means(m, cfg.batches));
    r.mean_sin = sin_sum / static_cast<double>(r.angles);
    r.acceptance = chain.acceptance();
    return r;
}

std::string density_csv(const SpectralResult& r) {
    std::ostringstream os;
    os.precision(10);
    os << "theta,density\n";
    for (std::size_t i = 0; i < r.theta.size(); ++i) os << r.theta[i] << ',' << r.density[i] << '\n';
    return os.str();
}

std::string moments_csv(const SpectralResult& r) {
    std::ostringstream os;
    os.precision(10);
    os << "k,moment,stderr\n";
    for (std::size_t k = 0; k < r.cos_moments.size(); ++k) os << k + 1 << ',' << r.cos_moments[k].mean << ',' << r.cos_moments[k].stderr_ << '\n';
    return os.str();
}

}  // namespace wloop
