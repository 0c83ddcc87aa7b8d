#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wloop/freeprob.hpp"
#include "wloop/lattice.hpp"

namespace wloop {

using OrthMatrix = Eigen::MatrixXd;

struct McConfig {
    int N = 40;
    double beta = 0.1;
    std::size_t burn_in = 2000;  // Metropolis steps, epsilon is tuned during these
    std::size_t thin = 10;       // steps between kept draws
    std::size_t samples = 2000;  // kept draws per chain
    double proposal_scale = 0;   // initial epsilon, 0 = pick from N
    std::uint64_t seed = 1;
    std::size_t batches = 20;
    std::size_t reproject_every = 1000;

    void validate() const;
};

struct Estimate {
    double mean = 0;
    double stderr_ = 0;
    double n_eff = 0;
    std::size_t samples = 0;
};

// Batch-means estimate of the mean of a correlated series.
Estimate batch_means(const std::vector<double>& xs, std::size_t batches);

bool is_special_orthogonal(const OrthMatrix& q, double orth_tol = 1e-10, double det_tol = 1e-8);

OrthMatrix haar_sample(int N, std::mt19937_64& rng);
OrthMatrix haar_sample(int N, std::uint64_t seed);

// Metropolis chain for the single plaquette density exp(N beta Tr Q) dQ on SO(N).
class PlaquetteChain {
public:
    PlaquetteChain(const McConfig& cfg, std::uint64_t stream);

    // Next kept draw (runs burn-in on first use). Throws CalibrationError on a pathological
    // acceptance rate.
    const OrthMatrix& next();
    double epsilon() const { return eps_; }
    double acceptance() const;  // over the post-burn-in steps

private:
    void step();
    void burn_in();

    McConfig cfg_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> gauss_;
    std::uniform_real_distribution<double> unif_;
    OrthMatrix q_;
    double tr_ = 0;
    double eps_ = 0;
    bool burned_ = false;
    std::size_t steps_ = 0, accepted_ = 0, since_proj_ = 0;
};

struct WordSample {
    Estimate estimate;
    std::vector<double> values;  // per draw (1/N) Tr
    double min_acceptance = 1;
};

// (1/N) Tr of the product of independent plaquette draws along the word, one chain per
// generator. `conjugate` (if non-empty) is applied to every draw as O Q O^T.
WordSample sample_word(const FreeWord& w, const McConfig& cfg, const OrthMatrix& conjugate = OrthMatrix());
Estimate estimate_word(const FreeWord& w, const McConfig& cfg);
Estimate estimate_wilson(const Loop& l, const McConfig& cfg);  // d = 2, via the gauge word

struct SpectralResult {
    std::vector<double> theta;    // bin centres on (-pi, pi]
    std::vector<double> density;  // normalized to integrate to 1
    std::vector<Estimate> cos_moments;  // E cos^k theta, k = 1..max_moment
    double mean_sin = 0;                // pooled, ~0 by conjugate symmetry
    double acceptance = 0;
    std::size_t angles = 0;
};

SpectralResult spectral_histogram(const McConfig& cfg, int bins, int max_moment = 3);

std::string density_csv(const SpectralResult& r);
std::string moments_csv(const SpectralResult& r);

}  // namespace wloop
