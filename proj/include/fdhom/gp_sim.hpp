#pragma once

#include <cstdint>
#include <vector>

#include "fdhom/homogeneity.hpp"

namespace fdhom {

// Mean shapes of the simulated populations, named by where they peak on
// [0, 1]: 30 t^{3/2} (1 - t) peaks at t = 0.6, 30 t (1 - t)^2 at t = 1/3.
enum class MeanKind { LatePeak, EarlyPeak };

double mean_value(MeanKind kind, double t);

// Gaussian process population: mean(t) + shift plus centered noise with
// exponential covariance cov(t_i, t_j) = cov_scale * exp(-|t_i - t_j| / cov_range).
struct GpPopulation {
    MeanKind mean = MeanKind::LatePeak;
    double shift = 0.0;      // additive mean offset
    double cov_scale = 0.3;  // marginal variance
    double cov_range = 0.3;  // correlation length

    void validate() const;
};

// The six standard scenarios: 0 is the reference; 1-2 shift its mean by 1
// and 0.5; 3 changes the mean shape; 4 changes shape and covariance; 5 keeps
// the reference mean but swaps in the rougher covariance.
GpPopulation standard_population(int index);

struct SimConfig {
    std::size_t grid_size = 30;        // equidistant points on [0, 1]
    std::size_t curves_per_sample = 50;
    int replications = 100;
    TestConfig test;                   // carries depth, statistic, N, alpha, seed
    int threads = 1;                   // replication-level parallelism; 0 = hardware
};

// m equidistant points t_k = k / (m - 1) on [0, 1].
Grid uniform_grid(std::size_t m);

using Matrix = std::vector<std::vector<double>>;

Matrix cov_matrix(const GpPopulation& pop, const Grid& grid);

struct CholeskyFactor {
    Matrix lower;
    double jitter = 0.0;  // diagonal boost that was needed, 0 in the PSD case
};

// Lower-triangular Cholesky factor, escalating a diagonal jitter up to
// `max_jitter` before giving up with NumericError.
CholeskyFactor cholesky_factor(const Matrix& matrix, double max_jitter = 1e-10);

// `count` independent draws mean + shift + L z with z iid standard normal.
FunctionalSample draw_sample(const GpPopulation& pop, std::size_t count, const Grid& grid,
                             std::uint64_t seed);
FunctionalSample draw_sample(const GpPopulation& pop, const SimConfig& cfg, std::uint64_t seed);

// Repeatedly draw fresh samples from the two populations, run the bootstrap
// test from cfg.test, and count rejections. Replication r derives all of its
// randomness from (cfg.test.rng_seed, r), so replications can run in any
// order or in parallel without changing the count.
int run_rejection_count(const GpPopulation& a, const GpPopulation& b, const SimConfig& cfg);

struct RejectionCell {
    DepthKind depth;
    int sample_index;  // scenario 1..5, or 0 for the null table
    StatisticKind statistic;
    int rejections;
    int replications;
};

// Reference scenario against each contaminated scenario 1..5, one cell per
// (depth, scenario, statistic).
std::vector<RejectionCell> reproduce_table1(const std::vector<DepthSpec>& depths,
                                            const std::vector<StatisticKind>& stats,
                                            const SimConfig& cfg);

// Reference scenario against itself; cells carry rejection counts out of
// cfg.replications, so the proportion is rejections / replications.
std::vector<RejectionCell> reproduce_null_power(const std::vector<DepthSpec>& depths,
                                                const std::vector<StatisticKind>& stats,
                                                const SimConfig& cfg);

struct PowerPoint {
    double eta;
    int rejections;
    int replications;
};

// Reference scenario against a copy whose mean is shifted by each eta.
std::vector<PowerPoint> power_sweep(const std::vector<double>& etas, const DepthSpec& depth,
                                    StatisticKind stat, const SimConfig& cfg);

}  // namespace fdhom
