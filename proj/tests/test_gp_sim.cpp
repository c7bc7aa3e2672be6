#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fdhom/gp_sim.hpp"
#include "fdhom/rng.hpp"

using namespace fdhom;

TEST_CASE("mean functions") {
    CHECK(mean_value(MeanKind::LatePeak, 0.0) == 0.0);
    CHECK(mean_value(MeanKind::LatePeak, 1.0) == 0.0);
    CHECK(mean_value(MeanKind::LatePeak, 0.5) ==
          doctest::Approx(30.0 * std::pow(0.5, 1.5) * 0.5).epsilon(1e-15));
    CHECK(mean_value(MeanKind::LatePeak, 0.5) == doctest::Approx(5.3033008589).epsilon(1e-9));
    CHECK(mean_value(MeanKind::EarlyPeak, 0.5) == doctest::Approx(30.0 * 0.5 * 0.25));
}

TEST_CASE("standard populations") {
    const GpPopulation s0 = standard_population(0);
    CHECK(s0.mean == MeanKind::LatePeak);
    CHECK(s0.shift == 0.0);
    CHECK(s0.cov_scale == 0.3);
    CHECK(s0.cov_range == 0.3);
    CHECK(standard_population(1).shift == 1.0);
    CHECK(standard_population(2).shift == 0.5);
    CHECK(standard_population(3).mean == MeanKind::EarlyPeak);
    const GpPopulation s4 = standard_population(4);
    CHECK(s4.mean == MeanKind::EarlyPeak);
    CHECK(s4.cov_scale == 0.5);
    CHECK(s4.cov_range == 0.2);
    const GpPopulation s5 = standard_population(5);
    CHECK(s5.mean == MeanKind::LatePeak);
    CHECK(s5.cov_scale == 0.5);
    CHECK(s5.cov_range == 0.2);
    CHECK_THROWS_AS(standard_population(6), ContractError);
}

TEST_CASE("uniform grid endpoints") {
    const Grid g = uniform_grid(30);
    CHECK(g.size() == 30);
    CHECK(g[0] == 0.0);
    CHECK(g[29] == 1.0);
    CHECK(g[1] == doctest::Approx(1.0 / 29.0).epsilon(1e-15));
}

TEST_CASE("covariance matrix") {
    const GpPopulation pop = standard_population(0);
    const Grid g = uniform_grid(11);  // spacing 0.1, so |t_i - t_j| = 0.3 exists
    const Matrix cov = cov_matrix(pop, g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(cov[i][i] == doctest::Approx(0.3).epsilon(1e-15));
        for (std::size_t j = 0; j < g.size(); ++j) {
            CHECK(cov[i][j] == cov[j][i]);
        }
    }
    CHECK(cov[0][3] == doctest::Approx(0.3 * std::exp(-1.0)).epsilon(1e-12));

    // The exponential kernel is positive definite: no jitter needed.
    const CholeskyFactor chol = cholesky_factor(cov);
    CHECK(chol.jitter == 0.0);
    CHECK(chol.lower[0][0] == doctest::Approx(std::sqrt(0.3)).epsilon(1e-12));
}

TEST_CASE("cholesky reports failure on an indefinite matrix") {
    const Matrix bad = {{1.0, 2.0}, {2.0, 1.0}};  // eigenvalues 3 and -1
    CHECK_THROWS_AS(cholesky_factor(bad), NumericError);
}

TEST_CASE("draws are deterministic per seed") {
    const GpPopulation pop = standard_population(0);
    const Grid g = uniform_grid(12);
    const FunctionalSample a = draw_sample(pop, 5, g, 42);
    const FunctionalSample b = draw_sample(pop, 5, g, 42);
    const FunctionalSample c = draw_sample(pop, 5, g, 43);
    CHECK(a.curves() == b.curves());
    CHECK(a.curves() != c.curves());
    CHECK(a.size() == 5);
    CHECK(a.grid_size() == 12);
}

TEST_CASE("moment checks against the analytic mean and variance") {
    GpPopulation pop = standard_population(0);
    pop.shift = 0.7;
    const Grid g = uniform_grid(10);
    const std::size_t n = 10000;
    const FunctionalSample s = draw_sample(pop, n, g, 2025);

    const double mean_se = std::sqrt(pop.cov_scale / static_cast<double>(n));
    const double var_se = pop.cov_scale * std::sqrt(2.0 / static_cast<double>(n - 1));
    for (std::size_t k = 0; k < g.size(); ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += s.curve(i)[k];
        const double avg = sum / static_cast<double>(n);
        const double expected = mean_value(pop.mean, g[k]) + pop.shift;
        CHECK(std::abs(avg - expected) < 4.0 * mean_se);

        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) sq += (s.curve(i)[k] - avg) * (s.curve(i)[k] - avg);
        const double var = sq / static_cast<double>(n - 1);
        CHECK(std::abs(var - pop.cov_scale) < 4.0 * var_se);
    }
}

namespace {

SimConfig small_config(StatisticKind stat, DepthKind kind, std::uint64_t seed) {
    SimConfig cfg;
    cfg.grid_size = 10;
    cfg.curves_per_sample = 8;
    cfg.replications = 6;
    cfg.test.bootstrap_count = 40;
    cfg.test.alpha = 0.1;
    cfg.test.rng_seed = seed;
    cfg.test.statistic = stat;
    cfg.test.depth.kind = kind;
    return cfg;
}

}  // namespace

TEST_CASE("rejection counts are deterministic and thread-count independent") {
    SimConfig cfg = small_config(StatisticKind::P3, DepthKind::FraimanMuniz, 31);
    const GpPopulation s0 = standard_population(0);
    const GpPopulation s1 = standard_population(1);

    const int a = run_rejection_count(s0, s1, cfg);
    const int b = run_rejection_count(s0, s1, cfg);
    cfg.threads = 2;
    const int c = run_rejection_count(s0, s1, cfg);
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a >= 0);
    CHECK(a <= cfg.replications);
}

TEST_CASE("a unit mean shift separates even tiny runs") {
    const SimConfig cfg = small_config(StatisticKind::P3, DepthKind::ModifiedBand, 5);
    const int rejections =
        run_rejection_count(standard_population(0), standard_population(1), cfg);
    CHECK(rejections == cfg.replications);
}

TEST_CASE("table harnesses emit one cell per combination") {
    SimConfig cfg = small_config(StatisticKind::P1, DepthKind::FraimanMuniz, 77);
    cfg.replications = 2;
    cfg.test.bootstrap_count = 20;

    std::vector<DepthSpec> depths(1);
    depths[0].kind = DepthKind::FraimanMuniz;
    const std::vector<StatisticKind> stats{StatisticKind::P1, StatisticKind::P3};

    const auto table1 = reproduce_table1(depths, stats, cfg);
    CHECK(table1.size() == 5 * 2);
    CHECK(table1[0].sample_index == 1);
    CHECK(table1[0].statistic == StatisticKind::P1);
    CHECK(table1[1].statistic == StatisticKind::P3);
    CHECK(table1.back().sample_index == 5);
    for (const auto& cell : table1) {
        CHECK(cell.replications == 2);
        CHECK(cell.rejections >= 0);
        CHECK(cell.rejections <= 2);
    }

    const auto table2 = reproduce_null_power(depths, stats, cfg);
    CHECK(table2.size() == 2);
    for (const auto& cell : table2) CHECK(cell.sample_index == 0);

    const auto sweep = power_sweep({0.0, 1.0}, depths[0], StatisticKind::P1, cfg);
    CHECK(sweep.size() == 2);
    CHECK(sweep[0].eta == 0.0);
    CHECK(sweep[1].eta == 1.0);
    CHECK(sweep[1].rejections >= sweep[0].rejections);  // unit shift dominates
}
