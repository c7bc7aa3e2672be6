#include "fdhom/gp_sim.hpp"

#include <cmath>

#include "fdhom/parallel.hpp"
#include "fdhom/rng.hpp"

namespace fdhom {

namespace {

// Sub-streams of the per-replication seed.
constexpr std::uint64_t kDrawA = 0;
constexpr std::uint64_t kDrawB = 1;
constexpr std::uint64_t kTest = 2;
constexpr std::uint64_t kProjection = 3;

std::uint64_t depth_tag(DepthKind kind) { return static_cast<std::uint64_t>(kind) + 11; }
std::uint64_t stat_tag(StatisticKind kind) { return static_cast<std::uint64_t>(kind) + 101; }

int count_rejections_seeded(const GpPopulation& a, const GpPopulation& b,
                            const SimConfig& cfg, std::uint64_t master) {
    const Grid grid = uniform_grid(cfg.grid_size);
    const auto reps = static_cast<std::size_t>(cfg.replications);
    std::vector<char> rejected(reps, 0);
    parallel_for(reps, cfg.threads, [&](std::size_t r) {
        const std::uint64_t base = rng::derive(master, r);
        const FunctionalSample sf =
            draw_sample(a, cfg.curves_per_sample, grid, rng::derive(base, kDrawA));
        const FunctionalSample sg =
            draw_sample(b, cfg.curves_per_sample, grid, rng::derive(base, kDrawB));

        TestConfig tc = cfg.test;
        tc.rng_seed = rng::derive(base, kTest);
        tc.threads = 1;  // parallelism lives at the replication level
        if (tc.depth.kind == DepthKind::RandomProjection) {
            tc.depth.rng_seed = rng::derive(base, kProjection);
        }
        rejected[r] = bootstrap_test(sf, sg, tc).reject ? 1 : 0;
    });
    int count = 0;
    for (char c : rejected) count += c;
    return count;
}

}  // namespace

double mean_value(MeanKind kind, double t) {
    switch (kind) {
        case MeanKind::LatePeak:
            return 30.0 * t * std::sqrt(t) * (1.0 - t);
        case MeanKind::EarlyPeak:
            return 30.0 * t * (1.0 - t) * (1.0 - t);
    }
    throw ContractError("unknown mean kind");
}

void GpPopulation::validate() const {
    if (!(cov_scale > 0.0) || !(cov_range > 0.0)) {
        throw ContractError("covariance scale and range must be positive");
    }
}

GpPopulation standard_population(int index) {
    switch (index) {
        case 0: return {MeanKind::LatePeak, 0.0, 0.3, 0.3};
        case 1: return {MeanKind::LatePeak, 1.0, 0.3, 0.3};
        case 2: return {MeanKind::LatePeak, 0.5, 0.3, 0.3};
        case 3: return {MeanKind::EarlyPeak, 0.0, 0.3, 0.3};
        case 4: return {MeanKind::EarlyPeak, 0.0, 0.5, 0.2};
        case 5: return {MeanKind::LatePeak, 0.0, 0.5, 0.2};
    }
    throw ContractError("scenario index must lie in 0..5");
}

Grid uniform_grid(std::size_t m) {
    if (m < 2) {
        throw ContractError("grid needs at least two points");
    }
    std::vector<double> points(m);
    for (std::size_t k = 0; k < m; ++k) {
        points[k] = static_cast<double>(k) / static_cast<double>(m - 1);
    }
    return Grid(std::move(points));
}

Matrix cov_matrix(const GpPopulation& pop, const Grid& grid) {
    pop.validate();
    const std::size_t m = grid.size();
    Matrix cov(m, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            cov[i][j] = pop.cov_scale * std::exp(-std::abs(grid[i] - grid[j]) / pop.cov_range);
        }
    }
    return cov;
}

namespace {

bool try_cholesky(const Matrix& a, double jitter, Matrix& lower) {
    const std::size_t m = a.size();
    lower.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i][j];
            if (i == j) sum += jitter;
            for (std::size_t k = 0; k < j; ++k) sum -= lower[i][k] * lower[j][k];
            if (i == j) {
                if (sum <= 0.0) return false;
                lower[i][j] = std::sqrt(sum);
            } else {
                lower[i][j] = sum / lower[j][j];
            }
        }
    }
    return true;
}

}  // namespace

CholeskyFactor cholesky_factor(const Matrix& matrix, double max_jitter) {
    CholeskyFactor out;
    for (double jitter : {0.0, 1e-14, 1e-12, max_jitter}) {
        if (jitter > max_jitter) break;
        if (try_cholesky(matrix, jitter, out.lower)) {
            out.jitter = jitter;
            return out;
        }
    }
    throw NumericError("covariance matrix is not positive definite, even with jitter");
}

FunctionalSample draw_sample(const GpPopulation& pop, std::size_t count, const Grid& grid,
                             std::uint64_t seed) {
    pop.validate();
    if (count == 0) {
        throw ContractError("sample draw needs at least one curve");
    }
    const std::size_t m = grid.size();
    const CholeskyFactor chol = cholesky_factor(cov_matrix(pop, grid));

    std::vector<double> mean(m);
    for (std::size_t k = 0; k < m; ++k) {
        mean[k] = mean_value(pop.mean, grid[k]) + pop.shift;
    }

    rng::Engine eng(seed);
    std::vector<Curve> curves(count);
    std::vector<double> z(m);
    for (Curve& c : curves) {
        for (double& v : z) v = rng::standard_normal(eng);
        c.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            double noise = 0.0;
            for (std::size_t j = 0; j <= k; ++j) noise += chol.lower[k][j] * z[j];
            c[k] = mean[k] + noise;
        }
    }
    return FunctionalSample(Grid(grid.points()), std::move(curves));
}

FunctionalSample draw_sample(const GpPopulation& pop, const SimConfig& cfg, std::uint64_t seed) {
    return draw_sample(pop, cfg.curves_per_sample, uniform_grid(cfg.grid_size), seed);
}

int run_rejection_count(const GpPopulation& a, const GpPopulation& b, const SimConfig& cfg) {
    return count_rejections_seeded(a, b, cfg, cfg.test.rng_seed);
}

std::vector<RejectionCell> reproduce_table1(const std::vector<DepthSpec>& depths,
                                            const std::vector<StatisticKind>& stats,
                                            const SimConfig& cfg) {
    const GpPopulation reference = standard_population(0);
    std::vector<RejectionCell> cells;
    for (const DepthSpec& depth : depths) {
        for (int sample = 1; sample <= 5; ++sample) {
            for (StatisticKind stat : stats) {
                SimConfig cell_cfg = cfg;
                cell_cfg.test.depth = depth;
                cell_cfg.test.statistic = stat;
                const std::uint64_t master = rng::derive(
                    cfg.test.rng_seed,
                    depth_tag(depth.kind) * 1000 + static_cast<std::uint64_t>(sample),
                    stat_tag(stat));
                const int count = count_rejections_seeded(
                    reference, standard_population(sample), cell_cfg, master);
                cells.push_back({depth.kind, sample, stat, count, cfg.replications});
            }
        }
    }
    return cells;
}

std::vector<RejectionCell> reproduce_null_power(const std::vector<DepthSpec>& depths,
                                                const std::vector<StatisticKind>& stats,
                                                const SimConfig& cfg) {
    const GpPopulation reference = standard_population(0);
    std::vector<RejectionCell> cells;
    for (const DepthSpec& depth : depths) {
        for (StatisticKind stat : stats) {
            SimConfig cell_cfg = cfg;
            cell_cfg.test.depth = depth;
            cell_cfg.test.statistic = stat;
            const std::uint64_t master =
                rng::derive(cfg.test.rng_seed, depth_tag(depth.kind), stat_tag(stat));
            const int count = count_rejections_seeded(reference, reference, cell_cfg, master);
            cells.push_back({depth.kind, 0, stat, count, cfg.replications});
        }
    }
    return cells;
}

std::vector<PowerPoint> power_sweep(const std::vector<double>& etas, const DepthSpec& depth,
                                    StatisticKind stat, const SimConfig& cfg) {
    const GpPopulation reference = standard_population(0);
    std::vector<PowerPoint> points;
    points.reserve(etas.size());
    for (std::size_t e = 0; e < etas.size(); ++e) {
        GpPopulation shifted = reference;
        shifted.shift = etas[e];
        SimConfig cell_cfg = cfg;
        cell_cfg.test.depth = depth;
        cell_cfg.test.statistic = stat;
        const std::uint64_t master = rng::derive(cfg.test.rng_seed, 0x657461ULL, e);
        const int count = count_rejections_seeded(reference, shifted, cell_cfg, master);
        points.push_back({etas[e], count, cfg.replications});
    }
    return points;
}

}  // namespace fdhom
