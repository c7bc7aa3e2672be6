#include "fdhom/homogeneity.hpp"

#include <algorithm>
#include <cmath>

#include "fdhom/parallel.hpp"
#include "fdhom/rng.hpp"

namespace fdhom {

namespace {

constexpr std::uint64_t kProjectionStream = 0x7270642dULL;

// P1(s, s) = P3(s, s): the self-sample depth of the deepest curve.
double deepest_self_depth(const FunctionalSample& s, const DepthSpec& depth,
                          DegeneratePolicy policy) {
    return deepest(s, s, depth, policy).depth;
}

FunctionalSample gather(const std::vector<const Curve*>& pool, const Grid& grid,
                        const std::vector<std::size_t>& indices, std::size_t from,
                        std::size_t count) {
    std::vector<Curve> curves;
    curves.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        curves.push_back(*pool[indices[from + i]]);
    }
    return FunctionalSample(Grid(grid.points()), std::move(curves));
}

}  // namespace

Tail rejection_tail(StatisticKind kind) {
    switch (kind) {
        case StatisticKind::P1:
        case StatisticKind::P3:
            return Tail::Lower;
        case StatisticKind::P2:
        case StatisticKind::P4:
            return Tail::Upper;
    }
    throw ContractError("unknown statistic kind");
}

const char* statistic_name(StatisticKind kind) {
    switch (kind) {
        case StatisticKind::P1: return "P1";
        case StatisticKind::P2: return "P2";
        case StatisticKind::P3: return "P3";
        case StatisticKind::P4: return "P4";
    }
    return "?";
}

void TestConfig::validate() const {
    depth.validate();
    if (bootstrap_count < 1) {
        throw ContractError("bootstrap count must be positive");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ContractError("alpha must lie in (0, 1)");
    }
    if (static_cast<double>(bootstrap_count) * alpha < 1.0) {
        throw ContractError("bootstrap_count * alpha must be at least 1");
    }
}

double stat_p1(const FunctionalSample& f, const FunctionalSample& g, const DepthSpec& depth,
               DegeneratePolicy policy) {
    require_same_grid(f, g);
    const DeepestResult rep = deepest(g, g, depth, policy);
    return depth_wrt(f, g.curve(rep.index), depth, policy);
}

double stat_p2(const FunctionalSample& f, const FunctionalSample& g, const DepthSpec& depth,
               DegeneratePolicy policy) {
    return std::abs(stat_p1(f, g, depth, policy) - deepest_self_depth(f, depth, policy));
}

double stat_p3(const FunctionalSample& f, const FunctionalSample& g, const DepthSpec& depth,
               DegeneratePolicy policy) {
    require_same_grid(f, g);
    return deepest(f, g, depth, policy).depth;
}

double stat_p4(const FunctionalSample& f, const FunctionalSample& g, const DepthSpec& depth,
               DegeneratePolicy policy) {
    const double p3 = stat_p3(f, g, depth, policy);
    return std::abs(p3 - deepest_self_depth(f, depth, policy)) *
           std::abs(p3 - deepest_self_depth(g, depth, policy));
}

double evaluate_statistic(StatisticKind kind, const FunctionalSample& f,
                          const FunctionalSample& g, const DepthSpec& depth,
                          DegeneratePolicy policy) {
    switch (kind) {
        case StatisticKind::P1: return stat_p1(f, g, depth, policy);
        case StatisticKind::P2: return stat_p2(f, g, depth, policy);
        case StatisticKind::P3: return stat_p3(f, g, depth, policy);
        case StatisticKind::P4: return stat_p4(f, g, depth, policy);
    }
    throw ContractError("unknown statistic kind");
}

TestResult bootstrap_test(const FunctionalSample& f, const FunctionalSample& g,
                          const TestConfig& cfg) {
    cfg.validate();
    require_same_grid(f, g);
    if (f.size() < 2 || g.size() < 2) {
        throw ContractError("bootstrap test needs at least two curves per sample");
    }

    TestResult result;
    result.tail = rejection_tail(cfg.statistic);
    result.observed = evaluate_statistic(cfg.statistic, f, g, cfg.depth);

    // Pooled sample H = F followed by G; resamples split by position.
    std::vector<const Curve*> pool;
    pool.reserve(f.size() + g.size());
    for (const Curve& c : f.curves()) pool.push_back(&c);
    for (const Curve& c : g.curves()) pool.push_back(&c);
    const std::size_t total = pool.size();

    const auto count = static_cast<std::size_t>(cfg.bootstrap_count);
    result.bootstrap_values.resize(count);
    parallel_for(count, cfg.threads, [&](std::size_t j) {
        rng::Engine eng(rng::derive(cfg.rng_seed, j + 1));
        std::vector<std::size_t> indices(total);
        for (std::size_t& idx : indices) idx = rng::uniform_index(eng, total);

        const FunctionalSample s1 = gather(pool, f.grid(), indices, 0, f.size());
        const FunctionalSample s2 = gather(pool, f.grid(), indices, f.size(), g.size());

        DepthSpec iter_depth = cfg.depth;
        if (iter_depth.kind == DepthKind::RandomProjection) {
            // Fresh directions per iteration keep iterations exchangeable.
            iter_depth.rng_seed = rng::derive(cfg.rng_seed, j + 1, kProjectionStream);
        }
        result.bootstrap_values[j] = evaluate_statistic(
            cfg.statistic, s1, s2, iter_depth, DegeneratePolicy::FloorBandwidth);
    });

    std::vector<double> sorted = result.bootstrap_values;
    std::sort(sorted.begin(), sorted.end());
    const double q = result.tail == Tail::Lower ? cfg.alpha : 1.0 - cfg.alpha;
    result.critical_value = sorted[quantile_index(q, sorted.size()) - 1];
    result.reject = result.tail == Tail::Lower ? result.observed < result.critical_value
                                               : result.observed > result.critical_value;
    return result;
}

}  // namespace fdhom
