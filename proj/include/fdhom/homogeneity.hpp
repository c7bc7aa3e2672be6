#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdhom/depth.hpp"

namespace fdhom {

// The four between-sample statistics. P1 and P3 shrink under heterogeneity,
// so their tests reject in the lower tail; the normalized P2 and P4 grow,
// so they reject in the upper tail.
enum class StatisticKind { P1, P2, P3, P4 };

enum class Tail { Lower, Upper };

// Fixed statistic-to-tail map, exposed read-only.
Tail rejection_tail(StatisticKind kind);

const char* statistic_name(StatisticKind kind);

struct TestConfig {
    int bootstrap_count = 1000;
    double alpha = 0.05;
    std::uint64_t rng_seed = 0;
    DepthSpec depth;
    StatisticKind statistic = StatisticKind::P3;
    int threads = 1;  // 0 = hardware concurrency

    void validate() const;
};

struct TestResult {
    double observed = 0.0;
    std::vector<double> bootstrap_values;
    double critical_value = 0.0;
    bool reject = false;
    Tail tail = Tail::Lower;
};

// P1(F, G) = d_F(deepest curve of G within G).
double stat_p1(const FunctionalSample& f, const FunctionalSample& g, const DepthSpec& depth,
               DegeneratePolicy policy = DegeneratePolicy::Throw);

// P2(F, G) = |P1(F, G) - P1(F, F)|.
double stat_p2(const FunctionalSample& f, const FunctionalSample& g, const DepthSpec& depth,
               DegeneratePolicy policy = DegeneratePolicy::Throw);

// P3(F, G) = max over g in G of d_F(g).
double stat_p3(const FunctionalSample& f, const FunctionalSample& g, const DepthSpec& depth,
               DegeneratePolicy policy = DegeneratePolicy::Throw);

// P4(F, G) = |P3(F, G) - P1(F, F)| * |P3(F, G) - P1(G, G)|.
double stat_p4(const FunctionalSample& f, const FunctionalSample& g, const DepthSpec& depth,
               DegeneratePolicy policy = DegeneratePolicy::Throw);

double evaluate_statistic(StatisticKind kind, const FunctionalSample& f,
                          const FunctionalSample& g, const DepthSpec& depth,
                          DegeneratePolicy policy = DegeneratePolicy::Throw);

// Bootstrap homogeneity test. Pools H = F followed by G, draws |H| curves
// with replacement N times, splits each draw into the first |F| and last |G|
// curves, and compares the observed statistic against the one-sided empirical
// critical value: the ceil(alpha*N)-th smallest bootstrap value for lower-
// tail statistics, the ceil((1-alpha)*N)-th smallest for upper-tail ones.
// Ties at the critical value never reject. Deterministic given cfg.rng_seed,
// whatever cfg.threads is.
TestResult bootstrap_test(const FunctionalSample& f, const FunctionalSample& g,
                          const TestConfig& cfg);

}  // namespace fdhom
