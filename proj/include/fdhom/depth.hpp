#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fdhom/curve.hpp"

namespace fdhom {

enum class DepthKind { FraimanMuniz, HModal, RandomProjection, Band, ModifiedBand };

// What to do when the modal bandwidth collapses to zero (all curves, or all
// projected scalars, identical). Resampling with replacement makes duplicate-
// heavy samples routine, so the bootstrap floors instead of aborting.
enum class DegeneratePolicy { Throw, FloorBandwidth };

inline constexpr double kBandwidthFloor = 1e-12;

// Depth measure selector plus hyperparameters. Defaults match the usual
// choices: 15th-percentile bandwidth, 50 projections, bands of pairs (J = 2).
struct DepthSpec {
    DepthKind kind = DepthKind::FraimanMuniz;
    double bandwidth_percentile = 15.0;  // in (0, 100); h-modal and RPD
    int projection_count = 50;           // P >= 1; RPD only
    int band_order = 2;                  // only J = 2 is supported
    std::uint64_t rng_seed = 0;          // RPD only; all directions derive from it

    void validate() const;
};

struct DepthVector {
    std::vector<double> values;  // aligned with sample order
    DepthSpec spec;
};

// Truncated Gaussian kernel on [0, inf): K(t) = 2/sqrt(2*pi) * exp(-t^2/2).
double truncated_gaussian_kernel(double t);

// Fraiman-Muniz depth: the time average of the pointwise univariate depth
// 1 - |1/2 - F_{n,t}(x_i(t))|, with F_{n,t} the <=-counting empirical cdf.
// Normalized by the grid span so a unit interval integrates to the plain
// integral. Values lie in [1/2, 1].
DepthVector depth_fm(const FunctionalSample& sample);

// h-modal depth: sum over the sample of K(||x_i - x_k|| / h) in the L2 norm,
// self term included. h is the bandwidth_percentile order statistic of the
// n(n-1)/2 pairwise distances.
DepthVector depth_hmodal(const FunctionalSample& sample, const DepthSpec& spec,
                         DegeneratePolicy policy = DegeneratePolicy::Throw);

// Random projection depth: average over P random directions (iid standard
// normal grid values, normalized to unit L2 norm, all derived from rng_seed)
// of the univariate h-modal depth of the projected scalars. A projection
// whose scalars are all equal contributes n*K(0) to every curve.
DepthVector depth_rpd(const FunctionalSample& sample, const DepthSpec& spec);

// Band depth (J = 2): fraction of unordered curve pairs (a < b), drawn from
// the full sample including i, whose pointwise [min, max] band contains
// curve i at every grid point. Boundaries inclusive.
DepthVector depth_bd(const FunctionalSample& sample);

// Modified band depth (J = 2): same pairs, but each pair contributes the
// fraction of grid time the curve spends inside the band, with pointwise 0/1
// membership integrated by trapezoid weights.
DepthVector depth_mbd(const FunctionalSample& sample);

// Dispatch on spec.kind.
DepthVector compute_depth(const FunctionalSample& sample, const DepthSpec& spec,
                          DegeneratePolicy policy = DegeneratePolicy::Throw);

// The P direction curves used by depth_rpd for this spec and grid, in draw
// order. Exposed so independent checks can consume identical directions.
std::vector<Curve> rpd_directions(const DepthSpec& spec, const Grid& grid);

// Depth of a candidate curve with respect to a fixed base sample: the curve
// is appended to the base (multiset semantics, duplicates allowed) and its
// depth inside the augmented sample is returned. Construction does the
// base-only precomputation once so many candidates can be scored cheaply.
class DepthEvaluator {
public:
    DepthEvaluator(const FunctionalSample& base, const DepthSpec& spec,
                   DegeneratePolicy policy = DegeneratePolicy::Throw);
    ~DepthEvaluator();
    DepthEvaluator(DepthEvaluator&&) noexcept;
    DepthEvaluator& operator=(DepthEvaluator&&) noexcept;

    double operator()(const Curve& candidate) const;

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

// d_F(g): depth of g with respect to F union {g}.
double depth_wrt(const FunctionalSample& base, const Curve& g, const DepthSpec& spec,
                 DegeneratePolicy policy = DegeneratePolicy::Throw);

struct DeepestResult {
    std::size_t index;  // into candidates
    double depth;
};

// The curve of `candidates` with the largest depth with respect to `base`;
// ties resolve to the lowest index.
DeepestResult deepest(const FunctionalSample& base, const FunctionalSample& candidates,
                      const DepthSpec& spec,
                      DegeneratePolicy policy = DegeneratePolicy::Throw);

}  // namespace fdhom
