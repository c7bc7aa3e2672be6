#include "fdhom/depth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fdhom/rng.hpp"

namespace fdhom {

namespace {

constexpr std::uint64_t kDirectionStream = 0x64697265ULL;

double pairs_of(double count) { return count * (count - 1.0) / 2.0; }

// Pairwise L2 distances in (i, k) order with i < k.
std::vector<double> pairwise_distances(const FunctionalSample& sample) {
    const std::size_t n = sample.size();
    std::vector<double> dists;
    dists.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            dists.push_back(l2_distance(sample.curve(i), sample.curve(k), sample.grid()));
        }
    }
    return dists;
}

std::vector<std::vector<double>> sorted_columns(const FunctionalSample& sample) {
    const std::size_t n = sample.size();
    const std::size_t m = sample.grid_size();
    std::vector<std::vector<double>> cols(m, std::vector<double>(n));
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t j = 0; j < n; ++j) cols[k][j] = sample.curve(j)[k];
        std::sort(cols[k].begin(), cols[k].end());
    }
    return cols;
}

double resolve_bandwidth(double h, DegeneratePolicy policy) {
    if (h >= kBandwidthFloor) return h;
    if (policy == DegeneratePolicy::Throw) {
        throw DegenerateSampleError("modal bandwidth collapsed to zero");
    }
    return kBandwidthFloor;
}

// Kernel sums of the univariate modal depth of `scalars`, added into `acc`.
// Self terms included; an all-equal column degenerates to n*K(0) everywhere.
void accumulate_univariate_modal(const std::vector<double>& scalars, double percentile,
                                 std::vector<double>& acc) {
    const std::size_t n = scalars.size();
    std::vector<double> dists;
    dists.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            dists.push_back(std::abs(scalars[i] - scalars[k]));
        }
    }
    double h = quantile_ceil(std::move(dists), percentile / 100.0);
    if (h < kBandwidthFloor) h = kBandwidthFloor;
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            sum += truncated_gaussian_kernel(std::abs(scalars[i] - scalars[k]) / h);
        }
        acc[i] += sum;
    }
}

// Bit masks marking where each base curve runs strictly above/below the
// reference curve. A pair's band covers the reference at every point exactly
// when the pair shares no above-bit and no below-bit.
struct BandMasks {
    std::size_t words;
    std::vector<std::uint64_t> above;  // n * words
    std::vector<std::uint64_t> below;

    BandMasks(const std::vector<const Curve*>& curves, const Curve& ref)
        : words((ref.size() + 63) / 64),
          above(curves.size() * words, 0),
          below(curves.size() * words, 0) {
        for (std::size_t j = 0; j < curves.size(); ++j) {
            const Curve& c = *curves[j];
            for (std::size_t k = 0; k < ref.size(); ++k) {
                if (c[k] > ref[k]) {
                    above[j * words + k / 64] |= std::uint64_t{1} << (k % 64);
                } else if (c[k] < ref[k]) {
                    below[j * words + k / 64] |= std::uint64_t{1} << (k % 64);
                }
            }
        }
    }

    bool pair_covers(std::size_t a, std::size_t b) const {
        for (std::size_t w = 0; w < words; ++w) {
            if ((above[a * words + w] & above[b * words + w]) != 0) return false;
            if ((below[a * words + w] & below[b * words + w]) != 0) return false;
        }
        return true;
    }
};

std::size_t count_covering_pairs(const BandMasks& masks, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (masks.pair_covers(a, b)) ++count;
        }
    }
    return count;
}

std::vector<const Curve*> curve_pointers(const FunctionalSample& sample) {
    std::vector<const Curve*> out(sample.size());
    for (std::size_t j = 0; j < sample.size(); ++j) out[j] = &sample.curve(j);
    return out;
}

}  // namespace

void DepthSpec::validate() const {
    if (!(bandwidth_percentile > 0.0 && bandwidth_percentile < 100.0)) {
        throw ContractError("bandwidth percentile must lie in (0, 100)");
    }
    if (projection_count < 1) {
        throw ContractError("projection count must be positive");
    }
    if (band_order != 2) {
        throw ContractError("only band order J = 2 is supported");
    }
}

double truncated_gaussian_kernel(double t) {
    return (2.0 / std::sqrt(2.0 * std::numbers::pi)) * std::exp(-t * t / 2.0);
}

DepthVector depth_fm(const FunctionalSample& sample) {
    const std::size_t n = sample.size();
    const std::size_t m = sample.grid_size();
    const double span = sample.grid().length();
    const auto ranks = pointwise_ranks(sample);

    DepthVector out;
    out.spec.kind = DepthKind::FraimanMuniz;
    out.values.resize(n);
    std::vector<double> pointwise(m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            const double f = static_cast<double>(ranks[i][k]) / static_cast<double>(n);
            pointwise[k] = 1.0 - std::abs(0.5 - f);
        }
        out.values[i] = trapezoid_integral(pointwise, sample.grid()) / span;
    }
    return out;
}

DepthVector depth_hmodal(const FunctionalSample& sample, const DepthSpec& spec,
                         DegeneratePolicy policy) {
    spec.validate();
    const std::size_t n = sample.size();
    if (n < 2) {
        throw DegenerateInputError("h-modal depth needs at least two curves");
    }

    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    std::vector<double> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            const double d = l2_distance(sample.curve(i), sample.curve(k), sample.grid());
            dist[i][k] = dist[k][i] = d;
            pairs.push_back(d);
        }
    }
    const double h = resolve_bandwidth(
        quantile_ceil(std::move(pairs), spec.bandwidth_percentile / 100.0), policy);

    DepthVector out;
    out.spec = spec;
    out.spec.kind = DepthKind::HModal;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            sum += truncated_gaussian_kernel(dist[i][k] / h);
        }
        out.values[i] = sum;
    }
    return out;
}

std::vector<Curve> rpd_directions(const DepthSpec& spec, const Grid& grid) {
    rng::Engine eng(rng::derive(spec.rng_seed, kDirectionStream));
    const std::size_t m = grid.size();
    std::vector<Curve> dirs(static_cast<std::size_t>(spec.projection_count));
    for (Curve& dir : dirs) {
        dir.resize(m);
        for (double& v : dir) v = rng::standard_normal(eng);
        std::vector<double> sq(m);
        for (std::size_t k = 0; k < m; ++k) sq[k] = dir[k] * dir[k];
        const double norm = std::sqrt(trapezoid_integral(sq, grid));
        if (norm > 0.0) {
            for (double& v : dir) v /= norm;
        }
    }
    return dirs;
}

DepthVector depth_rpd(const FunctionalSample& sample, const DepthSpec& spec) {
    spec.validate();
    const std::size_t n = sample.size();
    if (n < 2) {
        throw DegenerateInputError("random projection depth needs at least two curves");
    }
    const std::size_t m = sample.grid_size();
    const auto dirs = rpd_directions(spec, sample.grid());

    std::vector<double> acc(n, 0.0);
    std::vector<double> scalars(n);
    std::vector<double> product(m);
    for (const Curve& dir : dirs) {
        for (std::size_t j = 0; j < n; ++j) {
            const Curve& x = sample.curve(j);
            for (std::size_t k = 0; k < m; ++k) product[k] = dir[k] * x[k];
            scalars[j] = trapezoid_integral(product, sample.grid());
        }
        accumulate_univariate_modal(scalars, spec.bandwidth_percentile, acc);
    }

    DepthVector out;
    out.spec = spec;
    out.spec.kind = DepthKind::RandomProjection;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = acc[i] / static_cast<double>(spec.projection_count);
    }
    return out;
}

DepthVector depth_bd(const FunctionalSample& sample) {
    const std::size_t n = sample.size();
    if (n < 2) {
        throw DegenerateInputError("band depth needs at least two curves");
    }
    const double total_pairs = pairs_of(static_cast<double>(n));
    const auto curves = curve_pointers(sample);

    DepthVector out;
    out.spec.kind = DepthKind::Band;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Pairs containing curve i cover it automatically: its own masks are
        // empty, so no check is needed to include them.
        BandMasks masks(curves, sample.curve(i));
        out.values[i] = static_cast<double>(count_covering_pairs(masks, n)) / total_pairs;
    }
    return out;
}

DepthVector depth_mbd(const FunctionalSample& sample) {
    const std::size_t n = sample.size();
    if (n < 2) {
        throw DegenerateInputError("modified band depth needs at least two curves");
    }
    const std::size_t m = sample.grid_size();
    const double total_pairs = pairs_of(static_cast<double>(n));
    const double span = sample.grid().length();
    const auto cols = sorted_columns(sample);

    DepthVector out;
    out.spec.kind = DepthKind::ModifiedBand;
    out.values.resize(n);
    std::vector<double> cover(m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
            const double x = sample.curve(i)[k];
            const auto le = std::upper_bound(cols[k].begin(), cols[k].end(), x) - cols[k].begin();
            const auto lt = std::lower_bound(cols[k].begin(), cols[k].end(), x) - cols[k].begin();
            const double strictly_above = static_cast<double>(n - static_cast<std::size_t>(le));
            const double strictly_below = static_cast<double>(lt);
            // A pair fails to cover x exactly when both members sit on the
            // same strict side of it.
            cover[k] = total_pairs - pairs_of(strictly_above) - pairs_of(strictly_below);
        }
        out.values[i] = trapezoid_integral(cover, sample.grid()) / (span * total_pairs);
    }
    return out;
}

DepthVector compute_depth(const FunctionalSample& sample, const DepthSpec& spec,
                          DegeneratePolicy policy) {
    spec.validate();
    switch (spec.kind) {
        case DepthKind::FraimanMuniz: {
            DepthVector v = depth_fm(sample);
            v.spec = spec;
            return v;
        }
        case DepthKind::HModal:
            return depth_hmodal(sample, spec, policy);
        case DepthKind::RandomProjection:
            return depth_rpd(sample, spec);
        case DepthKind::Band: {
            DepthVector v = depth_bd(sample);
            v.spec = spec;
            return v;
        }
        case DepthKind::ModifiedBand: {
            DepthVector v = depth_mbd(sample);
            v.spec = spec;
            return v;
        }
    }
    throw ContractError("unknown depth kind");
}

// ---------------------------------------------------------------------------
// Appended-curve evaluation
// ---------------------------------------------------------------------------

struct DepthEvaluator::Impl {
    Grid grid;
    std::vector<Curve> base;
    DepthSpec spec;
    DegeneratePolicy policy;

    Impl(const FunctionalSample& sample, const DepthSpec& s, DegeneratePolicy p)
        : grid(sample.grid()), base(sample.curves()), spec(s), policy(p) {}
    virtual ~Impl() = default;
    virtual double eval(const Curve& g) const = 0;

    std::size_t n() const { return base.size(); }
};

namespace {

struct FmAppend final : DepthEvaluator::Impl {
    std::vector<std::vector<double>> cols;

    FmAppend(const FunctionalSample& s, const DepthSpec& sp, DegeneratePolicy p)
        : Impl(s, sp, p), cols(sorted_columns(s)) {}

    double eval(const Curve& g) const override {
        const double nn = static_cast<double>(n() + 1);
        std::vector<double> pointwise(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const auto cnt = std::upper_bound(cols[k].begin(), cols[k].end(), g[k]) -
                             cols[k].begin();
            const double f = (static_cast<double>(cnt) + 1.0) / nn;
            pointwise[k] = 1.0 - std::abs(0.5 - f);
        }
        return trapezoid_integral(pointwise, grid) / grid.length();
    }
};

struct HModalAppend final : DepthEvaluator::Impl {
    std::vector<double> base_pairs;

    HModalAppend(const FunctionalSample& s, const DepthSpec& sp, DegeneratePolicy p)
        : Impl(s, sp, p), base_pairs(pairwise_distances(s)) {}

    double eval(const Curve& g) const override {
        std::vector<double> to_g(n());
        for (std::size_t j = 0; j < n(); ++j) {
            to_g[j] = l2_distance(g, base[j], grid);
        }
        std::vector<double> all = base_pairs;
        all.insert(all.end(), to_g.begin(), to_g.end());
        const double h = resolve_bandwidth(
            quantile_ceil(std::move(all), spec.bandwidth_percentile / 100.0), policy);
        double sum = truncated_gaussian_kernel(0.0);  // self term
        for (double d : to_g) sum += truncated_gaussian_kernel(d / h);
        return sum;
    }
};

struct RpdAppend final : DepthEvaluator::Impl {
    std::vector<Curve> dirs;
    std::vector<std::vector<double>> base_scalars;       // per projection
    std::vector<std::vector<double>> base_pairs_sorted;  // per projection

    RpdAppend(const FunctionalSample& s, const DepthSpec& sp, DegeneratePolicy p)
        : Impl(s, sp, p), dirs(rpd_directions(sp, s.grid())) {
        std::vector<double> product(grid.size());
        base_scalars.resize(dirs.size());
        base_pairs_sorted.resize(dirs.size());
        for (std::size_t pi = 0; pi < dirs.size(); ++pi) {
            auto& scalars = base_scalars[pi];
            scalars.resize(n());
            for (std::size_t j = 0; j < n(); ++j) {
                for (std::size_t k = 0; k < grid.size(); ++k) {
                    product[k] = dirs[pi][k] * base[j][k];
                }
                scalars[j] = trapezoid_integral(product, grid);
            }
            auto& pairs = base_pairs_sorted[pi];
            pairs.reserve(n() * (n() - 1) / 2);
            for (std::size_t i = 0; i < n(); ++i) {
                for (std::size_t k = i + 1; k < n(); ++k) {
                    pairs.push_back(std::abs(scalars[i] - scalars[k]));
                }
            }
            std::sort(pairs.begin(), pairs.end());
        }
    }

    static double kth_of_merged(const std::vector<double>& a, const std::vector<double>& b,
                                std::size_t k) {
        std::size_t ia = 0;
        std::size_t ib = 0;
        double v = 0.0;
        for (std::size_t step = 0; step < k; ++step) {
            if (ia < a.size() && (ib >= b.size() || a[ia] <= b[ib])) {
                v = a[ia++];
            } else {
                v = b[ib++];
            }
        }
        return v;
    }

    double eval(const Curve& g) const override {
        std::vector<double> product(grid.size());
        std::vector<double> to_g(n());
        double total = 0.0;
        for (std::size_t pi = 0; pi < dirs.size(); ++pi) {
            for (std::size_t k = 0; k < grid.size(); ++k) product[k] = dirs[pi][k] * g[k];
            const double tg = trapezoid_integral(product, grid);
            for (std::size_t j = 0; j < n(); ++j) {
                to_g[j] = std::abs(tg - base_scalars[pi][j]);
            }
            std::sort(to_g.begin(), to_g.end());
            const std::size_t count = base_pairs_sorted[pi].size() + to_g.size();
            const std::size_t k = quantile_index(spec.bandwidth_percentile / 100.0, count);
            double h = kth_of_merged(base_pairs_sorted[pi], to_g, k);
            if (h < kBandwidthFloor) h = kBandwidthFloor;
            double sum = truncated_gaussian_kernel(0.0);
            for (double d : to_g) sum += truncated_gaussian_kernel(d / h);
            total += sum;
        }
        return total / static_cast<double>(dirs.size());
    }
};

struct BdAppend final : DepthEvaluator::Impl {
    using Impl::Impl;

    double eval(const Curve& g) const override {
        std::vector<const Curve*> curves(n());
        for (std::size_t j = 0; j < n(); ++j) curves[j] = &base[j];
        BandMasks masks(curves, g);
        const std::size_t covering = count_covering_pairs(masks, n());
        // Every pair formed with g itself covers g.
        return (static_cast<double>(covering) + static_cast<double>(n())) /
               pairs_of(static_cast<double>(n() + 1));
    }
};

struct MbdAppend final : DepthEvaluator::Impl {
    std::vector<std::vector<double>> cols;

    MbdAppend(const FunctionalSample& s, const DepthSpec& sp, DegeneratePolicy p)
        : Impl(s, sp, p), cols(sorted_columns(s)) {}

    double eval(const Curve& g) const override {
        const double total_pairs = pairs_of(static_cast<double>(n() + 1));
        std::vector<double> cover(grid.size());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const auto le = std::upper_bound(cols[k].begin(), cols[k].end(), g[k]) -
                            cols[k].begin();
            const auto lt = std::lower_bound(cols[k].begin(), cols[k].end(), g[k]) -
                            cols[k].begin();
            const double strictly_above = static_cast<double>(n() - static_cast<std::size_t>(le));
            const double strictly_below = static_cast<double>(lt);
            cover[k] = total_pairs - pairs_of(strictly_above) - pairs_of(strictly_below);
        }
        return trapezoid_integral(cover, grid) / (grid.length() * total_pairs);
    }
};

std::unique_ptr<DepthEvaluator::Impl> make_impl(const FunctionalSample& base,
                                                const DepthSpec& spec,
                                                DegeneratePolicy policy) {
    spec.validate();
    switch (spec.kind) {
        case DepthKind::FraimanMuniz:
            return std::make_unique<FmAppend>(base, spec, policy);
        case DepthKind::HModal:
            return std::make_unique<HModalAppend>(base, spec, policy);
        case DepthKind::RandomProjection:
            return std::make_unique<RpdAppend>(base, spec, policy);
        case DepthKind::Band:
            return std::make_unique<BdAppend>(base, spec, policy);
        case DepthKind::ModifiedBand:
            return std::make_unique<MbdAppend>(base, spec, policy);
    }
    throw ContractError("unknown depth kind");
}

}  // namespace

DepthEvaluator::DepthEvaluator(const FunctionalSample& base, const DepthSpec& spec,
                               DegeneratePolicy policy)
    : impl_(make_impl(base, spec, policy)) {}

DepthEvaluator::~DepthEvaluator() = default;
DepthEvaluator::DepthEvaluator(DepthEvaluator&&) noexcept = default;
DepthEvaluator& DepthEvaluator::operator=(DepthEvaluator&&) noexcept = default;

double DepthEvaluator::operator()(const Curve& candidate) const {
    require_conforming(impl_->grid, candidate);
    return impl_->eval(candidate);
}

double depth_wrt(const FunctionalSample& base, const Curve& g, const DepthSpec& spec,
                 DegeneratePolicy policy) {
    return DepthEvaluator(base, spec, policy)(g);
}

DeepestResult deepest(const FunctionalSample& base, const FunctionalSample& candidates,
                      const DepthSpec& spec, DegeneratePolicy policy) {
    require_same_grid(base, candidates);
    DepthEvaluator eval(base, spec, policy);
    DeepestResult best{0, eval(candidates.curve(0))};
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const double d = eval(candidates.curve(i));
        if (d > best.depth) {
            best = {i, d};
        }
    }
    return best;
}

}  // namespace fdhom
