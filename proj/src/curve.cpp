#include "fdhom/curve.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace fdhom {

namespace {

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw ContractError("grid needs at least two points");
    }
    if (!all_finite(points_)) {
        throw ContractError("grid points must be finite");
    }
    for (std::size_t k = 1; k < points_.size(); ++k) {
        if (!(points_[k - 1] < points_[k])) {
            throw ContractError("grid points must be strictly increasing");
        }
    }
}

FunctionalSample::FunctionalSample(Grid grid, std::vector<Curve> curves,
                                   std::vector<std::string> labels)
    : grid_(std::move(grid)), curves_(std::move(curves)), labels_(std::move(labels)) {
    if (curves_.empty()) {
        throw ContractError("sample needs at least one curve");
    }
    for (const Curve& c : curves_) {
        require_conforming(grid_, c);
    }
    if (!labels_.empty() && labels_.size() != curves_.size()) {
        throw ContractError("labels must be empty or one per curve");
    }
}

double trapezoid_integral(std::span<const double> values, const Grid& grid) {
    if (values.size() != grid.size()) {
        throw ContractError("value vector does not match grid length");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        sum += (grid[k + 1] - grid[k]) * (values[k] + values[k + 1]) / 2.0;
    }
    return sum;
}

double l2_distance(const Curve& a, const Curve& b, const Grid& grid) {
    if (a.size() != grid.size() || b.size() != grid.size()) {
        throw ContractError("curves do not conform to the grid");
    }
    std::vector<double> sq(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sq[k] = d * d;
    }
    return std::sqrt(trapezoid_integral(sq, grid));
}

FunctionalSample finite_difference(const FunctionalSample& sample, int order) {
    if (order < 1) {
        throw ContractError("difference order must be positive");
    }
    // Each pass drops one grid point and the result must still be a valid
    // sample (at least two points).
    if (sample.grid_size() < static_cast<std::size_t>(order) + 2) {
        throw DegenerateInputError("sample has too few grid points for the requested order");
    }

    std::vector<double> points = sample.grid().points();
    std::vector<Curve> curves = sample.curves();
    for (int pass = 0; pass < order; ++pass) {
        const std::size_t m = points.size();
        std::vector<double> next_points(m - 1);
        for (std::size_t k = 0; k + 1 < m; ++k) {
            next_points[k] = (points[k] + points[k + 1]) / 2.0;
        }
        for (Curve& c : curves) {
            Curve d(m - 1);
            for (std::size_t k = 0; k + 1 < m; ++k) {
                d[k] = (c[k + 1] - c[k]) / (points[k + 1] - points[k]);
            }
            c = std::move(d);
        }
        points = std::move(next_points);
    }
    return FunctionalSample(Grid(points), std::move(curves), sample.labels());
}

std::vector<std::vector<int>> pointwise_ranks(const FunctionalSample& sample) {
    const std::size_t n = sample.size();
    const std::size_t m = sample.grid_size();
    std::vector<std::vector<int>> ranks(n, std::vector<int>(m));
    std::vector<double> column(n);
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t j = 0; j < n; ++j) column[j] = sample.curve(j)[k];
        std::sort(column.begin(), column.end());
        for (std::size_t i = 0; i < n; ++i) {
            const double x = sample.curve(i)[k];
            ranks[i][k] = static_cast<int>(
                std::upper_bound(column.begin(), column.end(), x) - column.begin());
        }
    }
    return ranks;
}

std::size_t quantile_index(double q, std::size_t count) {
    if (count == 0) {
        throw ContractError("quantile of an empty set");
    }
    if (!(q > 0.0 && q < 1.0)) {
        throw ContractError("quantile fraction must lie in (0, 1)");
    }
    const double raw = std::ceil(q * static_cast<double>(count) - 1e-9);
    auto idx = static_cast<std::size_t>(std::max(raw, 1.0));
    return std::min(idx, count);
}

double quantile_ceil(std::vector<double> values, double q) {
    const std::size_t idx = quantile_index(q, values.size());
    std::nth_element(values.begin(), values.begin() + (idx - 1), values.end());
    return values[idx - 1];
}

void require_same_grid(const FunctionalSample& a, const FunctionalSample& b) {
    if (!(a.grid() == b.grid())) {
        throw ContractError("samples live on different grids");
    }
}

void require_conforming(const Grid& grid, const Curve& curve) {
    if (curve.size() != grid.size()) {
        throw ContractError("curve length does not match grid");
    }
    if (!all_finite(curve)) {
        throw ContractError("curve values must be finite");
    }
}

}  // namespace fdhom
