#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fdhom/errors.hpp"

namespace fdhom {

// A curve is a vector of values aligned index-for-index with a Grid.
using Curve = std::vector<double>;

// Strictly increasing, finite observation instants t_1 < ... < t_m, m >= 2.
class Grid {
public:
    explicit Grid(std::vector<double> points);

    std::size_t size() const noexcept { return points_.size(); }
    double operator[](std::size_t k) const noexcept { return points_[k]; }
    const std::vector<double>& points() const noexcept { return points_; }

    // Total interval length t_m - t_1.
    double length() const noexcept { return points_.back() - points_.front(); }

    bool operator==(const Grid& other) const noexcept { return points_ == other.points_; }

private:
    std::vector<double> points_;
};

// n curves observed on one shared grid. Curve order is significant: bootstrap
// resampling splits pooled samples by position.
class FunctionalSample {
public:
    FunctionalSample(Grid grid, std::vector<Curve> curves,
                     std::vector<std::string> labels = {});

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return curves_.size(); }     // n
    std::size_t grid_size() const noexcept { return grid_.size(); }  // m
    const Curve& curve(std::size_t i) const { return curves_.at(i); }
    const std::vector<Curve>& curves() const noexcept { return curves_; }

    // Empty, or one label per curve.
    const std::vector<std::string>& labels() const noexcept { return labels_; }

private:
    Grid grid_;
    std::vector<Curve> curves_;
    std::vector<std::string> labels_;
};

// Integral of the piecewise-linear interpolant on the observation grid:
// sum_k (t_{k+1} - t_k) * (v_k + v_{k+1}) / 2. This is the one quadrature
// rule used everywhere in the library.
double trapezoid_integral(std::span<const double> values, const Grid& grid);

// L2(grid) distance: sqrt of the trapezoid integral of (a - b)^2.
double l2_distance(const Curve& a, const Curve& b, const Grid& grid);

// Iterated divided differences (v_{k+1} - v_k) / (t_{k+1} - t_k), applied
// `order` times. Each pass re-grids to segment midpoints, so the result has
// m - order points; m must exceed order + 1 so the result is still a valid
// sample. Throws DegenerateInputError otherwise.
FunctionalSample finite_difference(const FunctionalSample& sample, int order);

// ranks[i][k] = #{ j : x_j(t_k) <= x_i(t_k) }; ties counted by non-strict <=.
std::vector<std::vector<int>> pointwise_ranks(const FunctionalSample& sample);

// 1-based order-statistic index ceil(q * count) for q in (0,1), clamped to
// [1, count]. A small epsilon absorbs cases like 0.05 * 1000 landing a hair
// above 50 in floating point.
std::size_t quantile_index(double q, std::size_t count);

// The quantile_index(q, n)-th smallest of `values`. No interpolation, so the
// result is always one of the input values and bit-reproducible.
double quantile_ceil(std::vector<double> values, double q);

void require_same_grid(const FunctionalSample& a, const FunctionalSample& b);
void require_conforming(const Grid& grid, const Curve& curve);

}  // namespace fdhom
