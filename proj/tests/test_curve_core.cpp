#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fdhom/curve.hpp"
#include "fdhom/rng.hpp"
#include "support/oracles.hpp"

using namespace fdhom;

namespace {

Grid unit_grid(std::size_t m) {
    std::vector<double> pts(m);
    for (std::size_t k = 0; k < m; ++k) pts[k] = static_cast<double>(k) / static_cast<double>(m - 1);
    return Grid(std::move(pts));
}

}  // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(Grid({1.0}), ContractError);
    CHECK_THROWS_AS(Grid({1.0, 0.5, 0.0}), ContractError);
    CHECK_THROWS_AS(Grid({0.0, 0.0, 1.0}), ContractError);
    CHECK_THROWS_AS(Grid({0.0, std::nan(""), 1.0}), ContractError);
    const Grid g({0.0, 0.5, 1.0});
    CHECK(g.length() == 1.0);
    CHECK(g.size() == 3);
}

TEST_CASE("sample validation") {
    const Grid g({0.0, 1.0});
    CHECK_THROWS_AS(FunctionalSample(g, {}), ContractError);
    CHECK_THROWS_AS(FunctionalSample(g, {{1.0, 2.0, 3.0}}), ContractError);
    CHECK_THROWS_AS(FunctionalSample(g, {{1.0, std::nan("")}}), ContractError);
    CHECK_THROWS_AS(FunctionalSample(g, {{1.0, 2.0}}, {"a", "b"}), ContractError);
    const FunctionalSample s(g, {{1.0, 2.0}}, {"a"});
    CHECK(s.size() == 1);
    CHECK(s.labels()[0] == "a");
}

TEST_CASE("trapezoid integral: linear and constant values are exact") {
    const Grid g({0.0, 0.5, 1.0});
    CHECK(trapezoid_integral(std::vector<double>{0.0, 1.0, 2.0}, g) == 1.0);
    CHECK(trapezoid_integral(std::vector<double>{1.0, 1.0, 1.0}, g) == 1.0);
    CHECK_THROWS_AS(trapezoid_integral(std::vector<double>{1.0, 1.0}, g), ContractError);
}

TEST_CASE("trapezoid integral: quadratic on 31 points near 1/3") {
    const Grid g = unit_grid(31);
    std::vector<double> v(31);
    for (std::size_t k = 0; k < 31; ++k) v[k] = g[k] * g[k];
    const double integral = trapezoid_integral(v, g);
    // Standard error bound for the composite rule with f'' = 2 on 30 panels.
    CHECK(std::abs(integral - 1.0 / 3.0) <= 1.0 / (6.0 * 30.0 * 30.0));
    CHECK(integral == doctest::Approx(oracle::trapz(v, g)).epsilon(1e-15));
}

TEST_CASE("trapezoid integral is linear") {
    rng::Engine eng(71);
    const Grid g = unit_grid(17);
    for (int round = 0; round < 50; ++round) {
        std::vector<double> u(17), v(17), w(17);
        const double a = 4.0 * rng::uniform01(eng) - 2.0;
        const double b = 4.0 * rng::uniform01(eng) - 2.0;
        for (std::size_t k = 0; k < 17; ++k) {
            u[k] = rng::standard_normal(eng);
            v[k] = rng::standard_normal(eng);
            w[k] = a * u[k] + b * v[k];
        }
        const double combined = trapezoid_integral(w, g);
        const double split = a * trapezoid_integral(u, g) + b * trapezoid_integral(v, g);
        CHECK(combined == doctest::Approx(split).epsilon(1e-12));
    }
}

TEST_CASE("l2 distance basics") {
    const Grid g({0.0, 0.5, 1.0});
    const Curve a{1.0, 2.0, 3.0};
    CHECK(l2_distance(a, a, g) == 0.0);
    CHECK(l2_distance(Curve{0.0, 0.0, 0.0}, Curve{1.0, 1.0, 1.0}, g) == 1.0);
    CHECK_THROWS_AS(l2_distance(a, Curve{1.0, 2.0}, g), ContractError);
}

TEST_CASE("l2 distance of identity vs zero near 1/sqrt(3)") {
    const Grid g = unit_grid(30);
    Curve t(30), zero(30, 0.0);
    for (std::size_t k = 0; k < 30; ++k) t[k] = g[k];
    const double d = l2_distance(t, zero, g);
    CHECK(d == doctest::Approx(oracle::l2(t, zero, g)).epsilon(1e-15));
    CHECK(std::abs(d - 1.0 / std::sqrt(3.0)) < 1e-3);
}

TEST_CASE("l2 distance satisfies the triangle inequality") {
    rng::Engine eng(18);
    for (int round = 0; round < 100; ++round) {
        const auto s = oracle::random_sample(eng, 3, 8);
        const double ab = l2_distance(s.curve(0), s.curve(1), s.grid());
        const double bc = l2_distance(s.curve(1), s.curve(2), s.grid());
        const double ac = l2_distance(s.curve(0), s.curve(2), s.grid());
        CHECK(ac <= ab + bc + 1e-12);
    }
}

TEST_CASE("finite difference: constants and identity") {
    const Grid g = unit_grid(5);
    Curve t(5), ones(5, 1.0);
    for (std::size_t k = 0; k < 5; ++k) t[k] = g[k];
    const FunctionalSample s(g, {Curve(5, 3.5), t});

    const FunctionalSample d1 = finite_difference(s, 1);
    CHECK(d1.grid_size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(d1.curve(0)[k] == 0.0);
        CHECK(d1.curve(1)[k] == doctest::Approx(1.0).epsilon(1e-12));
        // Midpoint re-gridding.
        CHECK(d1.grid()[k] == doctest::Approx((g[k] + g[k + 1]) / 2.0));
    }
}

TEST_CASE("finite difference: second difference of a quadratic is exactly 2") {
    // Quarter steps are exact in binary, so the divided differences are too.
    const Grid g({0.0, 0.25, 0.5, 0.75, 1.0, 1.25});
    Curve sq(6);
    for (std::size_t k = 0; k < 6; ++k) sq[k] = g[k] * g[k];
    const FunctionalSample d2 = finite_difference(FunctionalSample(g, {sq}), 2);
    CHECK(d2.grid_size() == 4);
    for (double v : d2.curve(0)) CHECK(v == 2.0);
}

TEST_CASE("finite difference: constant increment becomes constant slope") {
    rng::Engine eng(9);
    for (int round = 0; round < 20; ++round) {
        const std::size_t m = 4 + static_cast<std::size_t>(rng::uniform_index(eng, 8));
        const double delta = 0.1 + rng::uniform01(eng);
        const double c = 4.0 * rng::uniform01(eng) - 2.0;
        std::vector<double> pts(m);
        Curve v(m);
        for (std::size_t k = 0; k < m; ++k) {
            pts[k] = delta * static_cast<double>(k);
            v[k] = c * delta * static_cast<double>(k);  // increment c*delta per step
        }
        const auto d = finite_difference(FunctionalSample(Grid(pts), {v}), 1);
        for (double x : d.curve(0)) CHECK(x == doctest::Approx(c).epsilon(1e-12));
    }
}

TEST_CASE("finite difference rejects exhausted grids") {
    const FunctionalSample s(Grid({0.0, 1.0}), {{1.0, 2.0}});
    CHECK_THROWS_AS(finite_difference(s, 2), DegenerateInputError);
    CHECK_THROWS_AS(finite_difference(s, 0), ContractError);
    // A 2-point sample cannot lose a point and stay a valid sample.
    CHECK_THROWS_AS(finite_difference(s, 1), DegenerateInputError);
    const FunctionalSample s3(Grid({0.0, 0.5, 1.0}), {{1.0, 2.0, 3.0}});
    CHECK_NOTHROW(finite_difference(s3, 1));
    CHECK_THROWS_AS(finite_difference(s3, 2), DegenerateInputError);
}

TEST_CASE("pointwise ranks") {
    const Grid g({0.0, 0.5, 1.0});

    SUBCASE("single curve") {
        const auto r = pointwise_ranks(FunctionalSample(g, {{5.0, 5.0, 5.0}}));
        for (int v : r[0]) CHECK(v == 1);
    }
    SUBCASE("three ordered constants") {
        const auto r = pointwise_ranks(oracle::constants_sample({0.0, 1.0, 2.0}));
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(r[0][k] == 1);
            CHECK(r[1][k] == 2);
            CHECK(r[2][k] == 3);
        }
    }
    SUBCASE("ties count both") {
        const auto r = pointwise_ranks(oracle::constants_sample({7.0, 7.0}));
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(r[0][k] == 2);
            CHECK(r[1][k] == 2);
        }
    }
}

TEST_CASE("rank column sums meet the no-ties bound") {
    rng::Engine eng(55);
    for (int round = 0; round < 30; ++round) {
        const std::size_t n = 2 + rng::uniform_index(eng, 5);
        auto s = oracle::random_sample(eng, n, 4);
        const auto r = pointwise_ranks(s);
        const int lower = static_cast<int>(n * (n + 1) / 2);
        for (std::size_t k = 0; k < 4; ++k) {
            int sum = 0;
            bool ties = false;
            for (std::size_t i = 0; i < n; ++i) {
                sum += r[i][k];
                for (std::size_t j = i + 1; j < n; ++j) {
                    ties |= s.curve(i)[k] == s.curve(j)[k];
                }
            }
            CHECK(sum >= lower);
            if (!ties) CHECK(sum == lower);
        }
    }
}

TEST_CASE("quantile index matches the stated order statistics") {
    CHECK(quantile_index(0.05, 1000) == 50);
    CHECK(quantile_index(0.95, 1000) == 950);
    CHECK(quantile_index(0.15, 3) == 1);
    CHECK(quantile_index(0.5, 2) == 1);
    CHECK(quantile_index(0.999, 10) == 10);
    CHECK(quantile_index(0.001, 10) == 1);
    CHECK_THROWS_AS(quantile_index(0.5, 0), ContractError);
    CHECK_THROWS_AS(quantile_index(0.0, 5), ContractError);
    CHECK_THROWS_AS(quantile_index(1.0, 5), ContractError);

    std::vector<double> values;
    for (int i = 1000; i >= 1; --i) values.push_back(static_cast<double>(i));
    CHECK(quantile_ceil(values, 0.05) == 50.0);
    CHECK(quantile_ceil(values, 0.95) == 950.0);
}
