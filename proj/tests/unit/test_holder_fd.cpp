#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "schauder/errors.hpp"
#include "schauder/finite_difference.hpp"
#include "schauder/holder.hpp"

using namespace schauder;

TEST(FiniteDifference, QuadraticsAreExactUpToTheBoundary) {
    const SpaceGrid g(1, 2.0, 21);
    const GridFn u = sample(g, [](const Point& x) { return 3.0 * x[0] * x[0] - x[0] + 2.0; });
    const GridFn d1 = fd_derivative(u, 0);
    const GridFn d2 = fd_second_derivative(u, 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_NEAR(d1[i], 6.0 * g.coord(static_cast<int>(i)) - 1.0, 1e-11);
        EXPECT_NEAR(d2[i], 6.0, 1e-9);
    }
}

TEST(FiniteDifference, SecondOrderConvergence) {
    auto err = [](int n) {
        const SpaceGrid g(1, 1.0, n);
        const GridFn u = sample(g, [](const Point& x) { return std::sin(2.0 * x[0]); });
        const GridFn d1 = fd_derivative(u, 0);
        double e = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            e = std::max(e, std::abs(d1[i] - 2.0 * std::cos(2.0 * g.coord(static_cast<int>(i)))));
        return e;
    };
    EXPECT_NEAR(std::log2(err(41) / err(81)), 2.0, 0.15);
}

TEST(FiniteDifference, MixedHessianIsSymmetric) {
    const SpaceGrid g(2, 1.0, 17);
    const GridFn u = sample(g, [](const Point& x) { return x[0] * x[1] + x[0] * x[0]; });
    const auto H = fd_hessian(u);
    ASSERT_EQ(H.size(), 4u);
    for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_NEAR(H[1][i], 1.0, 1e-10);
        EXPECT_EQ(H[1][i], H[2][i]);
        EXPECT_NEAR(H[0][i], 2.0, 1e-9);
    }
    const GridFn tr = pointwise_trace(H);
    EXPECT_NEAR(tr[g.size() / 2], 2.0, 1e-9);
    const GridFn n = pointwise_norm(fd_gradient(u));
    const std::size_t c = g.size() / 2;  // origin
    EXPECT_NEAR(n[c], 0.0, 1e-12);
}

TEST(Holder, SquareRootHasUnitSeminorm) {
    const SpaceGrid g(1, 2.0, 33);
    const GridFn u = sample(g, [](const Point& x) { return std::sqrt(std::abs(x[0])); });
    EXPECT_NEAR(holder_seminorm(u, 0.5), 1.0, 1e-12);
    EXPECT_NEAR(holder_seminorm_bruteforce(u, 0.5), 1.0, 1e-12);
}

TEST(Holder, LinearFunctionPeaksAtTheDistanceCap) {
    const SpaceGrid g(1, 3.0, 49);
    const GridFn u = sample(g, [](const Point& x) { return 2.0 * x[0]; });
    EXPECT_NEAR(holder_seminorm(u, 0.5), 2.0, 1e-12);
    NormOptions o;
    o.max_dist = 0.25;
    EXPECT_NEAR(holder_seminorm(u, 0.5, o), 2.0 * std::sqrt(0.25), 1e-12);
}

// Sampled pairs are a subset of all pairs, and the sampler's dyadic steps
// keep it within a modest factor of the full search on rough data.
TEST(Holder, SampledNeverExceedsBruteForce) {
    std::mt19937 rng(11);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int d : {1, 2}) {
        for (int rep = 0; rep < 5; ++rep) {
            const SpaceGrid g(d, 1.0, d == 1 ? 41 : 15);
            GridFn u(g);
            for (std::size_t i = 0; i < g.size(); ++i) u[i] = N(rng);
            const double s = holder_seminorm(u, 0.5);
            const double b = holder_seminorm_bruteforce(u, 0.5);
            EXPECT_LE(s, b * (1 + 1e-14));
            EXPECT_GE(s, 0.5 * b);
        }
    }
}

TEST(Holder, BruteForceRefusesLargeGrids) {
    const SpaceGrid g(1, 1.0, 129);
    EXPECT_THROW(holder_seminorm_bruteforce(GridFn(g), 0.5), ConfigError);
}

TEST(Holder, WindowRestrictsTheNorm) {
    const SpaceGrid g(1, 4.0, 81);
    const GridFn u = sample(g, [](const Point& x) { return x[0] * x[0]; });
    NormOptions o;
    o.window = 1.0;
    EXPECT_NEAR(masked_sup(u, o), 1.0, 1e-12);
    const HolderReport r = norm_2alpha(u, 0.5, o);
    EXPECT_NEAR(r.sup, 1.0, 1e-12);
    EXPECT_NEAR(r.grad_sup, 2.0, 1e-10);
    EXPECT_NEAR(r.hess_sup, 2.0, 1e-9);
    EXPECT_NEAR(r.seminorm_2alpha, 0.0, 1e-7);
}

TEST(Holder, InterpolationConstantIsFinite) {
    const SpaceGrid g(1, 3.0, 61);
    std::vector<GridFn> fam;
    for (double k : {1.0, 2.0, 3.0}) fam.push_back(sample(g, [k](const Point& x) { return std::sin(k * x[0]); }));
    const auto rows = check_interpolation(fam, 0.5, {1.0, 0.5, 0.25});
    ASSERT_EQ(rows.size(), 3u);
    for (const auto& r : rows) EXPECT_TRUE(r.finite);
    // Smaller eps can only require a larger N.
    EXPECT_LE(rows[0].N, rows[2].N + 1e-12);
}
