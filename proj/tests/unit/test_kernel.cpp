#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "schauder/cone.hpp"
#include "schauder/errors.hpp"
#include "schauder/expr.hpp"
#include "schauder/kernel.hpp"
#include "schauder/potential.hpp"
#include "schauder/small_linalg.hpp"

using namespace schauder;

TEST(SmallLinalg, EigenvaluesInverseDeterminant) {
    SmallMat m(2, 2);
    m << 2, 1, 1, 2;
    const auto r = symmetric_eigen_range(m);
    EXPECT_NEAR(r.min, 1.0, 1e-14);
    EXPECT_NEAR(r.max, 3.0, 1e-14);
    EXPECT_NEAR(small_determinant(m), 3.0, 1e-14);
    EXPECT_NEAR((small_inverse(m) * m - SmallMat::Identity(2, 2)).norm(), 0.0, 1e-14);

    SmallMat a(3, 3);
    a << 4, 1, 0, 1, 3, 1, 0, 1, 2;
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> ref{Eigen::Matrix3d(a)};
    const SmallVec ev = symmetric_eigenvalues(a);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(ev(i), ref.eigenvalues()(i), 1e-12);
    EXPECT_NEAR(small_determinant(a), Eigen::Matrix3d(a).determinant(), 1e-12);
    EXPECT_NEAR((small_inverse(a) * a - SmallMat::Identity(3, 3)).norm(), 0.0, 1e-13);

    EXPECT_THROW(small_inverse(SmallMat::Zero(2, 2)), NumericalError);
}

TEST(TimeMatrixPath, RejectsSpaceDependence) {
    EXPECT_THROW(TimeMatrixPath(1, {{parse_expr("1 + x1")}}), ConfigError);
}

TEST(Kernel, ConstantPathIntegratesExactly) {
    SmallMat a(2, 2);
    a << 1.5, 0.2, 0.2, 0.7;
    const GaussParams p = accumulate_A(TimeMatrixPath::constant(a), -0.3, 0.45);
    EXPECT_NEAR((p.A - 0.75 * a).norm(), 0.0, 1e-15);
    EXPECT_THROW(accumulate_A(TimeMatrixPath::constant(a), 0.1, 0.1), ConfigError);
}

TEST(Kernel, JumpPathIsSplitAtTheBreakpoint) {
    const TimeMatrixPath path(1, {{parse_expr("1 + 2*step(t)")}}, {0.0});
    // a = 1 on [-1, 0), 3 on [0, 0.5].
    EXPECT_NEAR(accumulate_A(path, -1.0, 0.5).A(0, 0), 1.0 + 1.5, 1e-14);
}

TEST(Kernel, SmoothPathMatchesClosedForm) {
    const TimeMatrixPath path(1, {{parse_expr("2 + sin(t)")}});
    const double exact = 2.0 * 1.3 - (std::cos(1.0) - std::cos(-0.3));
    EXPECT_NEAR(accumulate_A(path, -0.3, 1.0).A(0, 0), exact, 1e-14);
}

TEST(Kernel, OneDimensionalDensity) {
    const GaussParams p = accumulate_A(TimeMatrixPath::identity(1), 0.0, 0.5);
    // Covariance 2A = 1: standard normal.
    const double x = 0.7;
    EXPECT_NEAR(gauss_kernel(p, Point{x, 0, 0}), std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi), 1e-14);
}

TEST(Convolution, ReproducesSecondMoments) {
    const SpaceGrid g(1, 4.0, 81);
    SmallMat A(1, 1);
    A << 0.5;
    const GridFn out = gaussian_convolve([](const Point& x) { return x[0] * x[0]; }, g, A);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = g.coord(static_cast<int>(i));
        EXPECT_NEAR(out[i], x * x + 1.0, 1e-9);
    }
}

TEST(Convolution, HeatSemigroupFixesConstants) {
    const SpaceGrid g(2, 2.0, 21);
    GridFn one(g);
    one.values.setOnes();
    const GridFn out = heat_semigroup(one, 0.3);
    EXPECT_NEAR((out.values.array() - 1.0).abs().maxCoeff(), 0.0, 1e-13);
}

TEST(Cone, GeometryAndPolarization) {
    SmallVec axis(2);
    axis << 1, 0;
    const ConeSpec cone{axis, 2.0, 1.0};
    EXPECT_NEAR(cone.half_angle(), std::asin(0.5), 1e-15);
    EXPECT_TRUE(cone.contains(0.5 * axis));
    SmallVec off(2);
    off << 0.0, 0.5;
    EXPECT_FALSE(cone.contains(off));
    for (const auto& xi : cone_directions(cone, 16)) EXPECT_TRUE(cone.contains(0.99 * xi));

    SmallMat M(2, 2);
    M << 1.0, -0.4, -0.4, 2.5;
    const PolarizationResult r = polarize_in_cone(M, cone);
    EXPECT_NEAR((r.recovered - M).norm(), 0.0, 1e-12);
    EXPECT_GT(r.N, 0.0);
    // |M^{ij}| <= N max |xi^T M xi| over the cone.
    EXPECT_LE(M.cwiseAbs().maxCoeff(), r.N * cone_matrix_bound(M, cone, 64) * (1 + 1e-12));
}
