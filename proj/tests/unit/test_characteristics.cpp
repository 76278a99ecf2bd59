#include <cmath>

#include <gtest/gtest.h>

#include "../support/oracles.hpp"
#include "schauder/characteristics.hpp"
#include "schauder/errors.hpp"
#include "schauder/hypotheses.hpp"

using namespace schauder;

namespace {

SmallVec at(double v) {
    SmallVec x(1);
    x << v;
    return x;
}

}  // namespace

TEST(Flow, LinearDriftIsExponential) {
    const auto spec = oracle::spec_from(1, {{"1"}}, {"-x1"}, "1", "0", -1.0, 1.0);
    const FlowPath p = flow(spec, 0.0, at(2.0), 1.0);
    EXPECT_NEAR(p.at(1.0)(0), 2.0 * std::exp(-1.0), 1e-11);
    EXPECT_NEAR(p.at(0.37)(0), 2.0 * std::exp(-0.37), 1e-9);
    const FlowPath back = flow(spec, 0.0, at(2.0), -1.0);
    EXPECT_NEAR(back.at(-1.0)(0), 2.0 * std::exp(1.0), 1e-10);
    EXPECT_NEAR(back.velocity(-0.5)(0), -2.0 * std::exp(0.5), 1e-8);
}

TEST(Flow, StepsLandOnBreakpoints) {
    const auto spec = oracle::spec_from(1, {{"1"}}, {"step(t - 0.3)"}, "1", "0", 0.0, 1.0, 0.5, {0.3});
    const FlowPath p = flow(spec, 0.0, at(0.0), 1.0);
    EXPECT_NEAR(p.at(1.0)(0), 0.7, 1e-14);
    EXPECT_NE(std::find(p.times.begin(), p.times.end(), 0.3), p.times.end());
}

TEST(Flow, BlowUpIsReported) {
    const auto spec = oracle::spec_from(1, {{"1"}}, {"x1^2"}, "1", "0", 0.0, 2.0);
    EXPECT_THROW(flow(spec, 0.0, at(1.0), 2.0), NumericalError);
}

TEST(Cutoff, ProfileIsC2) {
    const double eps = 0.2;
    EXPECT_EQ(cutoff_profile(0.1, eps), 1.0);
    EXPECT_EQ(cutoff_profile(0.5, eps), 0.0);
    for (double r : {eps, 2 * eps}) {
        EXPECT_NEAR(cutoff_profile_derivative(r, eps), 0.0, 1e-12);
        EXPECT_NEAR(cutoff_profile_second(r, eps), 0.0, 1e-9);
    }
    // Derivative consistent with the profile.
    const double r = 0.27, dr = 1e-6;
    EXPECT_NEAR((cutoff_profile(r + dr, eps) - cutoff_profile(r - dr, eps)) / (2 * dr),
                cutoff_profile_derivative(r, eps), 1e-6);
}

TEST(Cutoff, TransportResidualIsSecondOrder) {
    const auto spec = oracle::spec_from(1, {{"1"}}, {"-x1 + cos(t)"}, "1", "0", -1.0, 0.0);
    const FlowPath p = flow(spec, -1.0, at(0.5), 0.0);
    const SpaceGrid g(1, 2.0, 401);
    const double r1 = transport_residual(p, 0.25, g, -0.5, 0.01);
    const double r2 = transport_residual(p, 0.25, g, -0.5, 0.005);
    EXPECT_NEAR(std::log2(r1 / r2), 2.0, 0.2);
    EXPECT_THROW(cutoff_eta(p, 0.6, g, {-0.5}), ConfigError);
}

TEST(Frozen, ConstantCoefficientsGiveTheStationaryParticularSolution) {
    const auto spec = oracle::spec_from(1, {{"1"}}, {"0"}, "2", "3", -1.0, 0.0);
    const FrozenOperator fr = freeze(spec, flow(spec, -1.0, at(0.0), 0.0));
    EXPECT_DOUBLE_EQ(fr.c0(-0.5), 2.0);
    EXPECT_DOUBLE_EQ(fr.f0(-0.5), 3.0);
    // u0' - c0 u0 = -f0 with bounded u0: u0 = -f0 / c0. The default
    // 4000-panel midpoint rule on [0, ln(F0/tol)/delta] is good to ~h^2.
    EXPECT_NEAR(particular_u0(fr, -0.5, 2.0, 1.5), -1.5, 1e-5);
    U0Options fine;
    fine.intervals = 16000;
    EXPECT_NEAR(particular_u0(fr, -0.5, 2.0, 1.5, fine), -1.5, 2e-7);
}

TEST(Frozen, DeviationRespectsTheHolderBound) {
    const auto spec = oracle::spec_from(1, {{"1 + 0.5*sin(x1)"}}, {"-x1"}, "1 + 0.5*abs(x1)^0.5", "0", -1.0, 0.0);
    const HypothesisReport hyp = check_hypotheses(spec, HypothesisSampling{});
    const FrozenOperator fr = freeze(spec, flow(spec, -1.0, at(0.3), 0.0));
    for (double eps : {0.2, 0.1, 0.05}) EXPECT_TRUE(frozen_deviation(fr, hyp, eps).within()) << eps;
}
