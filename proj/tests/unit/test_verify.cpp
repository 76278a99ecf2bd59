#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "../support/oracles.hpp"
#include "schauder/hypotheses.hpp"
#include "schauder/solver.hpp"
#include "schauder/verify.hpp"

using namespace schauder;

namespace {

struct OuFixture : ::testing::Test {
    static void SetUpTestSuite() {
        CauchyProblem p;
        p.spec = oracle::spec_from(1, {{"1"}}, {"-x1"}, "1", "exp(-x1^2)*cos(t)", -1.0, 0.0);
        p.grid = SpaceGrid(1, 6.0, 97);
        p.g = sample(p.grid, [](const Point& x) { return std::exp(-x[0] * x[0]); });
        p.n_time = 128;
        spec = new OperatorSpec(p.spec);
        solution = new SpaceTimeFn(solve_cauchy(p).u);
        HypothesisSampling hs;
        hs.box_radius = 4.0;
        hyp = new HypothesisReport(check_hypotheses(p.spec, hs));
    }
    static void TearDownTestSuite() {
        delete spec;
        delete solution;
        delete hyp;
    }

    static SpaceTimeFn noisy(double level) {
        std::mt19937 rng(5);
        std::normal_distribution<double> N(0.0, 1.0);
        SpaceTimeFn u = *solution;
        const double s = u.sup();
        for (auto& sl : u.slices)
            for (Eigen::Index i = 0; i < sl.values.size(); ++i) sl.values[i] += level * s * N(rng);
        return u;
    }

    static inline OperatorSpec* spec = nullptr;
    static inline SpaceTimeFn* solution = nullptr;
    static inline HypothesisReport* hyp = nullptr;
};

SpaceTimeFn tabulate(double (*f)(double, double), double (*ft)(double, double), int n_slices) {
    SpaceTimeFn u;
    u.grid = SpaceGrid(1, 3.0, 49);
    for (int k = 0; k <= n_slices; ++k) {
        const double t = -1.0 + k / static_cast<double>(n_slices);
        u.times.push_back(t);
        u.slices.push_back(sample(u.grid, [&](const Point& x) { return f(t, x[0]); }));
        u.dt_slices.push_back(sample(u.grid, [&](const Point& x) { return ft(t, x[0]); }));
    }
    return u;
}

}  // namespace

TEST_F(OuFixture, IntegralResidualSeparatesSolutionFromNoise) {
    ResidualOptions o;
    o.window = 3.0;
    EXPECT_TRUE(audit_integral_residual(*solution, *spec, o).pass);
    EXPECT_FALSE(audit_integral_residual(noisy(1e-2), *spec, o).pass);
}

TEST_F(OuFixture, LocalizationSeparatesSolutionFromNoise) {
    LocalizationOptions o;
    o.t_lo = -0.9;
    o.t_hi = -0.5;
    const AuditReport clean = audit_localization(*spec, *hyp, *solution, 0.5, o);
    EXPECT_TRUE(clean.pass) << (clean.details.empty() ? "" : clean.details.front());
    EXPECT_FALSE(audit_localization(*spec, *hyp, noisy(1e-2), 0.5, o).pass);
}

TEST_F(OuFixture, MaxPrincipleHoldsForTheSolution) {
    const AuditReport r = audit_max_principle({{"ou", solution, *hyp, 1.0}});
    EXPECT_TRUE(r.pass);
    EXPECT_LE(r.measured.front().value, 1.0);
}

TEST(MaxPrinciple, WitnessAndViolation) {
    SpaceTimeFn one = tabulate([](double, double) { return 1.0; }, [](double, double) { return 0.0; }, 4);
    SpaceTimeFn two = tabulate([](double, double) { return 2.0; }, [](double, double) { return 0.0; }, 4);
    HypothesisReport h;
    h.delta = 1.0;
    h.F0 = 1.0;
    const AuditReport r = audit_max_principle({{"one", &one, h, 1.0}, {"two", &two, h, 1.0}});
    EXPECT_FALSE(r.pass);
    EXPECT_DOUBLE_EQ(r.measured[0].value, 1.0);
    EXPECT_DOUBLE_EQ(r.measured[1].value, 2.0);
    // No data at all: u must vanish.
    h.F0 = 0.0;
    EXPECT_FALSE(audit_max_principle({{"one", &one, h, 0.0}}).pass);
}

TEST(Schauder, SpreadAndInconsistentCases) {
    const SpaceTimeFn u = tabulate([](double, double x) { return std::cos(x); }, [](double, double) { return 0.0; }, 2);
    HypothesisReport a, b, none;
    a.F0 = 1.0;
    b.F0 = 3.0;
    const NormOptions o;
    const double na = empirical_schauder(u, a, 0.0, 0.5, o);
    EXPECT_NEAR(empirical_schauder(u, b, 0.0, 0.5, o), na / 3.0, 1e-15);
    const AuditReport spread = audit_schauder({{"a", &u, a, 0.0}, {"b", &u, b, 0.0}}, 0.5, o);
    EXPECT_NEAR(spread.summary.at("spread"), 3.0, 1e-12);
    EXPECT_FALSE(spread.pass);
    EXPECT_TRUE(audit_schauder({{"a", &u, a, 0.0}, {"b", &u, b, 0.0}}, 0.5, o, 3.5).pass);
    EXPECT_EQ(empirical_schauder(u, none, 0.0, 0.5, o), -1.0);
    EXPECT_FALSE(audit_schauder({{"a", &u, a, 0.0}, {"none", &u, none, 0.0}}, 0.5, o).pass);
}

TEST(TimeHolder, SmoothPassesRoughFails) {
    const SpaceTimeFn smooth = tabulate([](double t, double x) { return std::exp(t) * std::cos(x); },
                                        [](double t, double x) { return std::exp(t) * std::cos(x); }, 1024);
    TimeHolderOptions o;
    o.t_lo = -1.0;
    o.t_hi = 0.0;
    EXPECT_TRUE(audit_time_holder(smooth, 0.5, o).pass);
    // |t + 1/2|^{1/4}: |du| / gap grows like gap^{-3/4}.
    const SpaceTimeFn rough = tabulate(
        [](double t, double x) { return std::pow(std::abs(t + 0.5), 0.25) * std::cos(x); },
        [](double, double) { return 0.0; }, 1024);
    const AuditReport r = audit_time_holder(rough, 0.5, o);
    EXPECT_FALSE(r.pass);
    EXPECT_LT(r.summary.at("slope_u"), -0.5);
}

TEST(Embedding, HeatKernelRatiosStayBounded) {
    const oracle::HeatKernel1d k{0.5};
    SpaceTimeFn u;
    u.grid = SpaceGrid(1, 6.0, 97);
    for (int i = 0; i <= 512; ++i) {
        const double t = -1.0 + i / 512.0;
        u.times.push_back(t);
        u.slices.push_back(sample(u.grid, [&](const Point& x) { return k.v(t, x[0]); }));
        u.dt_slices.push_back(sample(u.grid, [&](const Point& x) { return k.t(t, x[0]); }));
    }
    EmbeddingAuditOptions o;
    o.t = 0.0;
    o.x = Point{0.75, 0, 0};
    o.h_list = {0.5, 0.25, 0.125, 0.0625};
    o.norm.window = 4.0;
    const AuditReport r = audit_embedding(u, 0.5, o);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.measured.size(), 8u);
}
