#pragma once

#include <vector>

#include "schauder/grid.hpp"
#include "schauder/hypotheses.hpp"
#include "schauder/operator_spec.hpp"
#include "schauder/small_linalg.hpp"

namespace schauder {

struct FlowOptions {
    double step = 1e-3;
    double blowup_cap = 1e6;
};

/// Solution of x' = b(t, x) stored at every integrator node, ascending in t.
struct FlowPath {
    double t0 = 0.0;
    SmallVec x0;
    std::vector<double> times;
    std::vector<SmallVec> points;
    /// Two entries per node: b from the right at 2k, from the left at 2k+1
    /// (they differ only at coefficient breakpoints).
    std::vector<SmallVec> velocities;
    int steps = 0;

    /// Cubic Hermite interpolation; outside the stored range the nearest end
    /// point is held.
    SmallVec at(double t) const;
    SmallVec velocity(double t) const;
    double t_min() const { return times.front(); }
    double t_max() const { return times.back(); }
};

/// Classical RK4 from (t0, x0) to t1 (either direction), with sub-steps ending
/// on every breakpoint of the spec. Throws NumericalError when |x| exceeds the
/// blow-up cap.
FlowPath flow(const OperatorSpec& spec, double t0, const SmallVec& x0, double t1, const FlowOptions& opts = {});

/// Coefficients of the spec frozen along a flow path.
class FrozenOperator {
public:
    FrozenOperator(OperatorSpec spec, FlowPath path);

    const OperatorSpec& spec() const { return spec_; }
    const FlowPath& path() const { return path_; }
    int d() const { return spec_.d(); }

    SmallMat a0(double t) const;
    SmallVec b0(double t) const;
    double c0(double t) const;
    double f0(double t) const;

private:
    OperatorSpec spec_;
    FlowPath path_;
};

FrozenOperator freeze(const OperatorSpec& spec, const FlowPath& path);

/// Deviation of the true coefficients from the frozen ones over |x - x(t)| <= 2 eps.
struct FrozenDeviation {
    double a = 0.0;  // Frobenius
    double b = 0.0;  // Euclidean
    double c = 0.0;
    double f = 0.0;
    double bound_coeff = 0.0;  // d K (2 eps)^alpha
    double bound_f = 0.0;      // F_alpha (2 eps)^alpha
    bool within() const { return a <= bound_coeff && b <= bound_coeff && c <= bound_coeff && f <= bound_f; }
};

/// Samples n_time times in the path range and a ball lattice of radius 2 eps.
FrozenDeviation frozen_deviation(const FrozenOperator& frozen, const HypothesisReport& hyp, double eps,
                                 int n_time = 9, int n_radial = 4);

struct U0Options {
    double tol = 1e-10;
    int intervals = 4000;
};

/// u0(t) = -int_t^{t+Δ} f0(s) exp(-int_t^s c0) ds with Δ = ln(F0/tol)/δ.
/// Returns 0 when F0 <= tol. Throws ConfigError when δ <= 0.
double particular_u0(const FrozenOperator& frozen, double t, double delta, double F0, const U0Options& opts = {});

/// C^2 radial cutoff: 1 for r <= eps, 0 for r >= 2 eps, quintic smoothstep between.
double cutoff_profile(double r, double eps);
double cutoff_profile_derivative(double r, double eps);
double cutoff_profile_second(double r, double eps);

/// eta(t, x) = zeta(|x - x(t)|) on the given times, with the exact time
/// derivative -zeta'(r) (x - x(t))/r . x'(t) in dt_slices. Throws ConfigError
/// when 2 eps exceeds the box radius or eps is outside (0, 1/2).
SpaceTimeFn cutoff_eta(const FlowPath& path, double eps, const SpaceGrid& grid, const std::vector<double>& times);

/// sup |eta_t + x'(t) . D eta| with eta_t by a centered difference of width
/// 2 dt and D eta exact: vanishes at second order in dt.
double transport_residual(const FlowPath& path, double eps, const SpaceGrid& grid, double t, double dt);

}  // namespace schauder
