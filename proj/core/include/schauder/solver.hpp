#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "schauder/discretization.hpp"
#include "schauder/grid.hpp"
#include "schauder/hypotheses.hpp"
#include "schauder/operator_spec.hpp"

namespace schauder {

struct SchemeOptions {
    double theta = 0.5;
    bool full_upwind = false;
    /// Leading steps (from S) replaced by two implicit half steps when theta < 1.
    int rannacher_steps = 2;
    double solver_tol = 1e-10;
    int max_iterations = 5000;
};

/// Operator replaced by lambda L_h + (1 - lambda)(Δ_h - delta).
struct OperatorBlend {
    double lambda = 1.0;
    double delta = 1.0;
};

using GridSource = std::function<GridFn(double t)>;

struct CauchyProblem {
    OperatorSpec spec;
    GridFn g;  // final condition at S
    SpaceGrid grid;
    int n_time = 64;
    int n_trunc = 0;  // 0: no coefficient truncation
    BoundaryMode boundary_mode = BoundaryMode::DirichletFinal;
    SchemeOptions scheme;

    /// Replaces spec.f when set.
    GridSource source_override;
    /// Added to the source; must live on exactly the time grid of the problem.
    std::optional<SpaceTimeFn> extra_source;
    std::optional<OperatorBlend> blend;
};

struct SolveResult {
    SpaceTimeFn u;
    double boundary_influence = 0.0;
    double barrier_N0 = 0.0;
    int iterations = 0;             // linear-solver iterations, summed
    double max_linear_residual = 0.0;
    int picard_iterations = 0;
    std::vector<double> contraction;  // per continuation step
    std::map<std::string, double> diagnostics;
};

/// chi_n applied to b, c, f through min/max nodes; a untouched.
OperatorSpec truncate_coeffs(const OperatorSpec& spec, double n);

/// Stored times of the backward march: uniform on [T, S] with breakpoints
/// inserted and the leading Rannacher steps split in half.
std::vector<double> cauchy_time_grid(const CauchyProblem& p);

/// theta-scheme march from S down to T. u(S) = g exactly; dt_slices hold
/// f - L_h u (0 on Dirichlet rows). Throws NumericalError when a linear solve
/// fails to reach the tolerance.
SolveResult solve_cauchy(const CauchyProblem& p);

/// (Δ - delta) extension beyond S: the returned problem lives on [T, S_new]
/// and its solution equals e^{S - t} g for t >= S.
struct ExtendedProblem {
    OperatorSpec spec;
    GridSource source;
};
ExtendedProblem extend_final_condition(const OperatorSpec& spec, const GridFn& g, double delta, double S_new);

/// c >= 0 only: solves with c + 1 and e^{t-S} f, returns v = e^{S-t} u.
/// diagnostics: sup_norm_u, sup_norm_v, inflation (e^{S-T}).
SolveResult solve_degenerate_c(const CauchyProblem& p);

struct ContinuationOptions {
    double lambda_step = 0.1;
    double lambda_target = 1.0;
    double picard_tol = 1e-8;
    int max_picard = 200;
    double delta = 1.0;  // potential of the base heat operator
};

/// Continuation from Δ - delta to L along lambda with Picard iteration at
/// each step. The base solves at lambda0 = 0 use the Gaussian heat solver;
/// later steps use the theta-scheme for the blended operator. Works with
/// w = u - g so the base problems have zero final data. Throws
/// NumericalError when a contraction factor >= 1 is observed.
SolveResult continuation_solve(const CauchyProblem& p, const ContinuationOptions& opts = {});

struct EllipticOptions {
    BoundaryMode boundary_mode = BoundaryMode::Ode;
    double tol_stat = 1e-8;
    double max_horizon = 200.0;
    int steps_per_unit = 32;
    SchemeOptions scheme;
};

struct EllipticResult {
    GridFn direct;
    GridFn parabolic;
    double horizon = 0.0;  // time marched by the parabolic route
    bool stationary = false;
    double route_gap = 0.0;
};

/// Direct sparse solve of L_h u = f plus the parabolic stationarity route.
/// Throws ConfigError when the data depend on t.
EllipticResult solve_elliptic(const OperatorSpec& spec, const SpaceGrid& grid, const EllipticOptions& opts = {});

/// T_t g for time-independent coefficients and f = 0, by the implicit
/// fully-upwinded scheme with step dt. T_0 g = g.
GridFn semigroup_T(const OperatorSpec& spec, const GridFn& g, double t, double dt = 1.0 / 64.0,
                   BoundaryMode mode = BoundaryMode::DirichletFinal);

/// Sampled N0 with (d/dt + L)(1+|x|^2)e^{-N0 t} <= 0 on the grid.
double barrier_constant(const OperatorSpec& spec, const SpaceGrid& grid, const std::vector<double>& times);

}  // namespace schauder
