#pragma once

#include <map>
#include <string>
#include <vector>

#include "schauder/grid.hpp"
#include "schauder/holder.hpp"
#include "schauder/hypotheses.hpp"
#include "schauder/kernel.hpp"
#include "schauder/operator_spec.hpp"
#include "schauder/small_linalg.hpp"
#include "schauder/solver.hpp"

namespace schauder {

struct Measurement {
    std::string config;
    double value = 0.0;
};

struct AuditReport {
    std::string name;
    std::vector<Measurement> measured;
    double threshold = 0.0;
    bool pass = false;
    std::vector<std::string> details;
    /// Derived figures such as spread or fitted slopes.
    std::map<std::string, double> summary;
};

// ---- maximum principle ----

struct MaxPrincipleCase {
    std::string name;
    const SpaceTimeFn* u = nullptr;
    HypothesisReport hyp;
    double g_sup = 0.0;
};

/// sup over slices of |u| / max(F0, |g|_0); with both zero the raw sup|u| is
/// measured and must vanish.
AuditReport audit_max_principle(const std::vector<MaxPrincipleCase>& cases, double threshold = 1.01);

// ---- Schauder constant ----

struct SchauderCase {
    std::string name;
    const SpaceTimeFn* u = nullptr;
    HypothesisReport hyp;
    /// |g|_{2+alpha}; zero in the pure (F0 + Falpha) form.
    double g_norm = 0.0;
};

/// max over slices of |u(t)|_{2+alpha} / (F0 + Falpha + |g|_{2+alpha}),
/// norms restricted by `opts`. Negative when the denominator vanishes but u
/// does not.
double empirical_schauder(const SpaceTimeFn& u, const HypothesisReport& hyp, double g_norm, double alpha,
                          const NormOptions& opts);

/// summary: spread = max/min of N_emp over the sweep. Passes when spread <=
/// threshold and no case is inconsistent.
AuditReport audit_schauder(const std::vector<SchauderCase>& cases, double alpha, const NormOptions& opts,
                           double threshold = 2.0);

// ---- time regularity ----

struct TimeHolderOptions {
    double t_lo = 0.0;
    double t_hi = 0.0;
    double ball_radius = 1.0;
    std::vector<double> gaps = {0.25, 0.0625, 0.015625, 0.00390625, 0.0009765625};
    /// Allowed log-log slope of the running envelope (0 = no growth).
    double slope_tol = 0.15;
    /// Pairs start at stored slices in the window, at most this many.
    std::size_t max_starts = 64;
};

/// Sup over s, t in the window with |t - s| = gap and |x| <= ball_radius of
/// |du|/gap, |dDu|/gap^{(1+a)/2}, |dD^2u|/gap^{a/2}, per gap. summary holds
/// the three envelope slopes.
AuditReport audit_time_holder(const SpaceTimeFn& u, double alpha, const TimeHolderOptions& opts);

// ---- integral form of the equation ----

struct ResidualOptions {
    /// Nodes within this many layers of the boundary are skipped.
    int boundary_layers = 2;
    double window = 0.0;
    /// Longest span (in stored slices) of the sampled (s, t) pairs.
    int max_span = 8;
    double threshold = 1e-2;
};

/// r = |u(t) - u(s) - int_s^t (f - Lu)| with the trapezoid rule over stored
/// slices and Lu by centered stencils; measured relative to |u|_0.
/// `source` replaces spec.f when set.
AuditReport audit_integral_residual(const SpaceTimeFn& u, const OperatorSpec& spec, const ResidualOptions& opts = {},
                                    const SpaceTimeFunction& source = nullptr);

// ---- gauge transforms ----

struct GaugeOptions {
    std::vector<SmallVec> b0_levels;
    std::vector<double> c0_levels = {0.0, 1.0, 10.0};
    double exp_tol = 1e-12;
    double monotone_tol = 1e-6;
    /// Slices at which the model ratio is taken (indices into w.times; empty:
    /// every slice but the last).
    std::vector<std::size_t> at_slices;
};

/// [u(t)]_{2+alpha} / sup_{s>t} [F(s)]_alpha, maximised over the chosen slices.
double model_ratio(const SpaceTimeFn& u, const SpaceTimeFn& F, double alpha,
                   const std::vector<std::size_t>& at_slices = {});

/// `w` is a compactly supported model solution with dt_slices and
/// F = w_t + a(t) : D^2 w its forcing. For each b0 level the translate
/// u(t,x) = w(t, x - b0 t) is built, its ratio compared bit for bit with the
/// base, and gauge_translate must recover w exactly. For each c0 level
/// u = e^{C} w is built, gauge_exp must scale [.]_{2+alpha} by e^{-C} and the
/// ratio with the c0 term must not exceed the c0 = 0 ratio.
AuditReport audit_gauge_independence(const TimeMatrixPath& model, const SpaceTimeFn& w, const SpaceTimeFn& F,
                                     double alpha, const GaugeOptions& opts);

// ---- localization ----

struct LocalizationOptions {
    std::vector<double> eps_list = {0.4, 0.2, 0.1};
    double t_lo = 0.0;
    double t_hi = 0.0;
    /// Window searched for the worst point of |D^2u|.
    double window = 1.0;
    double residual_tol = 1e-2;
    double slope_tol = 0.1;
};

/// Freezes the coefficients along the characteristic through the worst point
/// of |D^2u| at t_lo, forms v = (u - u0) eta and checks the localized
/// equation term by term. `u` must carry exact time derivatives.
/// summary: slope of sup|eta (L0 - L) u| against eps, residual. Passes when
/// the residual is within residual_tol and the slope is >= alpha - slope_tol.
AuditReport audit_localization(const OperatorSpec& spec, const HypothesisReport& hyp, const SpaceTimeFn& u,
                               double alpha, const LocalizationOptions& opts, const SpaceTimeFunction& source = nullptr);

// ---- embedding ----

struct EmbeddingAuditOptions {
    double t = 0.0;
    Point x{};
    std::vector<double> h_list = {0.5, 0.25, 0.125, 0.0625, 0.03125};
    double slope_tol = 0.15;
    NormOptions norm;
};

AuditReport audit_embedding(const SpaceTimeFn& u, double alpha, const EmbeddingAuditOptions& opts);

}  // namespace schauder
