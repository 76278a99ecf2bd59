#include "schauder/solver.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>

#include "schauder/errors.hpp"
#include "schauder/finite_difference.hpp"

namespace schauder {

OperatorSpec truncate_coeffs(const OperatorSpec& spec, double n) {
    if (!(n >= 1.0)) throw ConfigError("truncation level must be at least 1");
    const Expr lo = Expr::literal(-n);
    const Expr hi = Expr::literal(n);
    auto chi = [&](const Expr& e) { return max(lo, min(e, hi)); };
    OperatorSpec out = spec;
    for (int i = 0; i < spec.d(); ++i) out.set_b(i, chi(spec.b(i)));
    out.set_c(chi(spec.c()));
    out.set_f(chi(spec.f()));
    return out;
}

namespace {

bool coefficients_time_independent(const OperatorSpec& spec) {
    for (int i = 0; i < spec.d(); ++i) {
        for (int j = i; j < spec.d(); ++j)
            if (spec.a(i, j).uses_time()) return false;
        if (spec.b(i).uses_time()) return false;
    }
    return !spec.c().uses_time();
}

struct TimeGrid {
    std::vector<double> t;
    std::vector<double> theta;  // per interval [t_k, t_{k+1}]
};

TimeGrid build_time_grid(const CauchyProblem& p) {
    const OperatorSpec& spec = p.spec;
    if (p.n_time < 2) throw ConfigError("n_time must be at least 2");
    std::vector<double> base;
    for (int k = 0; k <= p.n_time; ++k) base.push_back(spec.T + (spec.S - spec.T) * k / p.n_time);
    base.back() = spec.S;
    for (double b : spec.t_breakpoints)
        if (b > spec.T && b < spec.S) base.push_back(b);
    std::sort(base.begin(), base.end());
    std::vector<double> uniq;
    const double eps = 1e-12 * std::max(1.0, std::abs(spec.S - spec.T));
    for (double v : base)
        if (uniq.empty() || v - uniq.back() > eps) uniq.push_back(v);
    uniq.back() = spec.S;

    TimeGrid tg;
    const double theta = p.scheme.theta;
    const int startup = theta < 1.0 ? std::min<int>(p.scheme.rannacher_steps, static_cast<int>(uniq.size()) - 1) : 0;
    const std::size_t first_startup = uniq.size() - 1 - static_cast<std::size_t>(startup);
    for (std::size_t k = 0; k + 1 < uniq.size(); ++k) {
        tg.t.push_back(uniq[k]);
        if (k >= first_startup) {
            tg.t.push_back(0.5 * (uniq[k] + uniq[k + 1]));
            tg.theta.push_back(1.0);
            tg.theta.push_back(1.0);
        } else {
            tg.theta.push_back(theta);
        }
    }
    tg.t.push_back(uniq.back());
    return tg;
}

using ColMatrix = Eigen::SparseMatrix<double>;

class StepSolver {
public:
    explicit StepSolver(const SchemeOptions& opts) : opts_(opts) {}

    /// Solves (I/dt - theta L) x = rhs; refactors only when the matrix changes.
    Eigen::VectorXd solve(const SparseRow& L, double dt, double theta, bool same_operator, const Eigen::VectorXd& rhs,
                          const Eigen::VectorXd& guess, int& iterations, double& residual) {
        if (!(same_operator && dt == dt_ && theta == theta_ && ready_)) {
            const auto N = L.rows();
            ColMatrix I(N, N);
            I.setIdentity();
            M_ = ColMatrix(I / dt) - theta * ColMatrix(L);
            M_.makeCompressed();
            solver_.setTolerance(opts_.solver_tol);
            solver_.setMaxIterations(opts_.max_iterations);
            solver_.preconditioner().setDroptol(1e-6);
            solver_.compute(M_);
            if (solver_.info() != Eigen::Success) throw NumericalError("preconditioner setup failed");
            dt_ = dt;
            theta_ = theta;
            ready_ = true;
        }
        Eigen::VectorXd x = solver_.solveWithGuess(rhs, guess);
        iterations += static_cast<int>(solver_.iterations());
        const double rel = rhs.norm() > 0.0 ? (M_ * x - rhs).norm() / rhs.norm() : (M_ * x).norm();
        residual = std::max(residual, rel);
        if (solver_.info() != Eigen::Success && rel > 10.0 * opts_.solver_tol)
            throw NumericalError("linear solve did not converge (relative residual " + std::to_string(rel) + ")");
        return x;
    }

private:
    SchemeOptions opts_;
    ColMatrix M_;
    Eigen::BiCGSTAB<ColMatrix, Eigen::IncompleteLUT<double>> solver_;
    double dt_ = 0.0;
    double theta_ = 0.0;
    bool ready_ = false;
};

SparseRow operator_at(const CauchyProblem& p, const OperatorSpec& spec, double t, const AssemblyOptions& ao,
                      std::vector<std::uint8_t>& dirichlet) {
    DiscreteOperator op = assemble_operator(spec, p.grid, t, ao);
    dirichlet = op.dirichlet;
    if (!p.blend) return op.L;
    const DiscreteOperator heat = heat_operator(p.grid, p.blend->delta, ao);
    SparseRow mixed = p.blend->lambda * op.L + (1.0 - p.blend->lambda) * heat.L;
    return mixed;
}

GridFn source_at(const CauchyProblem& p, const OperatorSpec& spec, double t) {
    if (p.source_override) return p.source_override(t);
    return sample_source(spec, p.grid, t);
}

double boundary_influence(const SpaceTimeFn& u) {
    const SpaceGrid& g = u.grid;
    double worst = 0.0;
    for (const auto& s : u.slices) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (!g.near_boundary(i, 2) || g.near_boundary(i, 1)) continue;
            const auto idx = g.multi(i);
            for (int k = 0; k < g.d; ++k) {
                const auto st = g.stride(k);
                if (idx[k] == 1) worst = std::max(worst, std::abs(s[i] - s[i - st]));
                if (idx[k] == g.n - 2) worst = std::max(worst, std::abs(s[i] - s[i + st]));
            }
        }
    }
    return worst;
}

}  // namespace

std::vector<double> cauchy_time_grid(const CauchyProblem& p) { return build_time_grid(p).t; }

double barrier_constant(const OperatorSpec& spec, const SpaceGrid& grid, const std::vector<double>& times) {
    double N0 = 0.0;
    for (double t : times) {
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Point x = grid.point(i);
            const CoeffSample cs = sample_coefficients(spec, t, x);
            double r2 = 0.0, bx = 0.0;
            for (int k = 0; k < grid.d; ++k) {
                r2 += x[k] * x[k];
                bx += cs.b(k) * x[k];
            }
            N0 = std::max(N0, (2.0 * cs.a.trace() + 2.0 * bx) / (1.0 + r2) - cs.c);
        }
    }
    return N0;
}

SolveResult solve_cauchy(const CauchyProblem& p) {
    p.spec.validate();
    if (!(p.g.grid == p.grid)) throw ConfigError("final condition lives on a different grid");
    const OperatorSpec spec = p.n_trunc > 0 ? truncate_coeffs(p.spec, p.n_trunc) : p.spec;
    const TimeGrid tg = build_time_grid(p);
    const std::size_t M = tg.t.size() - 1;
    if (p.extra_source && p.extra_source->times.size() != tg.t.size())
        throw ConfigError("extra source must live on the problem time grid");

    AssemblyOptions ao;
    ao.boundary = p.boundary_mode;
    ao.full_upwind = p.scheme.full_upwind;
    const bool frozen_in_time = coefficients_time_independent(spec);

    Eigen::VectorXd bvals = p.g.values;
    if (p.boundary_mode == BoundaryMode::DirichletZero) bvals.setZero();

    SolveResult res;
    res.u.grid = p.grid;
    res.u.times = tg.t;
    res.u.slices.assign(tg.t.size(), GridFn(p.grid));
    res.u.dt_slices.assign(tg.t.size(), GridFn(p.grid));
    res.u.slices[M] = p.g;

    StepSolver solver(p.scheme);
    std::vector<std::uint8_t> dirichlet;
    SparseRow L;
    bool have_L = false;
    for (std::size_t n = M; n-- > 0;) {
        const double dt = tg.t[n + 1] - tg.t[n];
        const double theta = tg.theta[n];
        const double tm = 0.5 * (tg.t[n] + tg.t[n + 1]);
        const bool reuse = frozen_in_time && have_L;
        if (!reuse) {
            L = operator_at(p, spec, tm, ao, dirichlet);
            have_L = true;
        }
        Eigen::VectorXd src = source_at(p, spec, tm).values;
        if (p.extra_source)
            src += theta * p.extra_source->slices[n].values + (1.0 - theta) * p.extra_source->slices[n + 1].values;
        const Eigen::VectorXd& next = res.u.slices[n + 1].values;
        Eigen::VectorXd rhs = next / dt + (1.0 - theta) * (L * next) - src;
        for (std::size_t i = 0; i < dirichlet.size(); ++i)
            if (dirichlet[i]) rhs[static_cast<Eigen::Index>(i)] = bvals[static_cast<Eigen::Index>(i)] / dt;
        res.u.slices[n].values = solver.solve(L, dt, theta, reuse, rhs, next, res.iterations, res.max_linear_residual);
    }

    for (std::size_t n = 0; n <= M; ++n) {
        const double t = tg.t[n];
        const SparseRow Ln = frozen_in_time ? L : operator_at(p, spec, t, ao, dirichlet);
        Eigen::VectorXd src = source_at(p, spec, t).values;
        if (p.extra_source) src += p.extra_source->slices[n].values;
        Eigen::VectorXd ut = src - Ln * res.u.slices[n].values;
        for (std::size_t i = 0; i < dirichlet.size(); ++i)
            if (dirichlet[i]) ut[static_cast<Eigen::Index>(i)] = 0.0;
        res.u.dt_slices[n].values = ut;
    }
    res.boundary_influence = boundary_influence(res.u);
    res.barrier_N0 = barrier_constant(spec, p.grid, {spec.T, 0.5 * (spec.T + spec.S), spec.S});
    return res;
}

ExtendedProblem extend_final_condition(const OperatorSpec& spec, const GridFn& g, double delta, double S_new) {
    if (!(S_new > spec.S)) throw ConfigError("extension needs S_new > S");
    const double S = spec.S;
    ExtendedProblem ext;
    ext.spec = spec;
    const Expr step_after = Expr::unary(ExprKind::Step, Expr::time() - Expr::literal(S));
    const Expr one = Expr::literal(1.0);
    const Expr before = one - step_after;
    for (int i = 0; i < spec.d(); ++i) {
        for (int j = i; j < spec.d(); ++j) {
            const Expr target = Expr::literal(i == j ? 1.0 : 0.0);
            ext.spec.set_a(i, j, spec.a(i, j) * before + target * step_after);
        }
        ext.spec.set_b(i, spec.b(i) * before);
    }
    ext.spec.set_c(spec.c() * before + Expr::literal(delta) * step_after);
    ext.spec.S = S_new;
    ext.spec.t_breakpoints.push_back(S);
    std::sort(ext.spec.t_breakpoints.begin(), ext.spec.t_breakpoints.end());

    const GridFn tail(g.grid, fd_laplacian(g).values - (1.0 + delta) * g.values);
    const OperatorSpec original = spec;
    ext.source = [original, tail, S](double t) {
        if (t > S) return GridFn(tail.grid, std::exp(S - t) * tail.values);
        return sample_source(original, tail.grid, t);
    };
    return ext;
}

SolveResult solve_degenerate_c(const CauchyProblem& p) {
    CauchyProblem q = p;
    const double S = p.spec.S;
    q.spec.set_c(p.spec.c() + Expr::literal(1.0));
    q.spec.set_f(p.spec.f() * exp(Expr::time() - Expr::literal(S)));
    if (p.source_override) {
        const GridSource inner = p.source_override;
        q.source_override = [inner, S](double t) {
            GridFn g = inner(t);
            g.values *= std::exp(t - S);
            return g;
        };
    }
    SolveResult res = solve_cauchy(q);
    double sup_u = 0.0, sup_v = 0.0;
    for (std::size_t k = 0; k < res.u.size(); ++k) {
        const double scale = std::exp(S - res.u.times[k]);
        sup_u = std::max(sup_u, res.u.slices[k].sup());
        res.u.dt_slices[k].values = scale * (res.u.dt_slices[k].values - res.u.slices[k].values);
        res.u.slices[k].values *= scale;
        sup_v = std::max(sup_v, res.u.slices[k].sup());
    }
    res.diagnostics["sup_norm_u"] = sup_u;
    res.diagnostics["sup_norm_v"] = sup_v;
    res.diagnostics["inflation"] = std::exp(S - p.spec.T);
    return res;
}

GridFn semigroup_T(const OperatorSpec& spec, const GridFn& g, double t, double dt, BoundaryMode mode) {
    if (t < 0.0) throw ConfigError("semigroup time must be non-negative");
    if (t == 0.0) return g;
    if (!(dt > 0.0)) throw ConfigError("semigroup step must be positive");
    CauchyProblem p;
    p.spec = spec;
    p.spec.set_f(Expr::literal(0.0));
    p.spec.T = -t;
    p.spec.S = 0.0;
    p.spec.t_breakpoints.clear();
    p.g = g;
    p.grid = g.grid;
    p.n_time = std::max(2, static_cast<int>(std::lround(t / dt)));
    p.boundary_mode = mode;
    p.scheme.theta = 1.0;
    p.scheme.full_upwind = true;
    p.scheme.rannacher_steps = 0;
    return solve_cauchy(p).u.slices.front();
}

}  // namespace schauder
