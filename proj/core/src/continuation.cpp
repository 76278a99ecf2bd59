#include <algorithm>
#include <cmath>

#include "schauder/errors.hpp"
#include "schauder/finite_difference.hpp"
#include "schauder/holder.hpp"
#include "schauder/potential.hpp"
#include "schauder/solver.hpp"

namespace schauder {

namespace {

/// Discrete 𝔉^{2+α} norm: max over slices of |w|_{2+α} + |w_t|_0 + [w_t]_α.
double frak_norm(const SpaceTimeFn& w, double alpha) {
    double m = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        double v = norm_2alpha(w.slices[k], alpha).norm_2alpha;
        if (w.has_dt()) v += w.dt_slices[k].sup() + holder_seminorm(w.dt_slices[k], alpha);
        m = std::max(m, v);
    }
    return m;
}

SpaceTimeFn difference(const SpaceTimeFn& a, const SpaceTimeFn& b) {
    SpaceTimeFn out = a;
    for (std::size_t k = 0; k < a.size(); ++k) {
        out.slices[k].values -= b.slices[k].values;
        if (a.has_dt() && b.has_dt()) out.dt_slices[k].values -= b.dt_slices[k].values;
    }
    if (!(a.has_dt() && b.has_dt())) out.dt_slices.clear();
    return out;
}

}  // namespace

SolveResult continuation_solve(const CauchyProblem& p, const ContinuationOptions& opts) {
    p.spec.validate();
    if (!(opts.lambda_step > 0.0 && opts.lambda_step <= 1.0)) throw ConfigError("lambda_step must lie in (0, 1]");
    if (!(opts.delta > 0.0)) throw ConfigError("continuation base potential must be positive");
    const OperatorSpec spec = p.n_trunc > 0 ? truncate_coeffs(p.spec, p.n_trunc) : p.spec;
    const std::vector<double> times = cauchy_time_grid(p);
    const SpaceGrid& grid = p.grid;

    AssemblyOptions ao;
    ao.boundary = p.boundary_mode == BoundaryMode::Ode ? BoundaryMode::Ode : BoundaryMode::DirichletZero;
    ao.full_upwind = p.scheme.full_upwind;
    const DiscreteOperator heat = heat_operator(grid, opts.delta, ao);

    // w = u - g solves w_t + L w = f - L g with w(S) = 0.
    std::vector<SparseRow> Ls;
    SpaceTimeFn F;
    F.grid = grid;
    F.times = times;
    for (double t : times) {
        DiscreteOperator op = assemble_operator(spec, grid, t, ao);
        GridFn src = p.source_override ? p.source_override(t) : sample_source(spec, grid, t);
        src.values -= op.L * p.g.values;
        for (std::size_t i = 0; i < op.dirichlet.size(); ++i)
            if (op.dirichlet[i]) src[i] = 0.0;
        F.slices.push_back(src);
        Ls.push_back(op.L);
    }

    auto correction = [&](const SpaceTimeFn& w, double dl) {
        SpaceTimeFn c = F;
        for (std::size_t k = 0; k < times.size(); ++k)
            c.slices[k].values += dl * (heat.L * w.slices[k].values - Ls[k] * w.slices[k].values);
        return c;
    };

    SolveResult res;
    int total_picard = 0;

    auto base_solve = [&](double lambda0, const SpaceTimeFn& source) -> SpaceTimeFn {
        if (lambda0 == 0.0) return heat_solve(source, opts.delta, spec.S);
        CauchyProblem q = p;
        q.spec = spec;
        q.n_trunc = 0;
        q.g = GridFn(grid);
        q.boundary_mode = ao.boundary;
        q.source_override = [&grid](double) { return GridFn(grid); };
        q.extra_source = source;
        q.blend = OperatorBlend{lambda0, opts.delta};
        SolveResult r = solve_cauchy(q);
        res.iterations += r.iterations;
        return r.u;
    };

    SpaceTimeFn w = base_solve(0.0, F);
    double lambda0 = 0.0;
    const double target = std::clamp(opts.lambda_target, 0.0, 1.0);
    while (lambda0 < target - 1e-12) {
        const double lambda = std::min(target, lambda0 + opts.lambda_step);
        const double dl = lambda - lambda0;
        double prev_diff = -1.0;
        double first_diff = -1.0;
        double factor = 0.0;
        bool converged = false;
        for (int it = 0; it < opts.max_picard; ++it) {
            SpaceTimeFn next = base_solve(lambda0, correction(w, dl));
            const double diff = frak_norm(difference(next, w), spec.alpha);
            ++total_picard;
            w = std::move(next);
            if (first_diff < 0.0) first_diff = diff;
            if (prev_diff > 0.0 && prev_diff > 1e-6 * first_diff) {
                const double ratio = diff / prev_diff;
                factor = std::max(factor, ratio);
                if (ratio >= 1.0 && it >= 2)
                    throw NumericalError("Picard contraction lost at lambda = " + std::to_string(lambda) +
                                         " (factor " + std::to_string(ratio) + "); shrink lambda_step");
            }
            prev_diff = diff;
            if (diff < opts.picard_tol) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw NumericalError("Picard iteration did not reach picard_tol at lambda = " + std::to_string(lambda));
        res.contraction.push_back(factor);
        lambda0 = lambda;
    }

    res.u = w;
    for (std::size_t k = 0; k < res.u.size(); ++k) res.u.slices[k].values += p.g.values;
    res.picard_iterations = total_picard;
    return res;
}

}  // namespace schauder
