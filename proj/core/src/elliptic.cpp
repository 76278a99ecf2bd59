#include <cmath>

#include <Eigen/SparseLU>

#include "schauder/errors.hpp"
#include "schauder/solver.hpp"

namespace schauder {

EllipticResult solve_elliptic(const OperatorSpec& spec, const SpaceGrid& grid, const EllipticOptions& opts) {
    spec.validate();
    if (!spec.time_independent()) throw ConfigError("elliptic problem needs t-independent coefficients and f");

    AssemblyOptions ao;
    ao.boundary = opts.boundary_mode;
    ao.full_upwind = opts.scheme.full_upwind;
    const DiscreteOperator op = assemble_operator(spec, grid, spec.T, ao);

    Eigen::SparseMatrix<double> A = op.L;
    Eigen::VectorXd rhs = sample_source(spec, grid, spec.T).values;
    for (std::size_t i = 0; i < op.dirichlet.size(); ++i) {
        if (!op.dirichlet[i]) continue;
        const auto r = static_cast<Eigen::Index>(i);
        A.coeffRef(r, r) = 1.0;
        rhs[r] = 0.0;
    }
    A.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) throw NumericalError("elliptic factorization failed");

    EllipticResult res;
    res.direct = GridFn(grid, lu.solve(rhs));
    if (lu.info() != Eigen::Success) throw NumericalError("elliptic solve failed");

    CauchyProblem p;
    p.spec = spec;
    p.spec.T = -1.0;
    p.spec.S = 0.0;
    p.grid = grid;
    p.g = GridFn(grid);
    p.n_time = opts.steps_per_unit;
    p.boundary_mode = opts.boundary_mode == BoundaryMode::DirichletFinal ? BoundaryMode::DirichletZero
                                                                          : opts.boundary_mode;
    p.scheme = opts.scheme;
    while (res.horizon < opts.max_horizon) {
        const GridFn next = solve_cauchy(p).u.slices.front();
        const double change = (next.values - p.g.values).cwiseAbs().maxCoeff();
        p.g = next;
        res.horizon += 1.0;
        if (change < opts.tol_stat) {
            res.stationary = true;
            break;
        }
    }
    res.parabolic = p.g;
    res.route_gap = (res.parabolic.values - res.direct.values).cwiseAbs().maxCoeff();
    return res;
}

}  // namespace schauder
