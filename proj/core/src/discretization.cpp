#include "schauder/discretization.hpp"

#include <cmath>

namespace schauder {

double upwind_weight(double pe) {
    if (pe <= 1.0) return 0.0;
    return 1.0 - 1.0 / pe;
}

namespace {

bool on_boundary(const std::array<int, 3>& idx, int d, int n) {
    for (int k = 0; k < d; ++k)
        if (idx[k] == 0 || idx[k] == n - 1) return true;
    return false;
}

}  // namespace

DiscreteOperator assemble_operator(const OperatorSpec& spec, const SpaceGrid& grid, double t,
                                   const AssemblyOptions& opts) {
    const int d = grid.d;
    const double h = grid.h();
    const double h2 = h * h;
    const auto N = static_cast<Eigen::Index>(grid.size());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(grid.size() * static_cast<std::size_t>(1 + 2 * d + 4 * d * (d - 1) / 2));
    DiscreteOperator op;
    op.dirichlet.assign(grid.size(), 0);

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto idx = grid.multi(i);
        const Point x = grid.point(i);
        const auto row = static_cast<Eigen::Index>(i);
        if (on_boundary(idx, d, grid.n)) {
            if (opts.boundary == BoundaryMode::Ode) {
                trip.emplace_back(row, row, -spec.c().eval(t, x));
            } else {
                op.dirichlet[i] = 1;
            }
            continue;
        }
        const CoeffSample cs = sample_coefficients(spec, t, x);
        double diag = -cs.c;
        for (int k = 0; k < d; ++k) {
            const auto st = static_cast<Eigen::Index>(grid.stride(k));
            const double akk = cs.a(k, k);
            const double bk = cs.b(k);
            const double pe = akk > 0.0 ? std::abs(bk) * h / (2.0 * akk) : (bk != 0.0 ? INFINITY : 0.0);
            const double w = opts.full_upwind ? 1.0 : upwind_weight(pe);
            double plus = akk / h2 + (1.0 - w) * bk / (2.0 * h);
            double minus = akk / h2 - (1.0 - w) * bk / (2.0 * h);
            diag -= 2.0 * akk / h2;
            if (bk > 0.0) {
                plus += w * bk / h;
                diag -= w * bk / h;
            } else {
                minus -= w * bk / h;
                diag += w * bk / h;
            }
            trip.emplace_back(row, row + st, plus);
            trip.emplace_back(row, row - st, minus);
        }
        for (int k = 0; k < d; ++k) {
            for (int l = k + 1; l < d; ++l) {
                const double akl = cs.a(k, l);
                if (akl == 0.0) continue;
                const auto sk = static_cast<Eigen::Index>(grid.stride(k));
                const auto sl = static_cast<Eigen::Index>(grid.stride(l));
                const double c = 2.0 * akl / (4.0 * h2);
                trip.emplace_back(row, row + sk + sl, c);
                trip.emplace_back(row, row + sk - sl, -c);
                trip.emplace_back(row, row - sk + sl, -c);
                trip.emplace_back(row, row - sk - sl, c);
            }
        }
        trip.emplace_back(row, row, diag);
    }
    op.L.resize(N, N);
    op.L.setFromTriplets(trip.begin(), trip.end());
    return op;
}

DiscreteOperator heat_operator(const SpaceGrid& grid, double delta, const AssemblyOptions& opts) {
    OperatorSpec spec = heat_spec(grid.d, delta, 0.0, 1.0);
    AssemblyOptions plain = opts;
    plain.full_upwind = false;
    return assemble_operator(spec, grid, 0.0, plain);
}

GridFn sample_source(const OperatorSpec& spec, const SpaceGrid& grid, double t) {
    return sample(grid, [&](const Point& x) { return spec.f().eval(t, x); });
}

}  // namespace schauder
