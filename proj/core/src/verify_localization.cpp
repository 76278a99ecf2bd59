#include <algorithm>
#include <cmath>
#include <limits>

#include "schauder/characteristics.hpp"
#include "schauder/errors.hpp"
#include "schauder/finite_difference.hpp"
#include "schauder/verify.hpp"

namespace schauder {

namespace {

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

AuditReport audit_localization(const OperatorSpec& spec, const HypothesisReport& hyp, const SpaceTimeFn& u,
                               double alpha, const LocalizationOptions& opts, const SpaceTimeFunction& source) {
    AuditReport rep;
    rep.name = "localization";
    rep.threshold = opts.residual_tol;
    if (!u.has_dt()) throw ConfigError("localization audit needs time derivatives");
    const SpaceGrid& grid = u.grid;
    const int d = grid.d;
    const double t_lo = opts.t_hi > opts.t_lo ? opts.t_lo : u.times.front();
    const double t_hi = opts.t_hi > opts.t_lo ? opts.t_hi : u.times.back();

    std::vector<double> times;
    for (double t : u.times)
        if (t >= t_lo - 1e-12 && t <= t_hi + 1e-12) times.push_back(t);
    if (times.size() < 2) throw ConfigError("localization window holds fewer than two slices");

    // Worst point of |D^2u| at the first slice of the window.
    const std::size_t k0 = u.nearest(times.front());
    const GridFn hess_norm = pointwise_norm(fd_hessian(u.slices[k0]));
    NormOptions win;
    win.window = opts.window;
    std::size_t star = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!win.admits(grid, i) || grid.near_boundary(i, 2)) continue;
        if (hess_norm[i] > best) {
            best = hess_norm[i];
            star = i;
        }
    }
    const Point xs = grid.point(star);
    SmallVec x0(d);
    for (int k = 0; k < d; ++k) x0(k) = xs[k];

    FlowPath path;
    try {
        path = flow(spec, times.front(), x0, times.back());
    } catch (const NumericalError& e) {
        rep.pass = false;
        rep.details.push_back(std::string("characteristic: ") + e.what());
        return rep;
    }
    const FrozenOperator frozen = freeze(spec, path);

    std::vector<double> dev;
    double worst_res = 0.0;
    for (double eps : opts.eps_list) {
        for (std::size_t j = 0; j < times.size(); ++j) {
            const SmallVec xt = path.at(times[j]);
            for (int k = 0; k < d; ++k)
                if (std::abs(xt(k)) + 2.0 * eps > grid.radius) {
                    rep.pass = false;
                    rep.details.push_back("characteristic leaves the box");
                    return rep;
                }
        }
        const SpaceTimeFn eta = cutoff_eta(path, eps, grid, times);
        double dev_eps = 0.0;
        double res_eps = 0.0;
        for (std::size_t j = 0; j < times.size(); ++j) {
            const double t = times[j];
            const std::size_t k = u.nearest(t);
            const GridFn& uk = u.slices[k];
            const GridFn& ut = u.dt_slices[k];
            const GridFn& e = eta.slices[j];
            const GridFn& et = eta.dt_slices[j];

            const SmallMat a0 = frozen.a0(t);
            const SmallVec b0 = frozen.b0(t);
            const double c0 = frozen.c0(t);
            const double f0 = frozen.f0(t);
            const double u0 = particular_u0(frozen, t, hyp.delta, hyp.F0);
            const double u0t = f0 + c0 * u0;

            GridFn v(grid), vt(grid);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                v[i] = (uk[i] - u0) * e[i];
                vt[i] = (ut[i] - u0t) * e[i] + (uk[i] - u0) * et[i];
            }
            const auto gu = fd_gradient(uk);
            const auto hu = fd_hessian(uk);
            const auto gv = fd_gradient(v);
            const auto hv = fd_hessian(v);
            const auto ge = fd_gradient(e);
            const auto he = fd_hessian(e);

            double scale = 0.0, res = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (grid.near_boundary(i, 2)) continue;
                const Point x = grid.point(i);
                const CoeffSample cs = sample_coefficients(spec, t, x);
                double lu = -cs.c * uk[i], l0u = -c0 * uk[i], l0v = -c0 * v[i];
                double aee = 0.0, cross = 0.0;
                for (int p = 0; p < d; ++p) {
                    lu += cs.b(p) * gu[p][i];
                    l0u += b0(p) * gu[p][i];
                    l0v += b0(p) * gv[p][i];
                    for (int q = 0; q < d; ++q) {
                        const std::size_t pq = static_cast<std::size_t>(p * d + q);
                        lu += cs.a(p, q) * hu[pq][i];
                        l0u += a0(p, q) * hu[pq][i];
                        l0v += a0(p, q) * hv[pq][i];
                        aee += a0(p, q) * he[pq][i];
                        cross += a0(p, q) * ge[p][i] * gu[q][i];
                    }
                }
                const double f = source ? source(t, x) : cs.f;
                const double t1 = e[i] * (f - f0);
                const double t2 = e[i] * (l0u - lu);
                const double t3 = (uk[i] - u0) * aee;
                const double t4 = 2.0 * cross;
                const double lhs = vt[i] + l0v;
                res = std::max(res, std::abs(lhs - (t1 + t2 + t3 + t4)));
                scale = std::max(scale, std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4));
                dev_eps = std::max(dev_eps, std::abs(t2));
            }
            if (scale > 0.0) res_eps = std::max(res_eps, res / scale);
        }
        dev.push_back(dev_eps);
        worst_res = std::max(worst_res, res_eps);
        rep.measured.push_back({"eps=" + std::to_string(eps) + " deviation", dev_eps});
        rep.measured.push_back({"eps=" + std::to_string(eps) + " residual", res_eps});
    }

    rep.summary["residual"] = worst_res;
    rep.pass = worst_res <= opts.residual_tol;
    if (!rep.pass) rep.details.push_back("localized identity residual " + std::to_string(worst_res));

    const bool all_zero = std::all_of(dev.begin(), dev.end(), [](double v) { return v == 0.0; });
    if (all_zero) {
        rep.summary["deviation_slope"] = 0.0;
        rep.details.push_back("frozen-deviation term vanishes");
    } else {
        const double slope = loglog_slope(opts.eps_list, dev);
        rep.summary["deviation_slope"] = slope;
        // Smallness means decay at least like eps^alpha; smooth data decay faster.
        if (!(slope >= alpha - opts.slope_tol)) {
            rep.pass = false;
            rep.details.push_back("deviation slope " + std::to_string(slope));
        }
    }
    return rep;
}

}  // namespace schauder
