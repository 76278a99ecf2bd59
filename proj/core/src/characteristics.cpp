#include "schauder/characteristics.hpp"

#include <algorithm>
#include <cmath>

#include "schauder/errors.hpp"
#include "schauder/potential.hpp"

namespace schauder {

namespace {

SmallVec drift(const OperatorSpec& spec, double t, const SmallVec& x) {
    const int d = spec.d();
    double p[3] = {0.0, 0.0, 0.0};
    for (int k = 0; k < d; ++k) p[k] = x(k);
    SmallVec v(d);
    for (int k = 0; k < d; ++k) v(k) = spec.b(k).eval(t, std::span<const double>(p, 3));
    return v;
}

double nudge(double t) { return 1e-12 * std::max(1.0, std::abs(t)); }

bool is_breakpoint(const OperatorSpec& spec, double t) {
    return std::any_of(spec.t_breakpoints.begin(), spec.t_breakpoints.end(),
                       [&](double b) { return std::abs(b - t) <= nudge(t); });
}

}  // namespace

SmallVec FlowPath::at(double t) const {
    if (t <= times.front()) return points.front();
    if (t >= times.back()) return points.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
    const std::size_t lo = hi - 1;
    const double h = times[hi] - times[lo];
    if (h <= 0.0) return points[hi];
    const double s = (t - times[lo]) / h;
    const double h00 = 2 * s * s * s - 3 * s * s + 1;
    const double h10 = s * s * s - 2 * s * s + s;
    const double h01 = -2 * s * s * s + 3 * s * s;
    const double h11 = s * s * s - s * s;
    // velocities[2k] is the right limit at node k, velocities[2k+1] the left limit.
    return h00 * points[lo] + h10 * h * velocities[2 * lo] + h01 * points[hi] + h11 * h * velocities[2 * hi + 1];
}

SmallVec FlowPath::velocity(double t) const {
    if (t <= times.front()) return velocities.front();
    if (t >= times.back()) return velocities.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
    const std::size_t lo = hi - 1;
    const double h = times[hi] - times[lo];
    const double s = (t - times[lo]) / h;
    const double d00 = 6 * s * s - 6 * s;
    const double d10 = 3 * s * s - 4 * s + 1;
    const double d01 = -6 * s * s + 6 * s;
    const double d11 = 3 * s * s - 2 * s;
    return (d00 * points[lo] + d01 * points[hi]) / h + d10 * velocities[2 * lo] + d11 * velocities[2 * hi + 1];
}

FlowPath flow(const OperatorSpec& spec, double t0, const SmallVec& x0, double t1, const FlowOptions& opts) {
    if (!(opts.step > 0.0)) throw ConfigError("flow step must be positive");
    if (x0.size() != spec.d()) throw ConfigError("flow start point has wrong dimension");
    const double sgn = t1 >= t0 ? 1.0 : -1.0;

    std::vector<double> cuts;
    for (double b : spec.t_breakpoints)
        if ((b - t0) * sgn > 0.0 && (t1 - b) * sgn > 0.0) cuts.push_back(b);
    if (sgn < 0.0) std::reverse(cuts.begin(), cuts.end());
    cuts.push_back(t1);

    std::vector<double> ts{t0};
    std::vector<SmallVec> xs{x0};
    int steps = 0;
    double t = t0;
    SmallVec x = x0;
    for (double target : cuts) {
        const double lo = std::min(t, target);
        const double hi = std::max(t, target);
        auto b = [&](double s, const SmallVec& y) {
            return drift(spec, std::clamp(s, lo + nudge(lo), hi - nudge(hi)), y);
        };
        const int n = std::max(1, static_cast<int>(std::ceil(std::abs(target - t) / opts.step - 1e-9)));
        const double h = (target - t) / n;
        const double start = t;
        for (int k = 0; k < n; ++k) {
            const double tk = start + k * h;
            const SmallVec k1 = b(tk, x);
            const SmallVec k2 = b(tk + 0.5 * h, x + 0.5 * h * k1);
            const SmallVec k3 = b(tk + 0.5 * h, x + 0.5 * h * k2);
            const SmallVec k4 = b(tk + h, x + h * k3);
            x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            ++steps;
            if (!x.allFinite() || x.norm() > opts.blowup_cap)
                throw NumericalError("flow left the blow-up cap at t = " + std::to_string(tk + h) +
                                     "; drift grows faster than linearly");
            ts.push_back(k + 1 == n ? target : start + (k + 1) * h);
            xs.push_back(x);
        }
        t = target;
    }

    if (sgn < 0.0) {
        std::reverse(ts.begin(), ts.end());
        std::reverse(xs.begin(), xs.end());
    }
    FlowPath path;
    path.t0 = t0;
    path.x0 = x0;
    path.times = ts;
    path.points = xs;
    path.steps = steps;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        if (is_breakpoint(spec, ts[k])) {
            path.velocities.push_back(drift(spec, ts[k] + nudge(ts[k]), xs[k]));
            path.velocities.push_back(drift(spec, ts[k] - nudge(ts[k]), xs[k]));
        } else {
            const SmallVec v = drift(spec, ts[k], xs[k]);
            path.velocities.push_back(v);
            path.velocities.push_back(v);
        }
    }
    return path;
}

FrozenOperator::FrozenOperator(OperatorSpec spec, FlowPath path) : spec_(std::move(spec)), path_(std::move(path)) {}

namespace {

std::array<double, 3> as_point(const SmallVec& v) {
    std::array<double, 3> p{0.0, 0.0, 0.0};
    for (Eigen::Index k = 0; k < v.size(); ++k) p[static_cast<std::size_t>(k)] = v(k);
    return p;
}

}  // namespace

SmallMat FrozenOperator::a0(double t) const { return sample_coefficients(spec_, t, as_point(path_.at(t))).a; }
SmallVec FrozenOperator::b0(double t) const { return sample_coefficients(spec_, t, as_point(path_.at(t))).b; }
double FrozenOperator::c0(double t) const { return spec_.c().eval(t, as_point(path_.at(t))); }
double FrozenOperator::f0(double t) const { return spec_.f().eval(t, as_point(path_.at(t))); }

FrozenOperator freeze(const OperatorSpec& spec, const FlowPath& path) { return FrozenOperator(spec, path); }

FrozenDeviation frozen_deviation(const FrozenOperator& frozen, const HypothesisReport& hyp, double eps, int n_time,
                                 int n_radial) {
    const OperatorSpec& spec = frozen.spec();
    const int d = spec.d();
    const double alpha = spec.alpha;
    FrozenDeviation dev;
    dev.bound_coeff = d * hyp.bigK * std::pow(2.0 * eps, alpha);
    dev.bound_f = hyp.Falpha * std::pow(2.0 * eps, alpha);
    const FlowPath& path = frozen.path();
    const int side = 2 * n_radial + 1;
    int count = 1;
    for (int k = 0; k < d; ++k) count *= side;
    for (int it = 0; it < n_time; ++it) {
        const double t = path.t_min() + (path.t_max() - path.t_min()) * it / std::max(1, n_time - 1);
        const auto center = as_point(path.at(t));
        const CoeffSample c0 = sample_coefficients(spec, t, center);
        for (int c = 0; c < count; ++c) {
            std::array<double, 3> y = center;
            int rem = c;
            double r2 = 0.0;
            for (int k = 0; k < d; ++k) {
                const double off = 2.0 * eps * (rem % side - n_radial) / n_radial;
                rem /= side;
                y[static_cast<std::size_t>(k)] += off;
                r2 += off * off;
            }
            if (r2 > 4.0 * eps * eps * (1.0 + 1e-12)) continue;
            const CoeffSample cs = sample_coefficients(spec, t, y);
            dev.a = std::max(dev.a, (cs.a - c0.a).norm());
            dev.b = std::max(dev.b, (cs.b - c0.b).norm());
            dev.c = std::max(dev.c, std::abs(cs.c - c0.c));
            dev.f = std::max(dev.f, std::abs(cs.f - c0.f));
        }
    }
    return dev;
}

double particular_u0(const FrozenOperator& frozen, double t, double delta, double F0, const U0Options& opts) {
    if (!(delta > 0.0)) throw ConfigError("particular solution needs delta > 0");
    if (F0 <= opts.tol) return 0.0;
    const double span = std::log(F0 / opts.tol) / delta;
    const auto nodes = midpoint_nodes(t, t + span, frozen.spec().t_breakpoints, opts.intervals);
    double C = 0.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < nodes.t.size(); ++k) {
        const double s = nodes.t[k];
        const double w = nodes.w[k];
        const double c = frozen.c0(s);
        const double C_mid = C + 0.5 * w * c;
        acc += w * frozen.f0(s) * std::exp(-C_mid);
        C += w * c;
    }
    return -acc;
}

double cutoff_profile(double r, double eps) {
    if (r <= eps) return 1.0;
    if (r >= 2.0 * eps) return 0.0;
    const double s = (r - eps) / eps;
    return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

double cutoff_profile_derivative(double r, double eps) {
    if (r <= eps || r >= 2.0 * eps) return 0.0;
    const double s = (r - eps) / eps;
    return -30.0 * s * s * (1.0 - s) * (1.0 - s) / eps;
}

double cutoff_profile_second(double r, double eps) {
    if (r <= eps || r >= 2.0 * eps) return 0.0;
    const double s = (r - eps) / eps;
    return -60.0 * s * (1.0 - s) * (1.0 - 2.0 * s) / (eps * eps);
}

namespace {

GridFn eta_slice(const FlowPath& path, double eps, const SpaceGrid& grid, double t) {
    const SmallVec c = path.at(t);
    return sample(grid, [&](const Point& x) {
        double r2 = 0.0;
        for (int k = 0; k < grid.d; ++k) r2 += (x[k] - c(k)) * (x[k] - c(k));
        return cutoff_profile(std::sqrt(r2), eps);
    });
}

/// x'(t) . D eta at every node, exact.
GridFn eta_drift_term(const FlowPath& path, double eps, const SpaceGrid& grid, double t) {
    const SmallVec c = path.at(t);
    const SmallVec v = path.velocity(t);
    return sample(grid, [&](const Point& x) {
        double r2 = 0.0;
        for (int k = 0; k < grid.d; ++k) r2 += (x[k] - c(k)) * (x[k] - c(k));
        const double r = std::sqrt(r2);
        if (r == 0.0) return 0.0;
        const double dz = cutoff_profile_derivative(r, eps);
        double dot = 0.0;
        for (int k = 0; k < grid.d; ++k) dot += v(k) * (x[k] - c(k)) / r;
        return dz * dot;
    });
}

}  // namespace

SpaceTimeFn cutoff_eta(const FlowPath& path, double eps, const SpaceGrid& grid, const std::vector<double>& times) {
    if (!(eps > 0.0 && eps < 0.5)) throw ConfigError("cutoff eps must lie in (0, 1/2)");
    if (2.0 * eps > grid.radius) throw ConfigError("cutoff support exceeds the box");
    SpaceTimeFn eta;
    eta.grid = grid;
    eta.times = times;
    for (double t : times) {
        eta.slices.push_back(eta_slice(path, eps, grid, t));
        GridFn drift_term = eta_drift_term(path, eps, grid, t);
        drift_term.values = -drift_term.values;
        eta.dt_slices.push_back(drift_term);
    }
    return eta;
}

double transport_residual(const FlowPath& path, double eps, const SpaceGrid& grid, double t, double dt) {
    const GridFn up = eta_slice(path, eps, grid, t + dt);
    const GridFn down = eta_slice(path, eps, grid, t - dt);
    const GridFn drift_term = eta_drift_term(path, eps, grid, t);
    return ((up.values - down.values) / (2.0 * dt) + drift_term.values).cwiseAbs().maxCoeff();
}

}  // namespace schauder
