#include "schauder/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "schauder/errors.hpp"
#include "schauder/finite_difference.hpp"

namespace schauder {

namespace {

int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

bool is_diagonal(const SmallMat& A) {
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            if (i != j && A(i, j) != 0.0) return false;
    return true;
}

/// One 1-d pass along `axis` with symmetric weights w[0..R].
GridFn convolve_axis(const GridFn& g, int axis, const std::vector<double>& w, Extension ext) {
    const SpaceGrid& grid = g.grid;
    const int R = static_cast<int>(w.size()) - 1;
    if (R == 0) return g;
    GridFn out(grid);
    const auto st = static_cast<std::ptrdiff_t>(grid.stride(axis));
    const int n = grid.n;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const int k = grid.multi(i)[axis];
        const auto base = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(k) * st;
        double acc = w[0] * g[i];
        for (int j = 1; j <= R; ++j) {
            for (int sgn : {-1, 1}) {
                int kk = k + sgn * j;
                if (kk < 0 || kk >= n) {
                    if (ext == Extension::Zero) continue;
                    kk = clamp_index(kk, n);
                }
                acc += w[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(base + kk * st)];
            }
        }
        out[i] = acc;
    }
    return out;
}

int stencil_halfwidth(const SmallMat& A, double h, double tail_sigmas) {
    const double lmax = symmetric_eigen_range(A).max;
    if (!(lmax > 0.0)) return 0;
    return static_cast<int>(std::ceil(tail_sigmas * std::sqrt(2.0 * lmax) / h));
}

GridFn convolve_full(const GridFn& g, const SmallMat& A, int R, Extension ext) {
    const SpaceGrid& grid = g.grid;
    const int d = grid.d;
    const double h = grid.h();
    const SmallMat B = small_inverse(A);
    struct Tap {
        std::array<int, 3> off;
        double w;
    };
    std::vector<Tap> taps;
    double total = 0.0;
    std::array<int, 3> off{0, 0, 0};
    const int side = 2 * R + 1;
    int count = 1;
    for (int k = 0; k < d; ++k) count *= side;
    for (int c = 0; c < count; ++c) {
        int rem = c;
        for (int k = 0; k < d; ++k) {
            off[k] = rem % side - R;
            rem /= side;
        }
        double q = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) q += B(i, j) * off[i] * off[j] * h * h;
        const double w = std::exp(-0.25 * q);
        if (w < 1e-300) continue;
        taps.push_back({off, w});
        total += w;
    }
    for (auto& t : taps) t.w /= total;

    GridFn out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto idx = grid.multi(i);
        double acc = 0.0;
        for (const auto& t : taps) {
            std::array<int, 3> j{0, 0, 0};
            bool outside = false;
            for (int k = 0; k < d; ++k) {
                j[k] = idx[k] - t.off[k];
                if (j[k] < 0 || j[k] >= grid.n) {
                    outside = true;
                    j[k] = clamp_index(j[k], grid.n);
                }
            }
            if (outside && ext == Extension::Zero) continue;
            acc += t.w * g[grid.flat(j)];
        }
        out[i] = acc;
    }
    return out;
}

std::vector<double> gaussian_taps(double a, double h, int R) {
    std::vector<double> w(static_cast<std::size_t>(R) + 1);
    double total = 0.0;
    for (int j = 0; j <= R; ++j) {
        w[static_cast<std::size_t>(j)] = std::exp(-(j * h) * (j * h) / (4.0 * a));
        total += (j == 0 ? 1.0 : 2.0) * w[static_cast<std::size_t>(j)];
    }
    for (double& v : w) v /= total;
    return w;
}

/// Extended lattice around `grid` with R extra layers per side.
SpaceGrid extended(const SpaceGrid& grid, int R) {
    SpaceGrid e;
    e.d = grid.d;
    e.n = grid.n + 2 * R;
    e.radius = grid.radius + R * grid.h();
    return e;
}

GridFn restrict_inner(const GridFn& big, const SpaceGrid& grid, int R) {
    GridFn out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto idx = grid.multi(i);
        for (int k = 0; k < grid.d; ++k) idx[k] += R;
        out[i] = big[big.grid.flat(idx)];
    }
    return out;
}

GridFn sample_extended(const SpaceFunction& g, const SpaceGrid& grid, int R) {
    const SpaceGrid e = extended(grid, R);
    GridFn out(e);
    const double h = grid.h();
    for (std::size_t i = 0; i < e.size(); ++i) {
        const auto idx = e.multi(i);
        Point p{0.0, 0.0, 0.0};
        for (int k = 0; k < grid.d; ++k) p[k] = -grid.radius + h * (idx[k] - R);
        out[i] = g(p);
    }
    return out;
}

}  // namespace

GridFn gaussian_convolve(const GridFn& g, const SmallMat& A, const ConvolutionOptions& opts) {
    const double h = g.grid.h();
    const int R = stencil_halfwidth(A, h, opts.tail_sigmas);
    if (R == 0) return g;
    if (is_diagonal(A)) {
        GridFn out = g;
        for (int k = 0; k < g.grid.d; ++k) {
            const double a = A(k, k);
            const int Rk = static_cast<int>(std::ceil(opts.tail_sigmas * std::sqrt(2.0 * a) / h));
            out = convolve_axis(out, k, gaussian_taps(a, h, std::max(Rk, 0)), opts.extension);
        }
        return out;
    }
    return convolve_full(g, A, R, opts.extension);
}

GridFn gaussian_convolve(const SpaceFunction& g, const SpaceGrid& grid, const SmallMat& A,
                         const ConvolutionOptions& opts) {
    const int R = stencil_halfwidth(A, grid.h(), opts.tail_sigmas);
    if (R == 0) return sample(grid, g);
    const GridFn big = sample_extended(g, grid, R);
    ConvolutionOptions inner = opts;
    inner.extension = Extension::Zero;
    return restrict_inner(gaussian_convolve(big, A, inner), grid, R);
}

GridFn heat_semigroup(const GridFn& h, double tau, const ConvolutionOptions& opts) {
    if (!(tau > 0.0)) throw ConfigError("heat semigroup needs tau > 0");
    return gaussian_convolve(h, SmallMat::Identity(h.grid.d, h.grid.d) * tau, opts);
}

MidpointNodes midpoint_nodes(double s, double end, const std::vector<double>& breakpoints, int intervals) {
    MidpointNodes nodes;
    if (!(end > s)) return nodes;
    std::vector<double> cuts{s};
    std::vector<double> bps = breakpoints;
    std::sort(bps.begin(), bps.end());
    for (double b : bps)
        if (b > s && b < end && b > cuts.back()) cuts.push_back(b);
    cuts.push_back(end);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double len = cuts[k + 1] - cuts[k];
        const int m = std::max(1, static_cast<int>(std::ceil(intervals * len / (end - s))));
        const double dt = len / m;
        for (int j = 0; j < m; ++j) {
            nodes.t.push_back(cuts[k] + (j + 0.5) * dt);
            nodes.w.push_back(dt);
        }
    }
    return nodes;
}

namespace {

void check_bounded(const GridFn& g, double bound) {
    for (Eigen::Index i = 0; i < g.values.size(); ++i)
        if (!std::isfinite(g.values[i]) || std::abs(g.values[i]) > bound)
            throw NumericalError("potential source is unbounded on the grid");
}

std::vector<double> merged(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

GridFn potential_G(const TimeMatrixPath& path, const SpaceTimeFunction& f, double s, const SpaceGrid& grid,
                   double t_support_end, const std::vector<double>& f_breakpoints, const PotentialOptions& opts) {
    GridFn out(grid);
    const auto nodes = midpoint_nodes(s, t_support_end, merged(path.breakpoints(), f_breakpoints), opts.intervals);
    for (std::size_t k = 0; k < nodes.t.size(); ++k) {
        const double t = nodes.t[k];
        const GaussParams gp = accumulate_A(path, s, t, opts.quadrature);
        GridFn term = gaussian_convolve([&](const Point& x) { return f(t, x); }, grid, gp.A, opts.convolution);
        check_bounded(term, opts.bound);
        out.values += nodes.w[k] * term.values;
    }
    return out;
}

GridFn potential_G(const TimeMatrixPath& path, const SpaceTimeFn& f, double s, double t_support_end,
                   const PotentialOptions& opts) {
    GridFn out(f.grid);
    const auto nodes = midpoint_nodes(s, t_support_end, path.breakpoints(), opts.intervals);
    for (std::size_t k = 0; k < nodes.t.size(); ++k) {
        const double t = nodes.t[k];
        const GridFn src = f.at(t);
        check_bounded(src, opts.bound);
        const GaussParams gp = accumulate_A(path, s, t, opts.quadrature);
        out.values += nodes.w[k] * gaussian_convolve(src, gp.A, opts.convolution).values;
    }
    return out;
}

double bump_constant(int d) {
    if (d < 1 || d > 3) throw ConfigError("bump dimension must be 1, 2 or 3");
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double radial = integrator.integrate(
        [d](double r) {
            const double q = 1.0 - r * r;
            return q <= 0.0 ? 0.0 : std::pow(r, d - 1) * std::exp(-1.0 / q);
        },
        0.0, 1.0);
    const double sphere = d == 1 ? 2.0 : (d == 2 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi);
    return 1.0 / (sphere * radial);
}

GridFn mollify(const GridFn& fn, double eps) {
    if (!(eps > 0.0)) throw ConfigError("mollifier radius must be positive");
    const SpaceGrid& grid = fn.grid;
    const int d = grid.d;
    const double h = grid.h();
    const int R = static_cast<int>(std::floor(eps / h));
    if (R == 0) return fn;
    struct Tap {
        std::array<int, 3> off;
        double w;
    };
    std::vector<Tap> taps;
    double total = 0.0;
    const int side = 2 * R + 1;
    int count = 1;
    for (int k = 0; k < d; ++k) count *= side;
    const double cd = bump_constant(d) * std::pow(eps, -d);
    for (int c = 0; c < count; ++c) {
        std::array<int, 3> off{0, 0, 0};
        int rem = c;
        double r2 = 0.0;
        for (int k = 0; k < d; ++k) {
            off[k] = rem % side - R;
            rem /= side;
            r2 += off[k] * h * off[k] * h;
        }
        const double q = 1.0 - r2 / (eps * eps);
        if (q <= 0.0) continue;
        const double w = cd * std::exp(-1.0 / q);
        taps.push_back({off, w});
        total += w;
    }
    for (auto& t : taps) t.w /= total;
    GridFn out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto idx = grid.multi(i);
        double acc = 0.0;
        for (const auto& t : taps) {
            std::array<int, 3> j{0, 0, 0};
            for (int k = 0; k < d; ++k) j[k] = clamp_index(idx[k] - t.off[k], grid.n);
            acc += t.w * fn[grid.flat(j)];
        }
        out[i] = acc;
    }
    return out;
}

namespace {

using SmoothedSource = std::function<GridFn(double t, double tau)>;
using RawSource = std::function<GridFn(double t)>;

/// Backward march shared by both heat_solve overloads. `smoothed(t, tau)`
/// returns T_tau f(t, .), `raw(t)` returns f(t, .) on the grid.
SpaceTimeFn heat_march(const SpaceGrid& grid, const std::vector<double>& times, double delta, double S,
                       const SmoothedSource& smoothed, const RawSource& raw, const ConvolutionOptions& opts) {
    if (!std::is_sorted(times.begin(), times.end())) throw ConfigError("heat_solve times must be sorted");
    SpaceTimeFn u;
    u.grid = grid;
    u.times = times;
    u.slices.assign(times.size(), GridFn(grid));
    u.dt_slices.assign(times.size(), GridFn(grid));

    GridFn next(grid);
    double t_next = S;
    for (std::size_t k = times.size(); k-- > 0;) {
        const double t = times[k];
        if (t >= S) continue;
        const double dt = t_next - t;
        if (dt > 0.0) {
            GridFn cur(grid);
            if (next.sup() > 0.0) cur.values = std::exp(-delta * dt) * heat_semigroup(next, dt, opts).values;
            cur.values -= dt * std::exp(-0.5 * delta * dt) * smoothed(t + 0.5 * dt, 0.5 * dt).values;
            next = cur;
        }
        u.slices[k] = next;
        t_next = t;
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] >= S) continue;
        u.dt_slices[k].values = raw(times[k]).values - fd_laplacian(u.slices[k]).values + delta * u.slices[k].values;
    }
    return u;
}

}  // namespace

SpaceTimeFn heat_solve(const SpaceTimeFn& f, double delta, double S, const ConvolutionOptions& opts) {
    return heat_march(
        f.grid, f.times, delta, S,
        [&](double t, double tau) { return heat_semigroup(f.at(t), tau, opts); },
        [&](double t) { return f.at(t); }, opts);
}

SpaceTimeFn heat_solve(const SpaceTimeFunction& f, double delta, double S, const SpaceGrid& grid,
                       const std::vector<double>& times, const ConvolutionOptions& opts) {
    const int d = grid.d;
    return heat_march(
        grid, times, delta, S,
        [&](double t, double tau) {
            return gaussian_convolve([&](const Point& x) { return f(t, x); }, grid,
                                     SmallMat::Identity(d, d) * tau, opts);
        },
        [&](double t) { return sample(grid, [&](const Point& x) { return f(t, x); }); }, opts);
}

}  // namespace schauder
