#include "schauder/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "schauder/errors.hpp"
#include "schauder/finite_difference.hpp"

namespace schauder {

namespace {

std::size_t nearest_node(const SpaceGrid& g, const Point& x) {
    std::array<int, 3> idx{0, 0, 0};
    for (int k = 0; k < g.d; ++k)
        idx[k] = std::clamp(static_cast<int>(std::lround((x[k] + g.radius) / g.h())), 0, g.n - 1);
    return g.flat(idx);
}

double ratio(double num, double den) {
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return num / den;
}

double combined_seminorm(const GridFn& ut, const GridFn& u, double alpha, const NormOptions& opts) {
    return holder_seminorm(ut, alpha, opts) + holder_seminorm(fd_hessian(u), alpha, opts);
}

}  // namespace

std::vector<EmbeddingRow> embedding_check(const SpaceTimeFn& u, double alpha, double t, const Point& x,
                                          const std::vector<double>& h_list, const NormOptions& opts) {
    if (!u.has_dt()) throw ConfigError("embedding check needs time derivative slices");
    const std::size_t node = nearest_node(u.grid, x);
    const int d = u.grid.d;
    const GridFn top = u.at(t);
    const auto grad_top = fd_gradient(top);
    const auto hess_top = fd_hessian(top);

    std::vector<EmbeddingRow> rows;
    for (double h : h_list) {
        const double t0 = t - h * h;
        if (t0 < u.times.front() - 1e-12 || t > u.times.back() + 1e-12)
            throw ConfigError("embedding window leaves the stored time range");
        const GridFn bottom = u.at(t0);
        const auto grad_bot = fd_gradient(bottom);
        const auto hess_bot = fd_hessian(bottom);
        double n1 = 0.0;
        for (int k = 0; k < d; ++k) {
            const double dv = grad_top[static_cast<std::size_t>(k)][node] - grad_bot[static_cast<std::size_t>(k)][node];
            n1 += dv * dv;
        }
        double n2 = 0.0;
        for (int k = 0; k < d * d; ++k) {
            const double dv = hess_top[static_cast<std::size_t>(k)][node] - hess_bot[static_cast<std::size_t>(k)][node];
            n2 += dv * dv;
        }

        double I = std::max(combined_seminorm(u.dt_at(t), top, alpha, opts),
                            combined_seminorm(u.dt_at(t0), bottom, alpha, opts));
        for (std::size_t k = 0; k < u.size(); ++k) {
            if (u.times[k] > t0 && u.times[k] < t)
                I = std::max(I, combined_seminorm(u.dt_slices[k], u.slices[k], alpha, opts));
        }

        EmbeddingRow row;
        row.h = h;
        row.num1 = std::sqrt(n1);
        row.num2 = std::sqrt(n2);
        row.I_h = I;
        row.r1 = ratio(row.num1, I * std::pow(h, 1.0 + alpha));
        row.r2 = ratio(row.num2, I * std::pow(h, alpha));
        rows.push_back(row);
    }
    return rows;
}

double envelope_slope(const std::vector<double>& h, const std::vector<double>& r) {
    std::vector<std::size_t> order(h.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return h[a] > h[b]; });
    std::vector<double> lx, ly;
    double env = 0.0;
    for (std::size_t k : order) {
        env = std::max(env, r[k]);
        if (env > 0.0 && h[k] > 0.0) {
            lx.push_back(std::log(h[k]));
            ly.push_back(std::log(env));
        }
    }
    if (lx.size() < 2) return 0.0;
    const double n = static_cast<double>(lx.size());
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        sxy += (lx[k] - mx) * (ly[k] - my);
        sxx += (lx[k] - mx) * (lx[k] - mx);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace schauder
