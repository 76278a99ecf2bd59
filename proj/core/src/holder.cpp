#include "schauder/holder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "schauder/errors.hpp"
#include "schauder/finite_difference.hpp"
#include "schauder/hypotheses.hpp"

namespace schauder {

bool NormOptions::admits(const SpaceGrid& g, std::size_t i) const {
    if (!mask.empty() && !mask[i]) return false;
    if (window > 0.0) {
        const Point p = g.point(i);
        for (int k = 0; k < g.d; ++k)
            if (std::abs(p[k]) > window + 1e-12 * g.radius) return false;
    }
    return true;
}

namespace {

std::vector<int> step_multiples(int kmax) {
    std::vector<int> ks;
    for (int k = 1; k <= kmax; k *= 2) ks.push_back(k);
    for (int k = kmax; k >= 1; k /= 2) ks.push_back(k);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

double diff_norm(const std::vector<GridFn>& comps, std::size_t x, std::size_t y) {
    if (comps.size() == 1) return std::abs(comps[0][x] - comps[0][y]);
    double s = 0.0;
    for (const auto& c : comps) {
        const double dv = c[x] - c[y];
        s += dv * dv;
    }
    return std::sqrt(s);
}

void consider(SeminormResult& best, double q, std::size_t x, std::size_t y) {
    if (y < x) std::swap(x, y);
    if (q > best.value || (q == best.value && q > 0.0 && std::pair(x, y) < std::pair(best.x, best.y))) {
        best.value = q;
        best.x = x;
        best.y = y;
    }
}

std::vector<std::uint8_t> admitted(const SpaceGrid& g, const NormOptions& opts) {
    std::vector<std::uint8_t> ok(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) ok[i] = opts.admits(g, i) ? 1 : 0;
    return ok;
}

}  // namespace

SeminormResult holder_seminorm_detail(const std::vector<GridFn>& comps, double alpha, const NormOptions& opts) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha out of (0,1)");
    const SpaceGrid& g = comps.front().grid;
    const double h = g.h();
    const auto ok = admitted(g, opts);
    SeminormResult best;

    for (const auto& dir : pair_directions(g.d)) {
        double len = 0.0;
        std::ptrdiff_t offset = 0;
        for (int k = 0; k < g.d; ++k) {
            len += dir[k] * dir[k];
            offset += static_cast<std::ptrdiff_t>(dir[k]) * static_cast<std::ptrdiff_t>(g.stride(k));
        }
        len = std::sqrt(len) * h;
        const int kmax = std::min(static_cast<int>(std::floor(opts.max_dist / len + 1e-9)), g.n - 1);
        if (kmax < 1) continue;
        for (int k : step_multiples(kmax)) {
            const double denom = std::pow(k * len, alpha);
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (!ok[i]) continue;
                const auto idx = g.multi(i);
                bool inside = true;
                for (int a = 0; a < g.d; ++a) {
                    const int j = idx[a] + k * dir[a];
                    if (j < 0 || j >= g.n) {
                        inside = false;
                        break;
                    }
                }
                if (!inside) continue;
                const auto y = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + k * offset);
                if (!ok[y]) continue;
                consider(best, diff_norm(comps, i, y) / denom, i, y);
            }
        }
    }
    return best;
}

double holder_seminorm(const GridFn& fn, double alpha, const NormOptions& opts) {
    return holder_seminorm_detail({fn}, alpha, opts).value;
}

double holder_seminorm(const std::vector<GridFn>& components, double alpha, const NormOptions& opts) {
    return holder_seminorm_detail(components, alpha, opts).value;
}

double holder_seminorm_bruteforce(const GridFn& fn, double alpha, const NormOptions& opts) {
    const SpaceGrid& g = fn.grid;
    if (g.n > 64) throw ConfigError("brute-force seminorm limited to 64 points per axis");
    const auto ok = admitted(g, opts);
    double best = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!ok[i]) continue;
        const Point p = g.point(i);
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            if (!ok[j]) continue;
            const Point q = g.point(j);
            double r2 = 0.0;
            for (int k = 0; k < g.d; ++k) r2 += (p[k] - q[k]) * (p[k] - q[k]);
            const double r = std::sqrt(r2);
            if (r > opts.max_dist * (1.0 + 1e-9)) continue;
            best = std::max(best, std::abs(fn[i] - fn[j]) / std::pow(r, alpha));
        }
    }
    return best;
}

double masked_sup(const GridFn& fn, const NormOptions& opts) {
    double m = 0.0;
    for (std::size_t i = 0; i < fn.grid.size(); ++i)
        if (opts.admits(fn.grid, i)) m = std::max(m, std::abs(fn[i]));
    return m;
}

HolderReport norm_2alpha(const GridFn& fn, double alpha, const NormOptions& opts) {
    HolderReport r;
    const auto grad = fd_gradient(fn);
    const auto hess = fd_hessian(fn);
    r.sup = masked_sup(fn, opts);
    r.grad_sup = masked_sup(pointwise_norm(grad), opts);
    r.hess_sup = masked_sup(pointwise_norm(hess), opts);
    r.seminorm_alpha = holder_seminorm(fn, alpha, opts);
    r.seminorm_2alpha = holder_seminorm(hess, alpha, opts);
    r.norm_2alpha = r.sup + r.grad_sup + r.hess_sup + r.seminorm_2alpha;
    return r;
}

std::vector<InterpolationRow> check_interpolation(const std::vector<GridFn>& fns, double alpha,
                                                  const std::vector<double>& eps_list, const NormOptions& opts) {
    std::vector<HolderReport> reps;
    for (const auto& f : fns) reps.push_back(norm_2alpha(f, alpha, opts));
    std::vector<InterpolationRow> rows;
    for (double eps : eps_list) {
        if (!(eps > 0.0)) throw ConfigError("interpolation eps must be positive");
        InterpolationRow row{eps, 0.0, true};
        for (const auto& r : reps) {
            const double two = r.sup + r.grad_sup + r.hess_sup;
            const double excess = two - eps * r.seminorm_2alpha;
            if (excess <= 0.0) continue;
            if (r.sup == 0.0) {
                row.N = std::numeric_limits<double>::infinity();
                row.finite = false;
                continue;
            }
            row.N = std::max(row.N, excess / r.sup);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace schauder
