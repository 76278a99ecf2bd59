#include "schauder/gauge.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "schauder/errors.hpp"
#include "schauder/finite_difference.hpp"

namespace schauder {

ShiftedField shift_field(const GridFn& g, const SmallVec& shift) {
    const SpaceGrid& grid = g.grid;
    const int d = grid.d;
    const double h = grid.h();
    ShiftedField out;
    out.values = GridFn(grid);
    out.valid.assign(grid.size(), 0);

    std::array<double, 3> cells{0.0, 0.0, 0.0};
    std::array<int, 3> whole{0, 0, 0};
    bool exact = true;
    for (int k = 0; k < d; ++k) {
        cells[k] = shift(k) / h;
        whole[k] = static_cast<int>(std::lround(cells[k]));
        if (std::abs(cells[k] - whole[k]) > 1e-9) exact = false;
    }
    out.exact = exact;

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto idx = grid.multi(i);
        if (exact) {
            std::array<int, 3> j{0, 0, 0};
            bool inside = true;
            for (int k = 0; k < d; ++k) {
                j[k] = idx[k] + whole[k];
                if (j[k] < 0 || j[k] >= grid.n) inside = false;
            }
            if (!inside) continue;
            out.values[i] = g[grid.flat(j)];
            out.valid[i] = 1;
            continue;
        }
        std::array<int, 3> base{0, 0, 0};
        std::array<double, 3> frac{0.0, 0.0, 0.0};
        bool inside = true;
        for (int k = 0; k < d; ++k) {
            const double pos = idx[k] + cells[k];
            if (pos < -1e-12 || pos > grid.n - 1 + 1e-12) {
                inside = false;
                break;
            }
            base[k] = std::clamp(static_cast<int>(std::floor(pos)), 0, grid.n - 2);
            frac[k] = std::clamp(pos - base[k], 0.0, 1.0);
        }
        if (!inside) continue;
        double acc = 0.0;
        for (int corner = 0; corner < (1 << d); ++corner) {
            double w = 1.0;
            std::array<int, 3> j{0, 0, 0};
            for (int k = 0; k < d; ++k) {
                const int bit = (corner >> k) & 1;
                j[k] = base[k] + bit;
                w *= bit ? frac[k] : 1.0 - frac[k];
            }
            if (w != 0.0) acc += w * g[grid.flat(j)];
        }
        out.values[i] = acc;
        out.valid[i] = 1;
    }
    return out;
}

namespace {

using Rule = boost::math::quadrature::gauss<double, 20>;

template <class F, class V>
V composite(const F& f, double lo, double hi, V zero) {
    const auto& nodes = Rule::abscissa();
    const auto& weights = Rule::weights();
    constexpr int m = 4;
    const double h = (hi - lo) / m;
    V acc = zero;
    for (int k = 0; k < m; ++k) {
        const double mid = lo + (k + 0.5) * h;
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            const double w = weights[q] * 0.5 * h;
            acc = acc + w * (f(mid - 0.5 * h * nodes[q]) + f(mid + 0.5 * h * nodes[q]));
        }
    }
    return acc;
}

template <class F, class V>
V integrate(const F& f, double t_ref, double t, const std::vector<double>& breakpoints, V zero) {
    if (t == t_ref) return zero;
    const double lo = std::min(t_ref, t);
    const double hi = std::max(t_ref, t);
    std::vector<double> cuts{lo};
    std::vector<double> bps = breakpoints;
    std::sort(bps.begin(), bps.end());
    for (double b : bps)
        if (b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    V acc = zero;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) acc = acc + composite(f, cuts[k], cuts[k + 1], zero);
    return t >= t_ref ? acc : V(-1.0 * acc);
}

}  // namespace

SmallVec integrate_time_vector(const TimeVector& f, double t_ref, double t, const std::vector<double>& breakpoints) {
    const auto d = f(t_ref).size();
    return integrate(f, t_ref, t, breakpoints, SmallVec(SmallVec::Zero(d)));
}

double integrate_time_scalar(const TimeScalar& f, double t_ref, double t, const std::vector<double>& breakpoints) {
    return integrate(f, t_ref, t, breakpoints, 0.0);
}

GaugeTranslation gauge_translate(const SpaceTimeFn& u, const TimeVector& b0, const std::vector<double>& breakpoints,
                                 double t_ref) {
    GaugeTranslation out;
    out.v.grid = u.grid;
    out.v.times = u.times;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double t = u.times[k];
        const SmallVec B = integrate_time_vector(b0, t_ref, t, breakpoints);
        ShiftedField sv = shift_field(u.slices[k], B);
        out.exact = out.exact && sv.exact;
        out.v.slices.push_back(sv.values);
        out.valid.push_back(sv.valid);
        out.shift.push_back(B);
        if (u.has_dt()) {
            GridFn vt = u.dt_slices[k];
            const SmallVec b = b0(t);
            const auto grad = fd_gradient(u.slices[k]);
            for (int a = 0; a < u.grid.d; ++a) vt.values += b(a) * grad[static_cast<std::size_t>(a)].values;
            out.v.dt_slices.push_back(shift_field(vt, B).values);
        }
    }
    return out;
}

GaugeExp gauge_exp(const SpaceTimeFn& u, const TimeScalar& c0, const std::vector<double>& breakpoints, double t_ref) {
    GaugeExp out;
    out.v.grid = u.grid;
    out.v.times = u.times;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double t = u.times[k];
        const double C = integrate_time_scalar(c0, t_ref, t, breakpoints);
        const double scale = std::exp(-C);
        out.C.push_back(C);
        out.v.slices.emplace_back(u.grid, scale * u.slices[k].values);
        if (u.has_dt())
            out.v.dt_slices.emplace_back(u.grid, scale * (u.dt_slices[k].values - c0(t) * u.slices[k].values));
    }
    return out;
}

}  // namespace schauder
