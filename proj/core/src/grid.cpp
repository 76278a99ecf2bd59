#include "schauder/grid.hpp"

#include <algorithm>
#include <cmath>

#include "schauder/errors.hpp"

namespace schauder {

SpaceGrid::SpaceGrid(int d_, double radius_, int n_) : d(d_), radius(radius_), n(n_) {
    if (d < 1 || d > 3) throw ConfigError("grid dimension must be 1, 2 or 3");
    if (n < 5) throw ConfigError("grid needs at least 5 points per axis");
    if (!(radius > 0.0)) throw ConfigError("grid radius must be positive");
}

std::size_t SpaceGrid::size() const {
    std::size_t s = 1;
    for (int k = 0; k < d; ++k) s *= static_cast<std::size_t>(n);
    return s;
}

std::size_t SpaceGrid::stride(int axis) const {
    std::size_t s = 1;
    for (int k = 0; k < axis; ++k) s *= static_cast<std::size_t>(n);
    return s;
}

std::array<int, 3> SpaceGrid::multi(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    for (int k = 0; k < d; ++k) {
        idx[k] = static_cast<int>(flat % static_cast<std::size_t>(n));
        flat /= static_cast<std::size_t>(n);
    }
    return idx;
}

std::size_t SpaceGrid::flat(const std::array<int, 3>& idx) const {
    std::size_t f = 0;
    for (int k = d - 1; k >= 0; --k) f = f * static_cast<std::size_t>(n) + static_cast<std::size_t>(idx[k]);
    return f;
}

Point SpaceGrid::point(std::size_t flat_index) const {
    const auto idx = multi(flat_index);
    Point p{0.0, 0.0, 0.0};
    for (int k = 0; k < d; ++k) p[k] = coord(idx[k]);
    return p;
}

bool SpaceGrid::near_boundary(std::size_t flat_index, int layers) const {
    const auto idx = multi(flat_index);
    for (int k = 0; k < d; ++k)
        if (idx[k] < layers || idx[k] > n - 1 - layers) return true;
    return false;
}

GridFn sample(const SpaceGrid& grid, const SpaceFunction& fn) {
    GridFn g(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) g[i] = fn(grid.point(i));
    return g;
}

std::size_t SpaceTimeFn::nearest(double t) const {
    auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.end()) return times.size() - 1;
    const auto k = static_cast<std::size_t>(it - times.begin());
    if (k > 0 && std::abs(times[k - 1] - t) <= std::abs(times[k] - t)) return k - 1;
    return k;
}

namespace {

GridFn interpolate(const std::vector<double>& times, const std::vector<GridFn>& slices, double t) {
    if (slices.empty()) throw ConfigError("no slices stored");
    if (t <= times.front()) return slices.front();
    if (t >= times.back()) return slices.back();
    const auto hi = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
    const std::size_t lo = hi - 1;
    if (times[lo] == t) return slices[lo];
    const double w = (t - times[lo]) / (times[hi] - times[lo]);
    return GridFn(slices[lo].grid, (1.0 - w) * slices[lo].values + w * slices[hi].values);
}

}  // namespace

GridFn SpaceTimeFn::at(double t) const { return interpolate(times, slices, t); }

GridFn SpaceTimeFn::dt_at(double t) const {
    if (!has_dt()) throw ConfigError("time derivative slices missing");
    return interpolate(times, dt_slices, t);
}

double SpaceTimeFn::sup() const {
    double m = 0.0;
    for (const auto& s : slices) m = std::max(m, s.sup());
    return m;
}

}  // namespace schauder
