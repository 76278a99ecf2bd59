#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace schauder {

using Point = std::array<double, 3>;

/// Uniform box [-radius, radius]^d with n points per axis. Flat node index
/// runs with x1 fastest.
struct SpaceGrid {
    int d = 1;
    double radius = 1.0;
    int n = 5;

    SpaceGrid() = default;
    SpaceGrid(int d_, double radius_, int n_);

    double h() const { return 2.0 * radius / (n - 1); }
    std::size_t size() const;
    double coord(int i) const { return -radius + h() * i; }
    std::array<int, 3> multi(std::size_t flat) const;
    std::size_t flat(const std::array<int, 3>& idx) const;
    Point point(std::size_t flat) const;
    std::size_t stride(int axis) const;
    /// Nodes within `layers` of the boundary.
    bool near_boundary(std::size_t flat, int layers = 1) const;

    friend bool operator==(const SpaceGrid& a, const SpaceGrid& b) = default;
};

struct GridFn {
    SpaceGrid grid;
    Eigen::VectorXd values;

    GridFn() = default;
    explicit GridFn(const SpaceGrid& g) : grid(g), values(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.size()))) {}
    GridFn(const SpaceGrid& g, Eigen::VectorXd v) : grid(g), values(std::move(v)) {}

    double operator[](std::size_t i) const { return values[static_cast<Eigen::Index>(i)]; }
    double& operator[](std::size_t i) { return values[static_cast<Eigen::Index>(i)]; }
    double sup() const { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }
};

using SpaceFunction = std::function<double(const Point&)>;
using SpaceTimeFunction = std::function<double(double, const Point&)>;

GridFn sample(const SpaceGrid& grid, const SpaceFunction& fn);

/// Time slices on one grid plus an optional stored generalized derivative.
struct SpaceTimeFn {
    SpaceGrid grid;
    std::vector<double> times;
    std::vector<GridFn> slices;
    std::vector<GridFn> dt_slices;

    bool has_dt() const { return !dt_slices.empty(); }
    std::size_t size() const { return times.size(); }
    /// Index of the stored time nearest to t.
    std::size_t nearest(double t) const;
    /// Linear interpolation in time between stored slices (clamped).
    GridFn at(double t) const;
    GridFn dt_at(double t) const;
    double sup() const;
};

}  // namespace schauder
