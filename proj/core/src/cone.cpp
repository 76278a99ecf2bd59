#include "schauder/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "schauder/errors.hpp"

namespace schauder {

namespace {

void validate(const ConeSpec& cone) {
    if (cone.axis.size() < 1 || cone.axis.size() > 3) throw ConfigError("cone axis must have 1 to 3 components");
    if (std::abs(cone.axis.norm() - 1.0) > 1e-9) throw ConfigError("cone axis must be a unit vector");
    if (!(cone.gamma >= 1.0) || !std::isfinite(cone.gamma)) throw ConfigError("cone requires finite gamma >= 1");
    if (!(cone.h > 0.0)) throw ConfigError("cone height must be positive");
}

/// Two unit vectors orthogonal to a 3-d axis and to each other.
std::pair<Eigen::Vector3d, Eigen::Vector3d> frame(const Eigen::Vector3d& a) {
    Eigen::Vector3d helper = std::abs(a.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    Eigen::Vector3d u = (helper - helper.dot(a) * a).normalized();
    return {u, a.cross(u)};
}

SmallVec rotate2(const SmallVec& axis, double angle) {
    SmallVec v(2);
    v(0) = std::cos(angle) * axis(0) - std::sin(angle) * axis(1);
    v(1) = std::sin(angle) * axis(0) + std::cos(angle) * axis(1);
    return v;
}

SmallVec tilt3(const SmallVec& axis, double polar, double azimuth) {
    const Eigen::Vector3d a(axis(0), axis(1), axis(2));
    auto [u, w] = frame(a);
    const Eigen::Vector3d v =
        std::cos(polar) * a + std::sin(polar) * (std::cos(azimuth) * u + std::sin(azimuth) * w);
    SmallVec out(3);
    out << v.x(), v.y(), v.z();
    return out;
}

}  // namespace

double ConeSpec::half_angle() const { return std::asin(1.0 / gamma); }

bool ConeSpec::contains(const SmallVec& xi) const {
    const double n = xi.norm();
    if (n == 0.0) return true;
    return axis.dot(xi) >= n * std::cos(half_angle()) - 1e-12 * n;
}

std::vector<SmallVec> cone_directions(const ConeSpec& cone, int n_dirs) {
    validate(cone);
    if (n_dirs < 1) throw ConfigError("n_dirs must be positive");
    const int d = static_cast<int>(cone.axis.size());
    const double theta = cone.half_angle();
    std::vector<SmallVec> dirs;
    if (d == 1) {
        dirs.push_back(cone.axis);
        return dirs;
    }
    if (d == 2) {
        if (n_dirs == 1) return {cone.axis};
        for (int k = 0; k < n_dirs; ++k)
            dirs.push_back(rotate2(cone.axis, theta * (2.0 * k / (n_dirs - 1) - 1.0)));
        return dirs;
    }
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const double zmin = std::cos(theta);
    dirs.push_back(cone.axis);
    for (int k = 1; k < n_dirs; ++k) {
        const double z = 1.0 - (1.0 - zmin) * k / (n_dirs - 1);
        dirs.push_back(tilt3(cone.axis, std::acos(std::clamp(z, -1.0, 1.0)), k * golden));
    }
    return dirs;
}

double cone_matrix_bound(const SmallMat& M, const ConeSpec& cone, int n_dirs) {
    if (M.rows() != cone.axis.size()) throw ConfigError("matrix and cone dimensions differ");
    double best = 0.0;
    for (const auto& xi : cone_directions(cone, n_dirs)) best = std::max(best, std::abs(xi.dot(M * xi)));
    return best;
}

PolarizationResult polarize(const SmallMat& M, const std::vector<SmallVec>& directions) {
    const int d = static_cast<int>(M.rows());
    const int m = d * (d + 1) / 2;
    if (static_cast<int>(directions.size()) != m) throw ConfigError("polarization needs d(d+1)/2 directions");
    Eigen::MatrixXd design(m, m);
    Eigen::VectorXd q(m);
    for (int r = 0; r < m; ++r) {
        const SmallVec& xi = directions[static_cast<std::size_t>(r)];
        int col = 0;
        for (int i = 0; i < d; ++i)
            for (int j = i; j < d; ++j) design(r, col++) = (i == j ? 1.0 : 2.0) * xi(i) * xi(j);
        q(r) = xi.dot(M * xi);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(design);
    if (!lu.isInvertible()) throw NumericalError("polarization directions are degenerate");
    const Eigen::MatrixXd inv = lu.inverse();
    const Eigen::VectorXd entries = inv * q;
    PolarizationResult res;
    res.recovered.resize(d, d);
    int col = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            res.recovered(i, j) = entries(col);
            res.recovered(j, i) = entries(col);
            ++col;
        }
    }
    res.N = inv.cwiseAbs().rowwise().sum().maxCoeff();
    res.directions = directions;
    return res;
}

PolarizationResult polarize_in_cone(const SmallMat& M, const ConeSpec& cone) {
    validate(cone);
    const int d = static_cast<int>(cone.axis.size());
    const double tilt = 0.9 * cone.half_angle();
    std::vector<SmallVec> dirs;
    if (d == 1) {
        dirs.push_back(cone.axis);
    } else if (d == 2) {
        dirs = {rotate2(cone.axis, -tilt), cone.axis, rotate2(cone.axis, tilt)};
    } else {
        dirs.push_back(cone.axis);
        for (int k = 0; k < 5; ++k) dirs.push_back(tilt3(cone.axis, tilt, 2.0 * std::numbers::pi * k / 5.0));
    }
    return polarize(M, dirs);
}

}  // namespace schauder
