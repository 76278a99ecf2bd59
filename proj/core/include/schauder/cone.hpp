#pragma once

#include <vector>

#include "schauder/small_linalg.hpp"

namespace schauder {

/// Round cone around `axis` whose inscribed unit balls have centers at
/// distance >= gamma from the vertex: half-angle asin(1/gamma). gamma = 1 is
/// a half-space. `h` truncates the cone to |x| <= h.
struct ConeSpec {
    SmallVec axis;
    double gamma = 1.0;
    double h = 1.0;

    double half_angle() const;
    bool contains(const SmallVec& xi) const;
};

/// Deterministic unit directions covering the cone: angles for d = 2, a
/// Fibonacci cap for d = 3, the axis for d = 1.
std::vector<SmallVec> cone_directions(const ConeSpec& cone, int n_dirs);

/// max |xi^T M xi| over the sampled unit directions of the cone.
double cone_matrix_bound(const SmallMat& M, const ConeSpec& cone, int n_dirs);

struct PolarizationResult {
    SmallMat recovered;
    /// max l1 row norm of the inverse design: |M^{ij}| <= N * max |xi^T M xi|.
    double N = 0.0;
    std::vector<SmallVec> directions;
};

/// Recover M from its quadratic form on d(d+1)/2 cone directions.
PolarizationResult polarize(const SmallMat& M, const std::vector<SmallVec>& directions);

/// Picks d(d+1)/2 well-spread cone directions and polarizes.
PolarizationResult polarize_in_cone(const SmallMat& M, const ConeSpec& cone);

}  // namespace schauder
