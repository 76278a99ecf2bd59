#pragma once

#include <vector>

#include "schauder/grid.hpp"
#include "schauder/operator_spec.hpp"
#include "schauder/small_linalg.hpp"

namespace schauder {

/// Symmetric diffusion matrix a(t) that depends on time only.
class TimeMatrixPath {
public:
    TimeMatrixPath() = default;
    /// Throws ConfigError if any entry references a space variable.
    TimeMatrixPath(int d, std::vector<std::vector<Expr>> a, std::vector<double> breakpoints = {});

    static TimeMatrixPath constant(const SmallMat& a);
    static TimeMatrixPath identity(int d) { return constant(SmallMat::Identity(d, d)); }
    /// The a-part of a spec whose a is x-independent.
    static TimeMatrixPath from_spec(const OperatorSpec& spec);

    int d() const { return d_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    bool is_constant() const { return constant_; }
    const Expr& entry(int i, int j) const { return a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

    SmallMat eval(double t) const;

private:
    int d_ = 1;
    std::vector<std::vector<Expr>> a_;
    std::vector<double> breakpoints_;
    bool constant_ = true;
    SmallMat const_value_;
};

struct GaussParams {
    SmallMat A;
    SmallMat B;
    double detB = 0.0;
    double s = 0.0;
    double t = 0.0;
};

/// Subintervals per breakpoint segment, each integrated by a 20-point
/// Gauss-Legendre rule.
struct TimeQuadrature {
    int intervals = 4;
};

/// A_st = int_s^t a(r) dr with splits at breakpoints; exact for constant
/// paths. Throws ConfigError when t <= s and NumericalError when A is singular.
GaussParams accumulate_A(const TimeMatrixPath& path, double s, double t, const TimeQuadrature& q = {});

/// Gaussian kernel with parameters (A, B); zero when t <= s.
double gauss_kernel(const GaussParams& params, const Point& x);

/// Gaussian density with covariance 2A evaluated at x; A must be positive definite.
double gauss_density(const SmallMat& B, double detB, const Point& x);

}  // namespace schauder
