#include "schauder/kernel.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "schauder/errors.hpp"

namespace schauder {

TimeMatrixPath::TimeMatrixPath(int d, std::vector<std::vector<Expr>> a, std::vector<double> breakpoints)
    : d_(d), a_(std::move(a)), breakpoints_(std::move(breakpoints)) {
    if (d < 1 || d > 3) throw ConfigError("path dimension must be 1, 2 or 3");
    if (a_.size() != static_cast<std::size_t>(d)) throw ConfigError("path matrix must be d x d");
    for (const auto& row : a_)
        if (row.size() != static_cast<std::size_t>(d)) throw ConfigError("path matrix must be d x d");
    constant_ = true;
    const_value_.resize(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const Expr& e = entry(i, j);
            if (e.uses_space()) throw ConfigError("diffusion path may depend on t only");
            if (!e.is_literal()) constant_ = false;
            else const_value_(i, j) = e.value();
        }
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (!(entry(i, j) == entry(j, i))) throw ConfigError("diffusion path must be symmetric");
}

TimeMatrixPath TimeMatrixPath::constant(const SmallMat& a) {
    const int d = static_cast<int>(a.rows());
    std::vector<std::vector<Expr>> e(static_cast<std::size_t>(d), std::vector<Expr>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Expr::literal(0.5 * (a(i, j) + a(j, i)));
    return TimeMatrixPath(d, std::move(e));
}

TimeMatrixPath TimeMatrixPath::from_spec(const OperatorSpec& spec) {
    const int d = spec.d();
    std::vector<std::vector<Expr>> e(static_cast<std::size_t>(d), std::vector<Expr>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = spec.a(i, j);
    return TimeMatrixPath(d, std::move(e), spec.t_breakpoints);
}

SmallMat TimeMatrixPath::eval(double t) const {
    if (constant_) return const_value_;
    SmallMat m(d_, d_);
    const double x[3] = {0.0, 0.0, 0.0};
    for (int i = 0; i < d_; ++i) {
        for (int j = i; j < d_; ++j) {
            const double v = entry(i, j).eval(t, x);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

namespace {

using Rule = boost::math::quadrature::gauss<double, 20>;

/// Composite 20-point Gauss-Legendre over m equal subintervals.
SmallMat composite_gauss(const TimeMatrixPath& path, double lo, double hi, int m) {
    const auto& nodes = Rule::abscissa();
    const auto& weights = Rule::weights();
    const double h = (hi - lo) / m;
    SmallMat acc = SmallMat::Zero(path.d(), path.d());
    for (int k = 0; k < m; ++k) {
        const double mid = lo + (k + 0.5) * h;
        for (std::size_t q = 0; q < nodes.size(); ++q) {
            const double w = weights[q] * 0.5 * h;
            if (nodes[q] == 0.0) {
                acc += w * path.eval(mid);
            } else {
                acc += w * (path.eval(mid - 0.5 * h * nodes[q]) + path.eval(mid + 0.5 * h * nodes[q]));
            }
        }
    }
    return acc;
}

}  // namespace

GaussParams accumulate_A(const TimeMatrixPath& path, double s, double t, const TimeQuadrature& q) {
    if (!(t > s)) throw ConfigError("accumulate_A requires t > s");
    GaussParams p;
    p.s = s;
    p.t = t;
    if (path.is_constant()) {
        p.A = path.eval(s) * (t - s);
    } else {
        p.A = SmallMat::Zero(path.d(), path.d());
        std::vector<double> cuts{s};
        for (double b : path.breakpoints())
            if (b > s && b < t) cuts.push_back(b);
        cuts.push_back(t);
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
            p.A += composite_gauss(path, cuts[k], cuts[k + 1], q.intervals);
        }
    }
    p.B = small_inverse(p.A);
    p.detB = 1.0 / small_determinant(p.A);
    if (!(p.detB > 0.0)) throw NumericalError("accumulated diffusion is not positive definite");
    return p;
}

double gauss_density(const SmallMat& B, double detB, const Point& x) {
    const int d = static_cast<int>(B.rows());
    double q = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) q += B(i, j) * x[i] * x[j];
    return std::pow(4.0 * std::numbers::pi, -0.5 * d) * std::sqrt(detB) * std::exp(-0.25 * q);
}

double gauss_kernel(const GaussParams& params, const Point& x) {
    if (!(params.t > params.s)) return 0.0;
    return gauss_density(params.B, params.detB, x);
}

}  // namespace schauder
