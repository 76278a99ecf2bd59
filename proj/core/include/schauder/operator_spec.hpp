#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "schauder/expr.hpp"
#include "schauder/small_linalg.hpp"

namespace schauder {

/// L = a^{ij} D_ij + b^i D_i - c with right-hand side f on the window [T, S].
/// Entries beyond dimension d are unused literal zeros. a is stored with one
/// shared node per unordered pair (i, j), so symmetry holds structurally.
class OperatorSpec {
public:
    OperatorSpec() = default;
    explicit OperatorSpec(int d);

    int d() const { return d_; }

    const Expr& a(int i, int j) const { return a_[i][j]; }
    const Expr& b(int i) const { return b_[i]; }
    const Expr& c() const { return c_; }
    const Expr& f() const { return f_; }

    /// Sets a^{ij} and a^{ji} to the same node.
    void set_a(int i, int j, Expr e);
    void set_b(int i, Expr e) { b_[i] = std::move(e); }
    void set_c(Expr e) { c_ = std::move(e); }
    void set_f(Expr e) { f_ = std::move(e); }

    double alpha = 0.5;
    double T = 0.0;
    double S = 1.0;
    std::vector<double> t_breakpoints;

    /// Throws ConfigError: d outside 1..3, alpha outside (0,1), T >= S,
    /// unsorted breakpoints, or a coordinate beyond d referenced.
    void validate() const;

    bool time_independent() const;
    /// True when a, b, c, f do not depend on x (so the problem reduces to ODEs).
    bool space_independent() const;
    bool a_space_independent() const;

    /// Breakpoints strictly inside (lo, hi), sorted.
    std::vector<double> breakpoints_in(double lo, double hi) const;

private:
    int d_ = 1;
    std::array<std::array<Expr, 3>, 3> a_{};
    std::array<Expr, 3> b_{};
    Expr c_ = Expr::literal(1.0);
    Expr f_{};
};

/// Text form of a spec; a must be d x d, b of length d.
struct OperatorText {
    int d = 1;
    std::vector<std::vector<std::string>> a;
    std::vector<std::string> b;
    std::string c = "1";
    std::string f = "0";
    double alpha = 0.5;
    double T = 0.0;
    double S = 1.0;
    std::vector<double> t_breakpoints;
};

/// Parses every field. When a^{ij} and a^{ji} differ, both become
/// (a^{ij} + a^{ji}) / 2. Throws ParseError or ConfigError.
OperatorSpec build_spec(const OperatorText& text);

/// Coefficient values at one (t, x).
struct CoeffSample {
    SmallMat a;
    SmallVec b;
    double c = 0.0;
    double f = 0.0;
};

CoeffSample sample_coefficients(const OperatorSpec& spec, double t, std::span<const double> x);

/// Heat operator a = I, b = 0, c = delta, f = 0 on [T, S].
OperatorSpec heat_spec(int d, double delta, double T, double S);

}  // namespace schauder
