#include "schauder/operator_spec.hpp"

#include <algorithm>

#include "schauder/errors.hpp"

namespace schauder {

OperatorSpec::OperatorSpec(int d) : d_(d) {
    if (d < 1 || d > 3) throw ConfigError("dimension must be 1, 2 or 3");
    for (int i = 0; i < d; ++i) set_a(i, i, Expr::literal(1.0));
}

void OperatorSpec::set_a(int i, int j, Expr e) {
    a_[i][j] = e;
    a_[j][i] = std::move(e);
}

void OperatorSpec::validate() const {
    if (d_ < 1 || d_ > 3) throw ConfigError("dimension must be 1, 2 or 3");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha out of (0,1)");
    if (!(T < S)) throw ConfigError("time window requires T < S");
    if (!std::is_sorted(t_breakpoints.begin(), t_breakpoints.end()))
        throw ConfigError("t_breakpoints must be sorted");
    auto check = [&](const Expr& e, const std::string& name) {
        if (e.max_axis() > d_)
            throw ConfigError(name + " references x" + std::to_string(e.max_axis()) + " beyond dimension " +
                              std::to_string(d_));
    };
    for (int i = 0; i < d_; ++i) {
        for (int j = i; j < d_; ++j) check(a_[i][j], "a" + std::to_string(i + 1) + std::to_string(j + 1));
        check(b_[i], "b" + std::to_string(i + 1));
    }
    check(c_, "c");
    check(f_, "f");
}

bool OperatorSpec::time_independent() const {
    for (int i = 0; i < d_; ++i) {
        for (int j = i; j < d_; ++j)
            if (a_[i][j].uses_time()) return false;
        if (b_[i].uses_time()) return false;
    }
    return !c_.uses_time() && !f_.uses_time();
}

bool OperatorSpec::a_space_independent() const {
    for (int i = 0; i < d_; ++i)
        for (int j = i; j < d_; ++j)
            if (a_[i][j].uses_space()) return false;
    return true;
}

bool OperatorSpec::space_independent() const {
    if (!a_space_independent()) return false;
    for (int i = 0; i < d_; ++i)
        if (b_[i].uses_space()) return false;
    return !c_.uses_space() && !f_.uses_space();
}

std::vector<double> OperatorSpec::breakpoints_in(double lo, double hi) const {
    std::vector<double> out;
    for (double b : t_breakpoints)
        if (b > lo && b < hi) out.push_back(b);
    return out;
}

OperatorSpec build_spec(const OperatorText& text) {
    OperatorSpec spec(text.d);
    const auto d = static_cast<std::size_t>(text.d);
    if (text.a.size() != d) throw ConfigError("a must have d rows");
    for (const auto& row : text.a)
        if (row.size() != d) throw ConfigError("a must be d x d");
    if (text.b.size() != d) throw ConfigError("b must have d entries");
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            Expr upper = parse_expr(text.a[i][j]);
            if (i != j) {
                Expr lower = parse_expr(text.a[j][i]);
                if (!(upper == lower)) upper = (upper + lower) / Expr::literal(2.0);
            }
            spec.set_a(static_cast<int>(i), static_cast<int>(j), upper);
        }
        spec.set_b(static_cast<int>(i), parse_expr(text.b[i]));
    }
    spec.set_c(parse_expr(text.c));
    spec.set_f(parse_expr(text.f));
    spec.alpha = text.alpha;
    spec.T = text.T;
    spec.S = text.S;
    spec.t_breakpoints = text.t_breakpoints;
    spec.validate();
    return spec;
}

CoeffSample sample_coefficients(const OperatorSpec& spec, double t, std::span<const double> x) {
    const int d = spec.d();
    CoeffSample s;
    s.a.resize(d, d);
    s.b.resize(d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            const double v = spec.a(i, j).eval(t, x);
            s.a(i, j) = v;
            s.a(j, i) = v;
        }
        s.b(i) = spec.b(i).eval(t, x);
    }
    s.c = spec.c().eval(t, x);
    s.f = spec.f().eval(t, x);
    return s;
}

OperatorSpec heat_spec(int d, double delta, double T, double S) {
    OperatorSpec spec(d);
    spec.set_c(Expr::literal(delta));
    spec.T = T;
    spec.S = S;
    return spec;
}

}  // namespace schauder
