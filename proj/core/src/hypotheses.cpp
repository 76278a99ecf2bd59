#include "schauder/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "schauder/errors.hpp"

namespace schauder {

std::vector<std::vector<int>> pair_directions(int d) {
    std::vector<std::vector<int>> dirs;
    for (int i = 0; i < d; ++i) {
        std::vector<int> e(d, 0);
        e[i] = 1;
        dirs.push_back(e);
    }
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            for (int s : {1, -1}) {
                std::vector<int> e(d, 0);
                e[i] = 1;
                e[j] = s;
                dirs.push_back(e);
            }
        }
    }
    if (d == 3) {
        for (int s2 : {1, -1})
            for (int s3 : {1, -1}) dirs.push_back({1, s2, s3});
    }
    return dirs;
}

namespace {

struct Field {
    std::string name;
    const Expr* expr;
};

void visit_anchors(int d, int n, double radius, const auto& fn) {
    std::vector<double> x(d);
    std::vector<int> idx(d, 0);
    const double step = n > 1 ? 2.0 * radius / (n - 1) : 0.0;
    while (true) {
        for (int k = 0; k < d; ++k) x[k] = -radius + step * idx[k];
        fn(x);
        int k = 0;
        while (k < d && ++idx[k] == n) idx[k++] = 0;
        if (k == d) break;
    }
}

}  // namespace

HypothesisReport check_hypotheses(const OperatorSpec& spec, const HypothesisSampling& s) {
    if (!(s.box_radius > 0.0)) throw ConfigError("box_radius must be positive");
    if (s.n_space < 2 || s.n_time < 2 || s.n_pairs < 1) throw ConfigError("sample counts must be at least 2");
    const int d = spec.d();

    std::vector<Field> fields;
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            fields.push_back({"a" + std::to_string(i + 1) + std::to_string(j + 1), &spec.a(i, j)});
    for (int i = 0; i < d; ++i) fields.push_back({"b" + std::to_string(i + 1), &spec.b(i)});
    fields.push_back({"c", &spec.c()});

    const auto dirs = pair_directions(d);
    std::vector<double> dists;
    for (int m = 0; m < s.n_pairs; ++m) dists.push_back(s.max_dist * std::ldexp(1.0, -m));

    HypothesisReport rep;
    rep.delta = std::numeric_limits<double>::infinity();
    double holder_a_bc = 0.0;
    std::vector<double> y(d);

    for (int it = 0; it < s.n_time; ++it) {
        const double t = spec.T + (spec.S - spec.T) * it / (s.n_time - 1);
        visit_anchors(d, s.n_space, s.box_radius, [&](const std::vector<double>& x) {
            const CoeffSample cs = sample_coefficients(spec, t, x);
            const EigenRange er = symmetric_eigen_range(cs.a);
            rep.delta = std::min({rep.delta, er.min, cs.c});
            rep.bigK = std::max(rep.bigK, er.max);
            if (er.min <= 0.0) rep.violations.push_back({"a_ellipticity", t, x, {}, er.min});
            if (cs.c <= 0.0) rep.violations.push_back({"c_positivity", t, x, {}, cs.c});
            if (cs.c > 0.0) {
                rep.F0 = std::max(rep.F0, std::abs(cs.f) / cs.c);
            } else if (cs.f != 0.0) {
                rep.violations.push_back({"F0", t, x, {}, std::numeric_limits<double>::infinity()});
            }

            for (const auto& dir : dirs) {
                double norm = 0.0;
                for (int v : dir) norm += v * v;
                norm = std::sqrt(norm);
                for (double r : dists) {
                    for (int k = 0; k < d; ++k) y[k] = x[k] + r * dir[k] / norm;
                    const double denom = std::pow(r, spec.alpha);
                    for (const auto& fld : fields) {
                        const double q = std::abs(fld.expr->eval(t, x) - fld.expr->eval(t, y)) / denom;
                        holder_a_bc = std::max(holder_a_bc, q);
                        if (q > s.quotient_cap) rep.violations.push_back({fld.name, t, x, y, q});
                    }
                    const double qf = std::abs(spec.f().eval(t, x) - spec.f().eval(t, y)) / denom;
                    rep.Falpha = std::max(rep.Falpha, qf);
                    if (qf > s.quotient_cap) rep.violations.push_back({"f", t, x, y, qf});
                }
            }
        });
    }
    rep.bigK = std::max(rep.bigK, holder_a_bc);
    if (rep.delta <= 0.0 && rep.violations.empty())
        rep.violations.push_back({"delta", spec.T, std::vector<double>(d, 0.0), {}, rep.delta});
    return rep;
}

}  // namespace schauder
