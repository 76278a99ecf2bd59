#include "schauder/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "schauder/embedding.hpp"
#include "schauder/errors.hpp"
#include "schauder/finite_difference.hpp"
#include "schauder/gauge.hpp"

namespace schauder {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

double slice_sup(const SpaceTimeFn& u) {
    double m = 0.0;
    for (const auto& s : u.slices) m = std::max(m, s.sup());
    return m;
}

double seminorm_2alpha(const GridFn& u, double alpha) { return holder_seminorm(fd_hessian(u), alpha); }

}  // namespace

AuditReport audit_max_principle(const std::vector<MaxPrincipleCase>& cases, double threshold) {
    AuditReport rep;
    rep.name = "max_principle";
    rep.threshold = threshold;
    rep.pass = true;
    for (const auto& c : cases) {
        if (!c.u) throw ConfigError("max_principle case without a solution");
        const double denom = std::max(c.hyp.F0, c.g_sup);
        const double s = slice_sup(*c.u);
        double value = 0.0;
        bool ok = true;
        if (denom > 0.0) {
            value = s / denom;
            ok = value <= threshold;
        } else {
            value = s;
            ok = s == 0.0;
        }
        rep.measured.push_back({c.name, value});
        if (!ok) {
            rep.pass = false;
            rep.details.push_back(c.name + ": ratio " + fmt(value));
        }
    }
    return rep;
}

double empirical_schauder(const SpaceTimeFn& u, const HypothesisReport& hyp, double g_norm, double alpha,
                          const NormOptions& opts) {
    double num = 0.0;
    for (const auto& s : u.slices) num = std::max(num, norm_2alpha(s, alpha, opts).norm_2alpha);
    const double denom = hyp.F0 + hyp.Falpha + g_norm;
    if (denom > 0.0) return num / denom;
    return num > 0.0 ? -1.0 : 0.0;
}

AuditReport audit_schauder(const std::vector<SchauderCase>& cases, double alpha, const NormOptions& opts,
                           double threshold) {
    AuditReport rep;
    rep.name = "schauder";
    rep.threshold = threshold;
    rep.pass = true;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& c : cases) {
        if (!c.u) throw ConfigError("schauder case without a solution");
        const double n = empirical_schauder(*c.u, c.hyp, c.g_norm, alpha, opts);
        rep.measured.push_back({c.name, n});
        if (n < 0.0) {
            rep.pass = false;
            rep.details.push_back(c.name + ": data constants vanish but u does not");
            continue;
        }
        if (n == 0.0) continue;  // u = 0 carries no information on N
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    const double spread = hi > 0.0 ? hi / lo : 1.0;
    rep.summary["spread"] = spread;
    rep.summary["N_max"] = hi;
    if (spread > threshold) {
        rep.pass = false;
        rep.details.push_back("spread " + fmt(spread));
    }
    return rep;
}

AuditReport audit_time_holder(const SpaceTimeFn& u, double alpha, const TimeHolderOptions& opts) {
    AuditReport rep;
    rep.name = "time_holder";
    rep.threshold = opts.slope_tol;
    if (u.size() < 2) throw ConfigError("time_holder needs at least two slices");
    const double t_lo = opts.t_hi > opts.t_lo ? opts.t_lo : u.times.front();
    const double t_hi = opts.t_hi > opts.t_lo ? opts.t_hi : u.times.back();

    NormOptions ball;
    for (std::size_t i = 0; i < u.grid.size(); ++i) {
        const Point p = u.grid.point(i);
        double r2 = 0.0;
        for (int k = 0; k < u.grid.d; ++k) r2 += p[k] * p[k];
        ball.mask.push_back(std::sqrt(r2) <= opts.ball_radius ? 1 : 0);
    }

    struct Fields {
        GridFn u;
        std::vector<GridFn> grad;
        std::vector<GridFn> hess;
    };
    auto fields = [&](double t) {
        Fields f;
        f.u = u.at(t);
        f.grad = fd_gradient(f.u);
        f.hess = fd_hessian(f.u);
        return f;
    };
    auto diff_norm = [&](const std::vector<GridFn>& a, const std::vector<GridFn>& b) {
        double m = 0.0;
        for (std::size_t i = 0; i < u.grid.size(); ++i) {
            if (!ball.admits(u.grid, i)) continue;
            double s = 0.0;
            for (std::size_t c = 0; c < a.size(); ++c) {
                const double e = a[c][i] - b[c][i];
                s += e * e;
            }
            m = std::max(m, std::sqrt(s));
        }
        return m;
    };

    std::vector<double> gaps, r0, r1, r2;
    for (double gap : opts.gaps) {
        if (gap <= 0.0 || gap > t_hi - t_lo) continue;
        // Start at stored slices (strided down to max_starts) so that
        // pairs cannot all straddle a feature symmetrically.
        std::vector<double> starts;
        for (double t : u.times)
            if (t >= t_lo - 1e-12 && t <= t_hi - gap + 1e-12) starts.push_back(t);
        if (starts.empty()) starts.push_back(t_lo);
        const std::size_t stride = (starts.size() + opts.max_starts - 1) / opts.max_starts;
        double m0 = 0.0, m1 = 0.0, m2 = 0.0;
        for (std::size_t j = 0; j < starts.size(); j += stride) {
            const double s = starts[j];
            const Fields a = fields(s);
            const Fields b = fields(s + gap);
            m0 = std::max(m0, diff_norm({a.u}, {b.u}) / gap);
            m1 = std::max(m1, diff_norm(a.grad, b.grad) / std::pow(gap, (1.0 + alpha) / 2.0));
            m2 = std::max(m2, diff_norm(a.hess, b.hess) / std::pow(gap, alpha / 2.0));
        }
        gaps.push_back(gap);
        r0.push_back(m0);
        r1.push_back(m1);
        r2.push_back(m2);
        rep.measured.push_back({"gap=" + fmt(gap) + " u", m0});
        rep.measured.push_back({"gap=" + fmt(gap) + " Du", m1});
        rep.measured.push_back({"gap=" + fmt(gap) + " D2u", m2});
    }
    rep.summary["slope_u"] = envelope_slope(gaps, r0);
    rep.summary["slope_Du"] = envelope_slope(gaps, r1);
    rep.summary["slope_D2u"] = envelope_slope(gaps, r2);
    rep.pass = !gaps.empty();
    for (const auto& [key, slope] : rep.summary) {
        if (!std::isfinite(slope) || slope < -opts.slope_tol) {
            rep.pass = false;
            rep.details.push_back(key + " " + fmt(slope));
        }
    }
    for (double v : r0) rep.pass = rep.pass && std::isfinite(v);
    for (double v : r1) rep.pass = rep.pass && std::isfinite(v);
    for (double v : r2) rep.pass = rep.pass && std::isfinite(v);
    return rep;
}

AuditReport audit_integral_residual(const SpaceTimeFn& u, const OperatorSpec& spec, const ResidualOptions& opts,
                                    const SpaceTimeFunction& source) {
    AuditReport rep;
    rep.name = "integral_residual";
    rep.threshold = opts.threshold;
    const SpaceGrid& grid = u.grid;
    const int d = grid.d;
    const std::size_t nt = u.size();
    if (nt < 2) throw ConfigError("integral_residual needs at least two slices");

    std::vector<std::uint8_t> use(grid.size(), 0);
    NormOptions win;
    win.window = opts.window;
    for (std::size_t i = 0; i < grid.size(); ++i)
        use[i] = !grid.near_boundary(i, opts.boundary_layers) && win.admits(grid, i);

    // G_k = f - L u at every stored slice, centered stencils.
    std::vector<Eigen::VectorXd> G(nt);
    for (std::size_t k = 0; k < nt; ++k) {
        const double t = u.times[k];
        const GridFn& uk = u.slices[k];
        const auto grad = fd_gradient(uk);
        const auto hess = fd_hessian(uk);
        Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.size()));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (!use[i]) continue;
            const Point x = grid.point(i);
            const CoeffSample cs = sample_coefficients(spec, t, x);
            double lu = -cs.c * uk[i];
            for (int p = 0; p < d; ++p) {
                lu += cs.b(p) * grad[p][i];
                for (int q = 0; q < d; ++q) lu += cs.a(p, q) * hess[p * d + q][i];
            }
            const double f = source ? source(t, x) : cs.f;
            g[static_cast<Eigen::Index>(i)] = f - lu;
        }
        G[k] = std::move(g);
    }
    // Prefix trapezoid sums.
    std::vector<Eigen::VectorXd> Q(nt);
    Q[0] = Eigen::VectorXd::Zero(G[0].size());
    for (std::size_t k = 1; k < nt; ++k) Q[k] = Q[k - 1] + 0.5 * (u.times[k] - u.times[k - 1]) * (G[k] + G[k - 1]);

    const double scale = std::max(slice_sup(u), std::numeric_limits<double>::min());
    double worst = 0.0;
    std::string where;
    for (int span = 1; span <= std::max(1, opts.max_span); span *= 2) {
        double m = 0.0;
        for (std::size_t k = 0; k + static_cast<std::size_t>(span) < nt; ++k) {
            const std::size_t j = k + static_cast<std::size_t>(span);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                if (!use[i]) continue;
                const auto ii = static_cast<Eigen::Index>(i);
                const double r = std::abs(u.slices[j][i] - u.slices[k][i] - (Q[j][ii] - Q[k][ii]));
                if (r > m) m = r;
                if (r > worst) {
                    worst = r;
                    where = "s=" + fmt(u.times[k]) + " t=" + fmt(u.times[j]) + " node " + std::to_string(i);
                }
            }
        }
        rep.measured.push_back({"span=" + std::to_string(span), m / scale});
    }
    rep.summary["relative_residual"] = worst / scale;
    rep.pass = worst / scale <= opts.threshold;
    if (!where.empty()) rep.details.push_back("worst at " + where);
    return rep;
}

double model_ratio(const SpaceTimeFn& u, const SpaceTimeFn& F, double alpha, const std::vector<std::size_t>& at_slices) {
    const std::size_t nt = u.size();
    if (F.size() != nt) throw ConfigError("model_ratio: forcing and solution slices differ");
    // suffix[k] = max_{j > k} [F_j]_alpha
    std::vector<double> suffix(nt, 0.0);
    double run = 0.0;
    for (std::size_t k = nt; k-- > 0;) {
        suffix[k] = run;
        run = std::max(run, holder_seminorm(F.slices[k], alpha));
    }
    std::vector<std::size_t> ks = at_slices;
    if (ks.empty())
        for (std::size_t k = 0; k + 1 < nt; ++k) ks.push_back(k);
    double best = 0.0;
    for (std::size_t k : ks) {
        if (k + 1 >= nt) throw ConfigError("model_ratio: slice has no later forcing");
        const double num = seminorm_2alpha(u.slices[k], alpha);
        if (num == 0.0) continue;
        if (suffix[k] == 0.0) return std::numeric_limits<double>::infinity();
        best = std::max(best, num / suffix[k]);
    }
    return best;
}

AuditReport audit_gauge_independence(const TimeMatrixPath& model, const SpaceTimeFn& w, const SpaceTimeFn& F,
                                     double alpha, const GaugeOptions& opts) {
    AuditReport rep;
    rep.name = "gauge_independence";
    rep.threshold = opts.monotone_tol;
    rep.pass = true;
    if (!w.has_dt()) throw ConfigError("gauge audit needs time derivatives of the model solution");
    if (model.d() != w.grid.d) throw ConfigError("gauge audit: dimension mismatch");
    const std::size_t nt = w.size();
    const double base = model_ratio(w, F, alpha, opts.at_slices);
    rep.measured.push_back({"b0=0 c0=0", base});

    for (const SmallVec& b0 : opts.b0_levels) {
        std::string tag = "b0=(";
        for (int k = 0; k < b0.size(); ++k) tag += (k ? "," : "") + fmt(b0(k));
        tag += ")";
        SpaceTimeFn u = w, Fu = F;
        bool exact = true;
        for (std::size_t k = 0; k < nt; ++k) {
            const SmallVec shift = -b0 * w.times[k];
            const auto grad = fd_gradient(w.slices[k]);
            GridFn wt = w.dt_slices[k];
            for (std::size_t i = 0; i < w.grid.size(); ++i)
                for (int p = 0; p < b0.size(); ++p) wt[i] -= b0(p) * grad[p][i];
            const ShiftedField su = shift_field(w.slices[k], shift);
            exact = exact && su.exact;
            u.slices[k] = su.values;
            u.dt_slices[k] = shift_field(wt, shift).values;
            Fu.slices[k] = shift_field(F.slices[k], shift).values;
        }
        if (!exact) {
            rep.pass = false;
            rep.details.push_back(tag + ": translation is not grid aligned");
        }
        const double r = model_ratio(u, Fu, alpha, opts.at_slices);
        rep.measured.push_back({tag, r});
        if (r != base) {
            rep.pass = false;
            rep.details.push_back(tag + ": ratio " + fmt(r) + " differs from " + fmt(base));
        }
        const GaugeTranslation back = gauge_translate(u, [b0](double) { return b0; });
        for (std::size_t k = 0; k < nt && exact; ++k) {
            for (std::size_t i = 0; i < w.grid.size(); ++i) {
                if (!back.valid[k][i]) continue;
                if (back.v.slices[k][i] != w.slices[k][i]) {
                    rep.pass = false;
                    rep.details.push_back(tag + ": translate does not recover the model solution");
                    k = nt;
                    break;
                }
            }
        }
    }

    double worst_exp = 0.0;
    for (double c0 : opts.c0_levels) {
        if (c0 < 0.0) throw ConfigError("c0 levels must be nonnegative");
        const std::string tag = "c0=" + fmt(c0);
        SpaceTimeFn u = w, G = F;
        for (std::size_t k = 0; k < nt; ++k) {
            const double eC = std::exp(c0 * w.times[k]);
            u.slices[k].values = eC * w.slices[k].values;
            u.dt_slices[k].values = eC * (w.dt_slices[k].values + c0 * w.slices[k].values);
            G.slices[k].values = eC * F.slices[k].values;
        }
        const double r = model_ratio(u, G, alpha, opts.at_slices);
        rep.measured.push_back({tag, r});
        if (r > base * (1.0 + opts.monotone_tol)) {
            rep.pass = false;
            rep.details.push_back(tag + ": ratio " + fmt(r) + " exceeds c0 = 0 ratio " + fmt(base));
        }
        const GaugeExp ge = gauge_exp(u, [c0](double) { return c0; });
        for (std::size_t k = 0; k < nt; ++k) {
            const double su = seminorm_2alpha(u.slices[k], alpha);
            if (su == 0.0) continue;
            const double sv = seminorm_2alpha(ge.v.slices[k], alpha);
            const double rel = std::abs(sv - std::exp(-ge.C[k]) * su) / (std::exp(-ge.C[k]) * su);
            worst_exp = std::max(worst_exp, rel);
        }
    }
    rep.summary["exp_gauge_rel_error"] = worst_exp;
    if (worst_exp > opts.exp_tol) {
        rep.pass = false;
        rep.details.push_back("exponential gauge scaling off by " + fmt(worst_exp));
    }
    return rep;
}

AuditReport audit_embedding(const SpaceTimeFn& u, double alpha, const EmbeddingAuditOptions& opts) {
    AuditReport rep;
    rep.name = "embedding";
    rep.threshold = opts.slope_tol;
    const auto rows = embedding_check(u, alpha, opts.t, opts.x, opts.h_list, opts.norm);
    std::vector<double> hs, r1, r2;
    for (const auto& r : rows) {
        hs.push_back(r.h);
        r1.push_back(r.r1);
        r2.push_back(r.r2);
        rep.measured.push_back({"h=" + fmt(r.h) + " r1", r.r1});
        rep.measured.push_back({"h=" + fmt(r.h) + " r2", r.r2});
    }
    rep.summary["slope_r1"] = envelope_slope(hs, r1);
    rep.summary["slope_r2"] = envelope_slope(hs, r2);
    rep.pass = true;
    for (const auto& [key, slope] : rep.summary) {
        if (!std::isfinite(slope) || std::abs(slope) > opts.slope_tol) {
            rep.pass = false;
            rep.details.push_back(key + " " + fmt(slope));
        }
    }
    for (const auto& r : rows)
        if (!std::isfinite(r.r1) || !std::isfinite(r.r2)) rep.pass = false;
    return rep;
}

}  // namespace schauder
