#include "schauderlab/app.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <random>

#include "schauder/errors.hpp"
#include "schauder/expr.hpp"
#include "schauder/holder.hpp"
#include "schauder/hypotheses.hpp"
#include "schauder/kernel.hpp"
#include "schauder/solver.hpp"
#include "schauder/verify.hpp"
#include "schauderlab/config.hpp"
#include "schauderlab/report.hpp"

using nlohmann::json;
using namespace schauder;

namespace schauderlab {

namespace {

std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Cauchy: return "cauchy";
        case Mode::Degenerate: return "degenerate";
        case Mode::Continuation: return "continuation";
        case Mode::Elliptic: return "elliptic";
        case Mode::Semigroup: return "semigroup";
    }
    return "?";
}

bool time_dependent(Mode m) { return m == Mode::Cauchy || m == Mode::Degenerate || m == Mode::Continuation; }

GridFn sample_final(const RunConfig& cfg, const SpaceGrid& grid, const std::map<std::string, double>& values = {}) {
    std::map<std::string, double> all = cfg.problem.parameters;
    for (const auto& [k, v] : values) all[k] = v;
    const Expr g = parse_expr(substitute(cfg.problem.g, all));
    const double S = cfg.problem.text.S;
    const auto d = static_cast<std::size_t>(grid.d);
    return sample(grid, [&](const Point& x) { return eval_field(g, S, std::span<const double>(x.data(), d)); });
}

SpaceGrid main_grid(const RunConfig& cfg) { return SpaceGrid(cfg.problem.text.d, cfg.grid.radius, cfg.grid.points); }

SolveResult solve_timed(const RunConfig& cfg, const OperatorSpec& spec, const GridFn& g) {
    CauchyProblem p;
    p.spec = spec;
    p.grid = g.grid;
    p.g = g;
    p.n_time = cfg.grid.time_steps;
    p.n_trunc = cfg.truncation;
    p.boundary_mode = cfg.solver.boundary;
    p.scheme = cfg.solver.scheme;
    switch (cfg.problem.mode) {
        case Mode::Degenerate: return solve_degenerate_c(p);
        case Mode::Continuation: return continuation_solve(p, cfg.solver.continuation);
        default: return solve_cauchy(p);
    }
}

// Spec the solution actually satisfies (coefficients truncated when asked).
OperatorSpec effective_spec(const RunConfig& cfg, const OperatorSpec& spec) {
    return cfg.truncation > 0 ? truncate_coeffs(spec, cfg.truncation) : spec;
}

json plot_times(const SpaceTimeFn& u) {
    json t = json::array();
    const std::size_t n = u.size();
    const std::size_t picks = std::min<std::size_t>(n, 5);
    std::size_t last = n;
    for (std::size_t i = 0; i < picks; ++i) {
        const std::size_t k = picks == 1 ? 0 : i * (n - 1) / (picks - 1);
        if (k != last) t.push_back(u.times[k]);
        last = k;
    }
    return t;
}

struct MainSolve {
    SpaceTimeFn u;
    GridFn g;
    json info;
};

MainSolve main_solve(const RunConfig& cfg, const OperatorSpec& spec) {
    MainSolve m;
    const SpaceGrid grid = main_grid(cfg);
    m.g = sample_final(cfg, grid);
    json& info = m.info;
    info["mode"] = mode_name(cfg.problem.mode);
    info["d"] = grid.d;
    info["points"] = grid.n;
    info["h"] = grid.h();
    if (time_dependent(cfg.problem.mode)) {
        SolveResult r = solve_timed(cfg, spec, m.g);
        info["time_slices"] = r.u.size();
        info["linear_iterations"] = r.iterations;
        info["max_linear_residual"] = r.max_linear_residual;
        info["boundary_influence"] = r.boundary_influence;
        info["barrier_N0"] = r.barrier_N0;
        info["picard_iterations"] = r.picard_iterations;
        info["contraction"] = r.contraction;
        json diag = json::object();
        for (const auto& [k, v] : r.diagnostics) diag[k] = std::isfinite(v) ? json(v) : json(shortest(v));
        info["diagnostics"] = std::move(diag);
        m.u = std::move(r.u);
    } else {
        m.u.grid = grid;
        if (cfg.problem.mode == Mode::Elliptic) {
            EllipticOptions eo;
            eo.boundary_mode = cfg.solver.boundary;
            eo.tol_stat = cfg.solver.tol_stat;
            eo.max_horizon = cfg.solver.max_horizon;
            eo.steps_per_unit = cfg.grid.time_steps;
            eo.scheme = cfg.solver.scheme;
            const EllipticResult e = solve_elliptic(effective_spec(cfg, spec), grid, eo);
            info["route_gap"] = e.route_gap;
            info["horizon"] = e.horizon;
            info["stationary"] = e.stationary;
            m.u.times = {spec.S};
            m.u.slices = {e.direct};
        } else {
            const double t = cfg.problem.semigroup_time;
            m.u.times = {t};
            m.u.slices = {semigroup_T(effective_spec(cfg, spec), m.g, t, cfg.solver.semigroup_dt, cfg.solver.boundary)};
            info["semigroup_time"] = t;
        }
        info["time_slices"] = 1;
    }
    info["sup_u"] = m.u.sup();
    info["plot_times"] = plot_times(m.u);
    return m;
}

// ---- audits ----

struct Context {
    const RunConfig* cfg = nullptr;
    const OperatorSpec* spec = nullptr;
    const HypothesisReport* hyp = nullptr;
    const MainSolve* main = nullptr;
};

struct AuditResult {
    AuditReport report;
    json series;
};

std::string num(double v) { return "(" + shortest(v) + ")"; }

AuditResult max_principle(const Context& c, const MaxPrincipleParams& p) {
    const RunConfig& cfg = *c.cfg;
    std::vector<SolveResult> store;
    store.reserve(static_cast<std::size_t>(p.random_specs));
    std::vector<MaxPrincipleCase> cases = {{"problem", &c.main->u, *c.hyp, c.main->g.sup()}};
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const int d = cfg.problem.text.d;
    for (int i = 0; i < p.random_specs; ++i) {
        const double beta = 20.0 * U(rng), delta = 0.5 + 1.5 * U(rng), F0 = 0.5 + U(rng), k = 1.0 + 2.0 * U(rng);
        OperatorText t = cfg.problem.text;
        std::string r2;
        for (int j = 0; j < d; ++j) {
            const std::string xj = "x" + std::to_string(j + 1);
            t.b[static_cast<std::size_t>(j)] = num(U(rng) < 0.5 ? -beta : beta) + "*" + xj;
            r2 += (j ? " + " : "") + xj + "^2";
        }
        t.c = num(delta) + " + " + num(0.5 * U(rng)) + "*sqrt(1 + " + r2 + ")";
        t.f = num(F0) + "*(" + t.c + ")*sin(" + num(k) + "*x1 + t)";
        const double gamp = F0 * U(rng);
        ProblemConfig pc = cfg.problem;
        pc.text = t;
        const OperatorSpec spec = build_problem_spec(pc);
        const GridFn g = sample(main_grid(cfg), [&](const Point& x) { return gamp * std::cos(x[0]); });
        store.push_back(solve_timed(cfg, spec, g));
        cases.push_back({"random " + std::to_string(i), &store.back().u,
                         check_hypotheses(effective_spec(cfg, spec), cfg.sampling), g.sup()});
    }
    return {audit_max_principle(cases, p.threshold), json()};
}

AuditResult schauder_sweep(const Context& c, const SchauderParams& p) {
    const RunConfig& cfg = *c.cfg;
    const double alpha = cfg.problem.text.alpha;
    NormOptions win;
    win.window = p.window;
    std::vector<std::string> family = p.family;
    if (family.empty()) family.push_back(cfg.problem.text.f);
    std::vector<SolveResult> store;
    store.reserve(p.values.size() * family.size());
    std::vector<SchauderCase> cases;
    for (double v : p.values) {
        const std::map<std::string, double> at = {{p.parameter, v}};
        const GridFn g = sample_final(cfg, main_grid(cfg), at);
        const double g_norm = g.sup() > 0.0 ? norm_2alpha(g, alpha, win).norm_2alpha : 0.0;
        double best = -2.0;
        SchauderCase worst;
        for (const auto& f : family) {
            const OperatorSpec spec = build_problem_spec(cfg.problem, at, &f);
            store.push_back(solve_timed(cfg, spec, g));
            const HypothesisReport hyp = check_hypotheses(effective_spec(cfg, spec), cfg.sampling);
            const double n = empirical_schauder(store.back().u, hyp, g_norm, alpha, win);
            // An inconsistent case (n < 0) must surface, so it outranks everything.
            const double rank = n < 0.0 ? std::numeric_limits<double>::infinity() : n;
            if (rank > best) {
                best = rank;
                worst = {p.parameter + "=" + shortest(v), &store.back().u, hyp, g_norm};
            }
        }
        cases.push_back(worst);
    }
    AuditResult r{audit_schauder(cases, alpha, win, p.threshold), json()};
    json ns = json::array();
    for (const auto& m : r.report.measured) ns.push_back(m.value);
    r.series = {{"parameter", p.parameter}, {"values", p.values}, {"N_emp", ns}};
    return r;
}

// (1 - ((z - c)/R)^2)^4 on |z - c| < R.
struct Bump {
    double R, c;
    double s(double z) const { return 1.0 - (z - c) * (z - c) / (R * R); }
    bool in(double z) const { return std::abs(z - c) < R; }
    double v(double z) const { return in(z) ? std::pow(s(z), 4) : 0.0; }
    double d1(double z) const { return in(z) ? -8.0 * std::pow(s(z), 3) * (z - c) / (R * R) : 0.0; }
    double d2(double z) const {
        if (!in(z)) return 0.0;
        const double q = 2.0 * (z - c) / (R * R);
        return 12.0 * s(z) * s(z) * q * q - 8.0 * std::pow(s(z), 3) / (R * R);
    }
};

AuditResult gauge(const Context& c, const GaugeParams& p) {
    const RunConfig& cfg = *c.cfg;
    const SpaceGrid grid = main_grid(cfg);
    const int d = grid.d;
    const double h = grid.h();
    const TimeMatrixPath model = TimeMatrixPath::from_spec(*c.spec);
    // Slices one cell apart in time, on multiples of h so that b0 t is a whole number of cells.
    const long top = std::lround(std::floor(cfg.problem.text.S / h));
    std::vector<double> times;
    for (int k = 0; k <= p.slices; ++k) times.push_back(h * static_cast<double>(top - p.slices + k));
    const double span = times.back() - times.front();
    const Bump phi{span, 0.5 * (times.front() + times.back()) - 0.25 * span};
    const Bump psi{p.support, 0.0};
    SpaceTimeFn w, F;
    w.grid = F.grid = grid;
    w.times = F.times = times;
    for (double t : times) {
        const SmallMat a = model.eval(t);
        GridFn wv(grid), wt(grid), fv(grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Point x = grid.point(i);
            double prod = 1.0;
            for (int k = 0; k < d; ++k) prod *= psi.v(x[static_cast<std::size_t>(k)]);
            double lap = 0.0;
            for (int r = 0; r < d; ++r)
                for (int s = 0; s < d; ++s) {
                    double term = a(r, s);
                    for (int k = 0; k < d; ++k) {
                        const double z = x[static_cast<std::size_t>(k)];
                        const int order = (k == r) + (k == s);
                        term *= order == 0 ? psi.v(z) : order == 1 ? psi.d1(z) : psi.d2(z);
                    }
                    lap += term;
                }
            wv[i] = phi.v(t) * prod;
            wt[i] = phi.d1(t) * prod;
            fv[i] = wt[i] + phi.v(t) * lap;
        }
        w.slices.push_back(std::move(wv));
        w.dt_slices.push_back(std::move(wt));
        F.slices.push_back(std::move(fv));
    }
    GaugeOptions go = p.opts;
    for (const auto& cells : p.b0_cells) {
        SmallVec b(d);
        for (int k = 0; k < d; ++k) b(k) = cells[static_cast<std::size_t>(k)];
        go.b0_levels.push_back(b);
    }
    return {audit_gauge_independence(model, w, F, cfg.problem.text.alpha, go), json()};
}

AuditResult embedding(const Context& c, const EmbeddingParams& p) {
    AuditResult r{audit_embedding(c.main->u, c.cfg->problem.text.alpha, p.opts), json()};
    json r1 = json::array(), r2 = json::array();
    for (std::size_t i = 0; i + 1 < r.report.measured.size(); i += 2) {
        r1.push_back(r.report.measured[i].value);
        r2.push_back(r.report.measured[i + 1].value);
    }
    r.series = {{"h", p.opts.h_list}, {"r1", r1}, {"r2", r2}};
    return r;
}

AuditResult run_audit(const Context& c, const SuiteEntry& e) {
    const double alpha = c.cfg->problem.text.alpha;
    return std::visit(
        [&](const auto& p) -> AuditResult {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, MaxPrincipleParams>) return max_principle(c, p);
            if constexpr (std::is_same_v<P, SchauderParams>) return schauder_sweep(c, p);
            if constexpr (std::is_same_v<P, TimeHolderParams>)
                return {audit_time_holder(c.main->u, alpha, p.opts), json()};
            if constexpr (std::is_same_v<P, ResidualParams>)
                return {audit_integral_residual(c.main->u, effective_spec(*c.cfg, *c.spec), p.opts), json()};
            if constexpr (std::is_same_v<P, GaugeParams>) return gauge(c, p);
            if constexpr (std::is_same_v<P, LocalizationParams>)
                return {audit_localization(effective_spec(*c.cfg, *c.spec), *c.hyp, c.main->u, alpha, p.opts), json()};
            if constexpr (std::is_same_v<P, EmbeddingParams>) return embedding(c, p);
        },
        e.params);
}

json error_json(const char* kind, const std::string& reason) { return {{"kind", kind}, {"reason", reason}}; }

void write_report(const std::filesystem::path& dir, const std::string& name, const json& report) {
    std::ofstream out(dir / name, std::ios::binary);
    if (out) out << report.dump(2) << '\n';
}

}  // namespace

RunOutcome execute(const RunOptions& opts) {
    RunOutcome out;
    json& rep = out.report;
    rep["schema_version"] = kSchemaVersion;
    rep["config_echo"] = nullptr;
    rep["hypotheses"] = nullptr;
    rep["solves"] = json::array();
    rep["audits"] = json::array();
    rep["timestamp"] = timestamp();

    const std::filesystem::path dir(opts.out_dir);
    std::string report_name = OutputConfig{}.report;
    auto fail = [&](int code, const char* kind, const std::string& reason) {
        out.exit_code = code;
        rep["error"] = error_json(kind, reason);
    };

    try {
        std::filesystem::create_directories(dir);
        RunConfig cfg = load_config(opts.config_path);
        report_name = cfg.output.report;
        if (opts.seed) cfg.seed = *opts.seed;
        rep["config_echo"] = cfg.echo;
        rep["seed"] = cfg.seed;

        const OperatorSpec spec = build_problem_spec(cfg.problem);
        const HypothesisReport hyp = check_hypotheses(effective_spec(cfg, spec), cfg.sampling);
        rep["hypotheses"] = to_json(hyp);
        if (opts.strict && !hyp.holds()) {
            fail(kConfigError, "config", "hypotheses violated");
            write_report(dir, report_name, rep);
            return out;
        }

        const bool want_audits = opts.verb == Verb::Audit || opts.verb == Verb::All;
        bool want_solve = opts.verb == Verb::Solve || opts.verb == Verb::All;
        if (want_audits)
            for (const auto& s : cfg.suites) want_solve = want_solve || needs_time_solution(s.name);

        std::optional<MainSolve> main;
        if (want_solve) {
            main = main_solve(cfg, spec);
            main->info["csv"] = cfg.output.csv;
            emit_csv(main->u, (dir / cfg.output.csv).string());
            rep["solves"].push_back(main->info);
        }

        bool all_pass = true;
        if (want_audits) {
            const Context ctx{&cfg, &spec, &hyp, main ? &*main : nullptr};
            std::vector<std::future<AuditResult>> jobs;
            for (const auto& s : cfg.suites)
                jobs.push_back(std::async(std::launch::async, [&ctx, &s] { return run_audit(ctx, s); }));
            std::vector<AuditResult> results;
            for (auto& j : jobs) results.push_back(j.get());
            std::sort(results.begin(), results.end(),
                      [](const AuditResult& a, const AuditResult& b) { return a.report.name < b.report.name; });
            for (const auto& r : results) {
                json a = to_json(r.report);
                if (!r.series.is_null()) a["series"] = r.series;
                rep["audits"].push_back(std::move(a));
                all_pass = all_pass && r.report.pass;
            }
        }
        if (opts.verb == Verb::All) emit_plot_script(rep, (dir / cfg.output.plot).string());
        if (!all_pass) fail(kAuditFailed, "audit", "audit failed");
    } catch (const ParseError& e) {
        fail(kConfigError, "config", e.what());
    } catch (const ConfigError& e) {
        fail(kConfigError, "config", e.what());
    } catch (const DomainError& e) {
        fail(kNumericalError, "numerical", e.what());
    } catch (const NumericalError& e) {
        fail(kNumericalError, "numerical", e.what());
    } catch (const std::filesystem::filesystem_error& e) {
        fail(kConfigError, "config", e.what());
    } catch (const std::exception& e) {
        fail(kNumericalError, "internal", e.what());
    }
    write_report(dir, report_name, rep);
    return out;
}

}  // namespace schauderlab
