#include "schauderlab/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "schauder/errors.hpp"

using nlohmann::json;
using schauder::ConfigError;

namespace schauderlab {

namespace {

std::string type_name(const json& j) { return j.type_name(); }

// Reads keys of one JSON object and rejects anything it did not ask for.
class Section {
public:
    Section(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    template <class T>
    T get(const std::string& key, T fallback) {
        seen_.insert(key);
        if (!j_.contains(key)) return fallback;
        return convert<T>(j_.at(key), key);
    }

    template <class T>
    T require(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key)) throw ConfigError(where_ + ": missing key '" + key + "'");
        return convert<T>(j_.at(key), key);
    }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }

    void finish() const {
        for (const auto& [k, v] : j_.items())
            if (!seen_.count(k)) throw ConfigError(where_ + ": unknown key '" + k + "'");
    }

    std::string at(const std::string& key) const { return where_ + "." + key; }

private:
    template <class T>
    T convert(const json& v, const std::string& key) const {
        bool ok = true;
        if constexpr (std::is_same_v<T, bool>)
            ok = v.is_boolean();
        else if constexpr (std::is_integral_v<T>)
            ok = v.is_number_integer() || v.is_number_unsigned();
        else if constexpr (std::is_floating_point_v<T>)
            ok = v.is_number();
        else if constexpr (std::is_same_v<T, std::string>)
            ok = v.is_string();
        if (!ok) throw ConfigError(at(key) + ": unexpected " + type_name(v));
        try {
            return v.get<T>();
        } catch (const json::exception&) {
            throw ConfigError(at(key) + ": unexpected " + type_name(v));
        }
    }

    const json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

void positive(double v, const std::string& what) {
    if (!(v > 0.0)) throw ConfigError(what + " must be positive");
}

Mode parse_mode(const std::string& s) {
    if (s == "cauchy") return Mode::Cauchy;
    if (s == "degenerate") return Mode::Degenerate;
    if (s == "continuation") return Mode::Continuation;
    if (s == "elliptic") return Mode::Elliptic;
    if (s == "semigroup") return Mode::Semigroup;
    throw ConfigError("problem.mode: unknown mode '" + s + "'");
}

schauder::BoundaryMode parse_boundary(const std::string& s) {
    if (s == "dirichlet-final") return schauder::BoundaryMode::DirichletFinal;
    if (s == "dirichlet-zero") return schauder::BoundaryMode::DirichletZero;
    if (s == "ode") return schauder::BoundaryMode::Ode;
    throw ConfigError("solver.boundary_mode: unknown mode '" + s + "'");
}

ProblemConfig parse_problem(const json& j) {
    Section s(j, "problem");
    ProblemConfig p;
    p.mode = parse_mode(s.get<std::string>("mode", "cauchy"));
    auto& t = p.text;
    t.d = s.get<int>("d", 1);
    if (t.d < 1 || t.d > 3) throw ConfigError("d out of 1..3");
    t.alpha = s.get<double>("alpha", 0.5);
    if (!(t.alpha > 0.0 && t.alpha < 1.0)) throw ConfigError("alpha out of (0,1)");
    t.T = s.get<double>("T", -1.0);
    t.S = s.get<double>("S", 0.0);
    if (!(t.T < t.S)) throw ConfigError("T must be below S");
    const auto d = static_cast<std::size_t>(t.d);
    t.a.assign(d, std::vector<std::string>(d, "0"));
    for (std::size_t i = 0; i < d; ++i) t.a[i][i] = "1";
    if (s.has("a")) {
        t.a = s.get<std::vector<std::vector<std::string>>>("a", {});
        if (t.a.size() != d || std::any_of(t.a.begin(), t.a.end(), [&](const auto& r) { return r.size() != d; }))
            throw ConfigError("problem.a must be d x d");
    }
    t.b = s.get<std::vector<std::string>>("b", std::vector<std::string>(d, "0"));
    if (t.b.size() != d) throw ConfigError("problem.b must have d entries");
    t.c = s.get<std::string>("c", "1");
    t.f = s.get<std::string>("f", "0");
    t.t_breakpoints = s.get<std::vector<double>>("t_breakpoints", {});
    p.g = s.get<std::string>("g", "0");
    p.semigroup_time = s.get<double>("semigroup_time", 1.0);
    if (!(p.semigroup_time >= 0.0)) throw ConfigError("problem.semigroup_time must be >= 0");
    p.parameters = s.get<std::map<std::string, double>>("parameters", {});
    s.finish();
    return p;
}

GridConfig parse_grid(const json& j) {
    Section s(j, "grid");
    GridConfig g;
    g.radius = s.get<double>("radius", g.radius);
    g.points = s.get<int>("points", g.points);
    g.time_steps = s.get<int>("time_steps", g.time_steps);
    s.finish();
    positive(g.radius, "grid.radius");
    if (g.points < 5) throw ConfigError("grid.points must be at least 5");
    if (g.time_steps < 1) throw ConfigError("grid.time_steps must be at least 1");
    return g;
}

SolverConfig parse_solver(const json& j) {
    Section s(j, "solver");
    SolverConfig c;
    c.scheme.theta = s.get<double>("theta", c.scheme.theta);
    if (c.scheme.theta < 0.5 || c.scheme.theta > 1.0) throw ConfigError("solver.theta out of [0.5,1]");
    c.scheme.full_upwind = s.get<bool>("full_upwind", c.scheme.full_upwind);
    c.scheme.rannacher_steps = s.get<int>("rannacher_steps", c.scheme.rannacher_steps);
    c.scheme.solver_tol = s.get<double>("solver_tol", c.scheme.solver_tol);
    c.boundary = parse_boundary(s.get<std::string>("boundary_mode", "dirichlet-final"));
    c.continuation.lambda_step = s.get<double>("lambda_step", c.continuation.lambda_step);
    c.continuation.picard_tol = s.get<double>("picard_tol", c.continuation.picard_tol);
    c.continuation.max_picard = s.get<int>("max_picard", c.continuation.max_picard);
    c.continuation.delta = s.get<double>("continuation_delta", c.continuation.delta);
    c.tol_stat = s.get<double>("tol_stat", c.tol_stat);
    c.max_horizon = s.get<double>("max_horizon", c.max_horizon);
    c.semigroup_dt = s.get<double>("semigroup_dt", c.semigroup_dt);
    s.finish();
    positive(c.scheme.solver_tol, "solver.solver_tol");
    if (!(c.continuation.lambda_step > 0.0 && c.continuation.lambda_step <= 1.0))
        throw ConfigError("solver.lambda_step out of (0,1]");
    positive(c.continuation.picard_tol, "solver.picard_tol");
    positive(c.continuation.delta, "solver.continuation_delta");
    positive(c.tol_stat, "solver.tol_stat");
    positive(c.max_horizon, "solver.max_horizon");
    positive(c.semigroup_dt, "solver.semigroup_dt");
    return c;
}

schauder::HypothesisSampling parse_sampling(const json& j) {
    Section s(j, "hypotheses");
    schauder::HypothesisSampling h;
    h.box_radius = s.get<double>("box_radius", h.box_radius);
    h.n_space = s.get<int>("n_space", h.n_space);
    h.n_time = s.get<int>("n_time", h.n_time);
    h.n_pairs = s.get<int>("n_pairs", h.n_pairs);
    h.max_dist = s.get<double>("max_dist", h.max_dist);
    h.quotient_cap = s.get<double>("quotient_cap", h.quotient_cap);
    s.finish();
    positive(h.box_radius, "hypotheses.box_radius");
    if (h.n_space < 2 || h.n_time < 2 || h.n_pairs < 1) throw ConfigError("hypotheses: sample counts too small");
    positive(h.max_dist, "hypotheses.max_dist");
    return h;
}

std::vector<double> positive_list(Section& s, const std::string& key, std::vector<double> fallback) {
    auto v = s.get<std::vector<double>>(key, std::move(fallback));
    if (v.empty()) throw ConfigError(s.at(key) + " must not be empty");
    for (double x : v) positive(x, s.at(key));
    return v;
}

AuditParams parse_audit(const std::string& name, Section& s, const ProblemConfig& p, int d) {
    if (name == "max_principle") {
        MaxPrincipleParams m;
        m.threshold = s.get<double>("threshold", m.threshold);
        m.random_specs = s.get<int>("random_specs", 0);
        if (m.random_specs < 0) throw ConfigError(s.at("random_specs") + " must be >= 0");
        return m;
    }
    if (name == "schauder") {
        SchauderParams m;
        m.threshold = s.get<double>("threshold", m.threshold);
        m.window = s.get<double>("window", 0.0);
        m.parameter = s.get<std::string>("parameter", m.parameter);
        m.values = s.require<std::vector<double>>("values");
        if (m.values.size() < 2) throw ConfigError(s.at("values") + " needs at least two entries");
        m.family = s.get<std::vector<std::string>>("family", {});
        return m;
    }
    if (name == "time_holder") {
        TimeHolderParams m;
        auto& o = m.opts;
        o.slope_tol = s.get<double>("threshold", o.slope_tol);
        o.t_lo = s.get<double>("t_lo", p.text.T);
        o.t_hi = s.get<double>("t_hi", p.text.S);
        o.ball_radius = s.get<double>("ball_radius", o.ball_radius);
        o.gaps = positive_list(s, "gaps", o.gaps);
        if (!(o.t_lo < o.t_hi)) throw ConfigError("time_holder: t_lo must be below t_hi");
        return m;
    }
    if (name == "integral_residual") {
        ResidualParams m;
        auto& o = m.opts;
        o.threshold = s.get<double>("threshold", o.threshold);
        o.boundary_layers = s.get<int>("boundary_layers", o.boundary_layers);
        o.window = s.get<double>("window", o.window);
        o.max_span = s.get<int>("max_span", o.max_span);
        if (o.max_span < 1) throw ConfigError(s.at("max_span") + " must be >= 1");
        return m;
    }
    if (name == "gauge_independence") {
        GaugeParams m;
        auto& o = m.opts;
        o.exp_tol = s.get<double>("threshold", o.exp_tol);
        o.monotone_tol = s.get<double>("monotone_tol", o.monotone_tol);
        o.c0_levels = s.get<std::vector<double>>("c0_levels", o.c0_levels);
        m.b0_cells = s.get<std::vector<std::vector<int>>>("b0_cells", {});
        for (const auto& b : m.b0_cells)
            if (static_cast<int>(b.size()) != d) throw ConfigError(s.at("b0_cells") + ": each entry needs d integers");
        m.support = s.get<double>("support", m.support);
        m.slices = s.get<int>("slices", m.slices);
        positive(m.support, s.at("support"));
        if (m.slices < 2) throw ConfigError(s.at("slices") + " must be >= 2");
        return m;
    }
    if (name == "localization") {
        LocalizationParams m;
        auto& o = m.opts;
        o.residual_tol = s.get<double>("threshold", o.residual_tol);
        o.slope_tol = s.get<double>("slope_tol", o.slope_tol);
        o.eps_list = positive_list(s, "eps_list", o.eps_list);
        if (o.eps_list.size() < 2) throw ConfigError(s.at("eps_list") + " needs at least two entries");
        o.t_lo = s.get<double>("t_lo", p.text.T);
        o.t_hi = s.get<double>("t_hi", p.text.S);
        o.window = s.get<double>("window", o.window);
        if (!(o.t_lo < o.t_hi)) throw ConfigError("localization: t_lo must be below t_hi");
        return m;
    }
    if (name == "embedding") {
        EmbeddingParams m;
        auto& o = m.opts;
        o.slope_tol = s.get<double>("threshold", o.slope_tol);
        o.t = s.get<double>("t", p.text.S);
        const auto x = s.get<std::vector<double>>("x", std::vector<double>(static_cast<std::size_t>(d), 0.0));
        if (static_cast<int>(x.size()) != d) throw ConfigError(s.at("x") + " must have d entries");
        std::copy(x.begin(), x.end(), o.x.begin());
        o.h_list = positive_list(s, "h_list", o.h_list);
        o.norm.window = s.get<double>("window", 0.0);
        return m;
    }
    throw ConfigError("unknown audit '" + name + "'");
}

}  // namespace

const std::vector<std::string>& known_audits() {
    static const std::vector<std::string> names = {"embedding",         "gauge_independence", "integral_residual",
                                                   "localization",      "max_principle",      "schauder",
                                                   "time_holder"};
    return names;
}

bool needs_time_solution(const std::string& audit) {
    return audit == "max_principle" || audit == "time_holder" || audit == "integral_residual" ||
           audit == "localization" || audit == "embedding";
}

std::string substitute(const std::string& text, const std::map<std::string, double>& values) {
    std::string out = text;
    for (const auto& [name, value] : values) {
        const std::string key = "{" + name + "}";
        char buf[64];
        std::snprintf(buf, sizeof buf, "(%.17g)", value);
        for (std::size_t pos = out.find(key); pos != std::string::npos; pos = out.find(key, pos))
            out.replace(pos, key.size(), buf);
    }
    return out;
}

schauder::OperatorSpec build_problem_spec(const ProblemConfig& p, const std::map<std::string, double>& values,
                                          const std::string* f_override) {
    std::map<std::string, double> all = p.parameters;
    for (const auto& [k, v] : values) all[k] = v;
    schauder::OperatorText t = p.text;
    for (auto& row : t.a)
        for (auto& e : row) e = substitute(e, all);
    for (auto& e : t.b) e = substitute(e, all);
    t.c = substitute(t.c, all);
    t.f = substitute(f_override ? *f_override : t.f, all);
    return schauder::build_spec(t);
}

RunConfig parse_config(const json& j) {
    Section top(j, "config");
    RunConfig cfg;
    cfg.echo = j;
    cfg.schema_version = top.require<int>("schema_version");
    if (cfg.schema_version != kSchemaVersion)
        throw ConfigError("schema_version " + std::to_string(cfg.schema_version) + " is not supported");
    cfg.problem = parse_problem(top.require<json>("problem"));
    if (top.has("grid")) cfg.grid = parse_grid(top.raw("grid"));
    if (top.has("solver")) cfg.solver = parse_solver(top.raw("solver"));
    cfg.truncation = top.get<int>("truncation", 0);
    if (cfg.truncation < 0) throw ConfigError("truncation must be >= 0");
    if (top.has("hypotheses")) cfg.sampling = parse_sampling(top.raw("hypotheses"));
    cfg.seed = top.get<std::uint64_t>("seed", 0);
    if (top.has("output")) {
        Section o(top.raw("output"), "output");
        cfg.output.report = o.get<std::string>("report", cfg.output.report);
        cfg.output.csv = o.get<std::string>("csv", cfg.output.csv);
        cfg.output.plot = o.get<std::string>("plot", cfg.output.plot);
        o.finish();
    }

    // Expressions are parsed here so a typo never reaches a solve.
    const schauder::OperatorSpec spec = build_problem_spec(cfg.problem);
    if (cfg.problem.g != "0") {
        const schauder::Expr g = schauder::parse_expr(substitute(cfg.problem.g, cfg.problem.parameters));
        if (g.uses_time()) throw ConfigError("problem.g must not depend on t");
    }
    const Mode mode = cfg.problem.mode;
    if (mode == Mode::Elliptic && !spec.time_independent())
        throw ConfigError("elliptic mode needs time-independent data");
    if (mode == Mode::Semigroup && !spec.time_independent())
        throw ConfigError("semigroup mode needs time-independent coefficients");

    std::set<std::string> names;
    if (top.has("suites")) {
        const json& suites = top.raw("suites");
        if (!suites.is_array()) throw ConfigError("suites must be an array");
        for (std::size_t i = 0; i < suites.size(); ++i) {
            Section s(suites[i], "suites[" + std::to_string(i) + "]");
            const std::string name = s.require<std::string>("name");
            const auto& known = known_audits();
            if (std::find(known.begin(), known.end(), name) == known.end())
                throw ConfigError("unknown audit '" + name + "'");
            if (!names.insert(name).second) throw ConfigError("audit '" + name + "' listed twice");
            const bool timed = mode == Mode::Cauchy || mode == Mode::Degenerate || mode == Mode::Continuation;
            if (needs_time_solution(name) && !timed)
                throw ConfigError("audit '" + name + "' needs a cauchy, degenerate or continuation solve");
            AuditParams params = parse_audit(name, s, cfg.problem, cfg.problem.text.d);
            s.finish();
            if (auto* sp = std::get_if<SchauderParams>(&params)) {
                for (double v : sp->values) build_problem_spec(cfg.problem, {{sp->parameter, v}});
                for (const auto& f : sp->family) build_problem_spec(cfg.problem, {}, &f);
            }
            if (name == "gauge_independence" && !spec.a_space_independent())
                throw ConfigError("gauge_independence needs an x-independent a");
            cfg.suites.push_back({name, std::move(params)});
        }
    }
    top.finish();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

}  // namespace schauderlab
