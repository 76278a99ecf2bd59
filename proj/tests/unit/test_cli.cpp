#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "schauderlab/app.hpp"
#include "schauderlab/config.hpp"
#include "schauderlab/report.hpp"
#include "schauder/errors.hpp"

using namespace schauderlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("schauderlab_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string config_path(const std::string& name) { return std::string(SCHAUDER_CONFIG_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunOutcome run_json(const nlohmann::json& cfg, const std::string& tag, Verb verb = Verb::All, bool strict = false) {
    const fs::path dir = scratch(tag);
    fs::create_directories(dir);
    const fs::path file = dir / "config.json";
    std::ofstream(file) << cfg.dump();
    RunOptions o;
    o.verb = verb;
    o.config_path = file.string();
    o.out_dir = (dir / "out").string();
    o.strict = strict;
    return execute(o);
}

nlohmann::json heat() {
    return {{"schema_version", 1},
            {"problem", {{"d", 1}, {"T", -1.0}, {"S", 0.0}, {"g", "exp(-x1^2)"}}},
            {"grid", {{"radius", 5.0}, {"points", 81}, {"time_steps", 32}}}};
}

}  // namespace

TEST(Cli, MinimalHeatConfigPasses) {
    RunOptions o;
    o.verb = Verb::All;
    o.config_path = config_path("heat_residual.json");
    o.out_dir = scratch("minimal").string();
    const RunOutcome r = execute(o);
    EXPECT_EQ(r.exit_code, kOk);
    ASSERT_EQ(r.report["audits"].size(), 1u);
    EXPECT_EQ(r.report["audits"][0]["name"], "integral_residual");
    EXPECT_TRUE(r.report["audits"][0]["pass"].get<bool>());
    for (const char* key : {"schema_version", "config_echo", "hypotheses", "solves", "audits", "timestamp"})
        EXPECT_TRUE(r.report.contains(key)) << key;
    EXPECT_TRUE(fs::exists(fs::path(o.out_dir) / "report.json"));
    EXPECT_TRUE(fs::exists(fs::path(o.out_dir) / "solution.csv"));
    EXPECT_TRUE(fs::exists(fs::path(o.out_dir) / "plot.gp"));
}

TEST(Cli, AlphaOutOfRangeIsAConfigError) {
    RunOptions o;
    o.config_path = config_path("alpha_out_of_range.json");
    o.out_dir = scratch("alpha").string();
    const RunOutcome r = execute(o);
    EXPECT_EQ(r.exit_code, kConfigError);
    EXPECT_EQ(r.report["error"]["reason"], "alpha out of (0,1)");
    EXPECT_TRUE(r.report["solves"].empty());
    const auto on_disk = nlohmann::json::parse(slurp(fs::path(o.out_dir) / "report.json"));
    EXPECT_EQ(on_disk["error"]["reason"], "alpha out of (0,1)");
}

TEST(Cli, BetaSweepSpreadWithinTwo) {
    RunOptions o;
    o.verb = Verb::Audit;
    o.config_path = config_path("beta_sweep.json");
    o.out_dir = scratch("sweep").string();
    const RunOutcome r = execute(o);
    EXPECT_EQ(r.exit_code, kOk);
    ASSERT_EQ(r.report["audits"].size(), 1u);
    const auto& a = r.report["audits"][0];
    EXPECT_EQ(a["name"], "schauder");
    EXPECT_LE(a["summary"]["spread"].get<double>(), 2.0);
    EXPECT_EQ(a["series"]["values"].size(), 4u);
}

TEST(Cli, ReportsAreReproducible) {
    auto cfg = heat();
    cfg["suites"] = {{{"name", "max_principle"}, {"random_specs", 2}}, {{"name", "integral_residual"}}};
    cfg["seed"] = 3;
    auto a = run_json(cfg, "repro_a").report;
    auto b = run_json(cfg, "repro_b").report;
    a.erase("timestamp");
    b.erase("timestamp");
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_EQ(slurp(scratch("x").parent_path() / "schauderlab_test_repro_a/out/solution.csv"),
              slurp(scratch("x").parent_path() / "schauderlab_test_repro_b/out/solution.csv"));
}

TEST(Cli, SchemaViolationsNeverReachTheSolver) {
    for (const auto& [key, value] : std::vector<std::pair<std::string, nlohmann::json>>{
             {"bogus", 1}, {"suites", {{{"name", "nope"}}}}, {"grid", {{"points", "many"}}}, {"schema_version", 2}}) {
        auto cfg = heat();
        cfg[key] = value;
        const RunOutcome r = run_json(cfg, "schema");
        EXPECT_EQ(r.exit_code, kConfigError) << key;
        EXPECT_TRUE(r.report["solves"].empty()) << key;
        EXPECT_TRUE(r.report["error"].contains("reason"));
    }
    auto bad_expr = heat();
    bad_expr["problem"]["c"] = "1 +";
    EXPECT_EQ(run_json(bad_expr, "expr").exit_code, kConfigError);
    auto needs_time = heat();
    needs_time["problem"]["mode"] = "elliptic";
    needs_time["suites"] = {{{"name", "time_holder"}}};
    EXPECT_EQ(run_json(needs_time, "mode").exit_code, kConfigError);
}

TEST(Cli, DomainErrorsAreNumericalFailures) {
    auto cfg = heat();
    cfg["problem"]["f"] = "1/x1";
    const RunOutcome r = run_json(cfg, "domain", Verb::Solve);
    EXPECT_EQ(r.exit_code, kNumericalError);
    EXPECT_EQ(r.report["error"]["kind"], "numerical");
}

TEST(Cli, StrictTurnsViolationsIntoConfigErrors) {
    auto cfg = heat();
    cfg["problem"]["c"] = "0";
    EXPECT_EQ(run_json(cfg, "lenient", Verb::Check).exit_code, kOk);
    const RunOutcome r = run_json(cfg, "strict", Verb::Check, true);
    EXPECT_EQ(r.exit_code, kConfigError);
    EXPECT_EQ(r.report["error"]["reason"], "hypotheses violated");
}

TEST(Cli, FailingAuditGivesExitTwo) {
    auto cfg = heat();
    cfg["suites"] = {{{"name", "integral_residual"}, {"threshold", 1e-12}}};
    EXPECT_EQ(run_json(cfg, "fail", Verb::Audit).exit_code, kAuditFailed);
}

TEST(Cli, ParameterPlaceholders) {
    ProblemConfig p;
    p.text.b = {"{beta}*x1"};
    p.text.a = {{"1"}};
    p.parameters = {{"beta", 2.0}};
    EXPECT_EQ(substitute("{beta}*x1 + {beta}", p.parameters), "(2)*x1 + (2)");
    const auto spec = build_problem_spec(p, {{"beta", -0.5}});
    const std::array<double, 1> x = {4.0};
    EXPECT_EQ(spec.b(0).eval(0.0, x), -2.0);
}

TEST(Csv, HeaderRowsAndRoundTrip) {
    schauder::SpaceTimeFn u;
    u.grid = schauder::SpaceGrid(2, 1.0, 5);
    u.times = {0.1, 0.2};
    for (double t : u.times)
        u.slices.push_back(schauder::sample(u.grid, [t](const schauder::Point& x) { return t + x[0] * x[1] / 3.0; }));
    const fs::path dir = scratch("csv");
    fs::create_directories(dir);
    emit_csv(u, (dir / "u.csv").string());
    std::istringstream in(slurp(dir / "u.csv"));
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t,x1,x2,u,ut,abs_Du,trace_D2u");
    int rows = 0;
    double max_err = 0.0;
    while (std::getline(in, line)) {
        ++rows;
        std::vector<double> v;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
        ASSERT_EQ(v.size(), 7u);
        max_err = std::max(max_err, std::abs(v[3] - (v[0] + v[1] * v[2] / 3.0)));
        EXPECT_NEAR(v[4], 1.0, 1e-12);  // ut from neighbouring slices
    }
    EXPECT_EQ(rows, 50);
    EXPECT_LT(max_err, 1e-15);
    EXPECT_EQ(shortest(0.1), "0.1");
    EXPECT_EQ(std::stod(shortest(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(PlotScript, ReferencesTheCsvRelatively) {
    nlohmann::json report = {
        {"audits",
         {{{"name", "schauder"}, {"series", {{"parameter", "beta"}, {"values", {0, 1}}, {"N_emp", {0.5, 0.6}}}}},
          {{"name", "embedding"}, {"series", {{"h", {0.5, 0.25}}, {"r1", {1, 1}}, {"r2", {2, 2}}}}}}},
        {"solves", {{{"csv", "solution.csv"}, {"d", 1}, {"h", 0.1}, {"plot_times", {-1.0, 0.0}}}}}};
    const fs::path dir = scratch("plot");
    fs::create_directories(dir);
    emit_plot_script(report, (dir / "plot.gp").string());
    const std::string s = slurp(dir / "plot.gp");
    EXPECT_NE(s.find("'solution.csv'"), std::string::npos);
    EXPECT_NE(s.find("set logscale xy"), std::string::npos);
    EXPECT_NE(s.find("set xlabel 'beta'"), std::string::npos);
    EXPECT_EQ(s.find(dir.string()), std::string::npos);
}
