#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "schauder/hypotheses.hpp"
#include "schauder/operator_spec.hpp"
#include "schauder/solver.hpp"
#include "schauder/verify.hpp"

namespace schauderlab {

inline constexpr int kSchemaVersion = 1;

enum class Mode { Cauchy, Degenerate, Continuation, Elliptic, Semigroup };

struct ProblemConfig {
    Mode mode = Mode::Cauchy;
    schauder::OperatorText text;
    std::string g = "0";
    double semigroup_time = 1.0;
    /// Values substituted for "{name}" placeholders in every expression.
    std::map<std::string, double> parameters;
};

struct GridConfig {
    double radius = 4.0;
    int points = 129;
    int time_steps = 64;
};

struct SolverConfig {
    schauder::SchemeOptions scheme;
    schauder::BoundaryMode boundary = schauder::BoundaryMode::DirichletFinal;
    schauder::ContinuationOptions continuation;
    double tol_stat = 1e-8;
    double max_horizon = 200.0;
    double semigroup_dt = 1.0 / 64.0;
};

struct MaxPrincipleParams {
    double threshold = 1.01;
    int random_specs = 0;
};

struct SchauderParams {
    double threshold = 2.0;
    double window = 0.0;
    std::string parameter = "beta";
    std::vector<double> values;
    /// Right-hand sides; each sweep point is scored by the worst one. Empty: problem f.
    std::vector<std::string> family;
};

struct TimeHolderParams {
    schauder::TimeHolderOptions opts;
};

struct ResidualParams {
    schauder::ResidualOptions opts;
};

/// Runs on a compactly supported model solution built from the problem's a(t).
struct GaugeParams {
    schauder::GaugeOptions opts;
    std::vector<std::vector<int>> b0_cells;  // grid cells per slice along each axis
    double support = 1.0;
    int slices = 8;
};

struct LocalizationParams {
    schauder::LocalizationOptions opts;
};

struct EmbeddingParams {
    schauder::EmbeddingAuditOptions opts;
};

using AuditParams = std::variant<MaxPrincipleParams, SchauderParams, TimeHolderParams, ResidualParams, GaugeParams,
                                 LocalizationParams, EmbeddingParams>;

struct SuiteEntry {
    std::string name;
    AuditParams params;
};

struct OutputConfig {
    std::string report = "report.json";
    std::string csv = "solution.csv";
    std::string plot = "plot.gp";
};

struct RunConfig {
    int schema_version = kSchemaVersion;
    ProblemConfig problem;
    GridConfig grid;
    SolverConfig solver;
    int truncation = 0;
    schauder::HypothesisSampling sampling;
    std::vector<SuiteEntry> suites;
    std::uint64_t seed = 0;
    OutputConfig output;
    nlohmann::json echo;
};

const std::vector<std::string>& known_audits();

/// Validates everything, including expression syntax and audit parameters,
/// so that no numerical code runs on a bad config. Throws ConfigError or
/// ParseError.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// The problem spec with every "{name}" placeholder replaced by value.
/// Placeholder values override p.parameters; f_override replaces p.text.f.
schauder::OperatorSpec build_problem_spec(const ProblemConfig& p, const std::map<std::string, double>& values = {},
                                          const std::string* f_override = nullptr);
std::string substitute(const std::string& text, const std::map<std::string, double>& values);

bool needs_time_solution(const std::string& audit);

}  // namespace schauderlab
