#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace schauderlab {

enum class Verb { Check, Solve, Audit, All };

enum ExitCode : int { kOk = 0, kAuditFailed = 2, kConfigError = 3, kNumericalError = 4 };

struct RunOptions {
    Verb verb = Verb::All;
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    /// Hypothesis violations become config errors.
    bool strict = false;
};

struct RunOutcome {
    int exit_code = kOk;
    nlohmann::json report;
};

/// Runs the verb and writes the report (always), the CSV (solve, audit with a
/// time-dependent solve, all) and the plot script (all) into out_dir.
RunOutcome execute(const RunOptions& opts);

inline int run(const RunOptions& opts) { return execute(opts).exit_code; }

}  // namespace schauderlab
