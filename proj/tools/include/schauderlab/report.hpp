#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "schauder/grid.hpp"
#include "schauder/hypotheses.hpp"
#include "schauder/solver.hpp"
#include "schauder/verify.hpp"

namespace schauderlab {

nlohmann::json to_json(const schauder::HypothesisReport& h, std::size_t max_violations = 20);
nlohmann::json to_json(const schauder::AuditReport& a);

/// Shortest decimal that reads back to the same double.
std::string shortest(double v);

/// One row per (time, node): t, x1..xd, u, ut, |Du|, trace(D^2u). ut comes
/// from dt_slices when present, otherwise from neighbouring slices (0 for a
/// single slice).
void emit_csv(const schauder::SpaceTimeFn& u, const std::string& path);
void emit_csv(const schauder::SolveResult& result, const std::string& path);

/// gnuplot script with (i) N_emp against the sweep parameter, (ii) embedding
/// ratios against h on log-log axes, (iii) solution slices read from the CSV
/// named in solves[0].csv, relative to the script's directory. Panels without
/// data are left out.
void emit_plot_script(const nlohmann::json& report, const std::string& path);

}  // namespace schauderlab
