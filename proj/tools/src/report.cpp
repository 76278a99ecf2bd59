#include "schauderlab/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "schauder/errors.hpp"
#include "schauder/finite_difference.hpp"

using nlohmann::json;

namespace schauderlab {

std::string shortest(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

// JSON has no inf/nan; keep them readable as strings.
json number(double v) {
    if (std::isfinite(v)) return v;
    return shortest(v);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw schauder::ConfigError("cannot write '" + path + "'");
    return out;
}

}  // namespace

json to_json(const schauder::HypothesisReport& h, std::size_t max_violations) {
    json j;
    j["delta"] = number(h.delta);
    j["K"] = number(h.bigK);
    j["F0"] = number(h.F0);
    j["Falpha"] = number(h.Falpha);
    j["holds"] = h.holds();
    j["violation_count"] = h.violations.size();
    json vs = json::array();
    for (std::size_t i = 0; i < h.violations.size() && i < max_violations; ++i) {
        const auto& v = h.violations[i];
        json e{{"field", v.field}, {"t", number(v.t)}, {"x", v.x}, {"value", number(v.value)}};
        if (!v.y.empty()) e["y"] = v.y;
        vs.push_back(std::move(e));
    }
    j["violations"] = std::move(vs);
    return j;
}

json to_json(const schauder::AuditReport& a) {
    json j;
    j["name"] = a.name;
    j["threshold"] = number(a.threshold);
    j["pass"] = a.pass;
    json m = json::array();
    for (const auto& x : a.measured) m.push_back({{"config", x.config}, {"value", number(x.value)}});
    j["measured"] = std::move(m);
    j["details"] = a.details;
    json s = json::object();
    for (const auto& [k, v] : a.summary) s[k] = number(v);
    j["summary"] = std::move(s);
    return j;
}

void emit_csv(const schauder::SpaceTimeFn& u, const std::string& path) {
    const auto& grid = u.grid;
    const int d = grid.d;
    std::ofstream out = open_out(path);
    out << "t";
    for (int k = 1; k <= d; ++k) out << ",x" << k;
    out << ",u,ut,abs_Du,trace_D2u\n";
    const std::size_t nt = u.size();
    for (std::size_t k = 0; k < nt; ++k) {
        const schauder::GridFn& s = u.slices[k];
        schauder::GridFn ut(grid);
        if (u.has_dt()) {
            ut = u.dt_slices[k];
        } else if (nt > 1) {
            const std::size_t lo = k == 0 ? 0 : k - 1, hi = k + 1 == nt ? k : k + 1;
            ut.values = (u.slices[hi].values - u.slices[lo].values) / (u.times[hi] - u.times[lo]);
        }
        const schauder::GridFn du = schauder::pointwise_norm(schauder::fd_gradient(s));
        const schauder::GridFn tr = schauder::pointwise_trace(schauder::fd_hessian(s));
        const std::string t = shortest(u.times[k]);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const schauder::Point x = grid.point(i);
            out << t;
            for (int a = 0; a < d; ++a) out << ',' << shortest(x[static_cast<std::size_t>(a)]);
            out << ',' << shortest(s[i]) << ',' << shortest(ut[i]) << ',' << shortest(du[i]) << ','
                << shortest(tr[i]) << '\n';
        }
    }
}

void emit_csv(const schauder::SolveResult& result, const std::string& path) { emit_csv(result.u, path); }

void emit_plot_script(const json& report, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "# gnuplot script written by schauderlab; run from the report directory\n";
    out << "set datafile separator ','\n";
    out << "set grid\n";
    const json* sweep = nullptr;
    const json* embed = nullptr;
    if (report.contains("audits"))
        for (const auto& a : report.at("audits")) {
            if (!a.contains("series")) continue;
            if (a.at("name") == "schauder") sweep = &a.at("series");
            if (a.at("name") == "embedding") embed = &a.at("series");
        }

    if (sweep) {
        out << "\n$nemp << EOD\n";
        const auto& xs = sweep->at("values");
        const auto& ns = sweep->at("N_emp");
        for (std::size_t i = 0; i < xs.size(); ++i) out << xs[i].dump() << ' ' << ns[i].dump() << '\n';
        out << "EOD\n";
        out << "set datafile separator whitespace\n";
        out << "set title 'empirical Schauder ratio'\n";
        out << "set xlabel '" << sweep->at("parameter").get<std::string>() << "'\nset ylabel 'N_emp'\n";
        out << "plot $nemp using 1:2 with linespoints title 'N_emp'\n";
        out << "pause -1 'next'\n";
        out << "set datafile separator ','\n";
    }

    if (embed) {
        out << "\n$ratios << EOD\n";
        const auto& hs = embed->at("h");
        for (std::size_t i = 0; i < hs.size(); ++i)
            out << hs[i].dump() << ' ' << embed->at("r1")[i].dump() << ' ' << embed->at("r2")[i].dump() << '\n';
        out << "EOD\n";
        out << "set datafile separator whitespace\n";
        out << "set logscale xy\n";
        out << "set title 'embedding ratios'\nset xlabel 'h'\nset ylabel 'ratio'\n";
        out << "plot $ratios using 1:2 with linespoints title 'r1', $ratios using 1:3 with linespoints title 'r2'\n";
        out << "pause -1 'next'\n";
        out << "unset logscale\nset datafile separator ','\n";
    }

    if (report.contains("solves") && !report.at("solves").empty()) {
        const json& s = report.at("solves").front();
        const std::string csv = s.at("csv").get<std::string>();
        const int d = s.at("d").get<int>();
        const auto& times = s.at("plot_times");
        out << "\nset title 'solution slices'\nset xlabel 'x1'\nset ylabel 'u'\n";
        const int ucol = d + 2;
        if (d == 1) {
            out << "plot ";
            for (std::size_t i = 0; i < times.size(); ++i) {
                const std::string t = times[i].dump();
                out << (i ? ", " : "") << "'" << csv << "' every ::1 using ($1 == " << t << " ? $2 : 1/0):"
                    << ucol << " with lines title 't = " << t << "'";
            }
            out << '\n';
        } else {
            // Surface of the last listed slice; further axes are cut at their middle node.
            const std::string t = times.back().dump();
            std::string cut;
            for (int a = 4; a <= d + 1; ++a) cut += " && abs($" + std::to_string(a) + ") < " + shortest(0.5 * s.at("h").get<double>());
            out << "set ylabel 'x2'\nset zlabel 'u'\n";
            out << "splot '" << csv << "' every ::1 using ($1 == " << t << cut << " ? $2 : 1/0):3:" << ucol
                << " with points pt 7 ps 0.3 title 't = " << t << "'\n";
        }
        out << "pause -1 'done'\n";
    }
}

}  // namespace schauderlab
