#include <iostream>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "schauderlab/app.hpp"

int main(int argc, char** argv) {
    CLI::App app{"schauderlab: parabolic Schauder-estimate laboratory"};
    app.require_subcommand(1);

    schauderlab::RunOptions opts;
    std::uint64_t seed = 0;
    auto add_verb = [&](const char* name, const char* help, schauderlab::Verb verb) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opts.config_path, "JSON config file")->required();
        sub->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
        sub->add_option("--seed", seed, "override the config seed");
        sub->add_flag("--strict", opts.strict, "treat hypothesis violations as config errors");
        sub->callback([&opts, verb] { opts.verb = verb; });
        return sub;
    };
    add_verb("check", "sample the structural hypotheses only", schauderlab::Verb::Check);
    add_verb("solve", "run the configured solve and write the CSV", schauderlab::Verb::Solve);
    add_verb("audit", "run the configured audit suite", schauderlab::Verb::Audit);
    add_verb("all", "hypotheses, solve, audits and plot script", schauderlab::Verb::All);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : schauderlab::kConfigError;
    }
    for (const auto* sub : app.get_subcommands())
        if (sub->count("--seed")) opts.seed = seed;

    const schauderlab::RunOutcome out = schauderlab::execute(opts);
    const auto& rep = out.report;
    if (rep.contains("error")) std::cerr << "schauderlab: " << rep["error"]["reason"].get<std::string>() << '\n';
    for (const auto& a : rep["audits"])
        std::cout << (a["pass"].get<bool>() ? "PASS " : "FAIL ") << a["name"].get<std::string>() << '\n';
    return out.exit_code;
}
