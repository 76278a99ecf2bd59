#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <set>

#include "acceptance.hpp"

using namespace acceptance;

int main(int argc, char** argv) {
    std::vector<Criterion> all;
    for (auto&& group : {kernel_criteria(), solver_criteria(), estimate_criteria()})
        all.insert(all.end(), group.begin(), group.end());
    std::sort(all.begin(), all.end(), [](const Criterion& a, const Criterion& b) { return a.id < b.id; });

    // Optional criterion ids on the command line restrict the run.
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    int failed = 0;
    for (const Criterion& c : all) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = out.pass;
        if (c.limit_seconds > 0.0 && secs > c.limit_seconds) {
            pass = false;
            out.detail += " [runtime over " + std::to_string(static_cast<int>(c.limit_seconds)) + " s]";
        }
        std::printf("%s  C%02d %s: %s (%.2f s)\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), out.detail.c_str(),
                    secs);
        std::fflush(stdout);
        if (!pass) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
