#pragma once

#include <functional>
#include <string>
#include <vector>

namespace acceptance {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id = 0;
    std::string title;
    double limit_seconds = 0.0;  // 0: no runtime bound
    std::function<Outcome()> run;
};

std::vector<Criterion> kernel_criteria();    // 1, 2, 3, 8
std::vector<Criterion> solver_criteria();    // 4, 5, 9, 10, 11, 12
std::vector<Criterion> estimate_criteria();  // 6, 7

}  // namespace acceptance
