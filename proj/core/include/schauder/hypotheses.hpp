#pragma once

#include <string>
#include <vector>

#include "schauder/operator_spec.hpp"

namespace schauder {

struct HypothesisSampling {
    double box_radius = 2.0;
    int n_space = 9;        // points per axis of the anchor lattice
    int n_time = 5;         // time samples in [T, S], endpoints included
    int n_pairs = 6;        // dyadic distance levels 1, 1/2, ..., 2^{1-n_pairs}
    double max_dist = 1.0;  // pair distance cap
    double quotient_cap = 1e8;
};

struct Violation {
    std::string field;
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> y;  // empty for pointwise checks
    double value = 0.0;
};

struct HypothesisReport {
    double delta = 0.0;
    double bigK = 0.0;
    double F0 = 0.0;
    double Falpha = 0.0;
    std::vector<Violation> violations;

    bool holds() const { return delta > 0.0 && violations.empty(); }
};

/// Samples the structural constants of the spec on a lattice of anchors with
/// dyadic pairs along coordinate and diagonal directions. Pairs always share
/// one time, so step discontinuities in t never enter x-quotients.
HypothesisReport check_hypotheses(const OperatorSpec& spec, const HypothesisSampling& sampling);

/// Direction set used for pair sampling: axes, e_i +- e_j (d >= 2) and the
/// four body diagonals (d = 3). Not normalised.
std::vector<std::vector<int>> pair_directions(int d);

}  // namespace schauder
