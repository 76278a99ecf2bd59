#pragma once

#include <vector>

#include "schauder/grid.hpp"
#include "schauder/holder.hpp"

namespace schauder {

struct EmbeddingRow {
    double h = 0.0;
    double r1 = 0.0;  // |Du(t) - Du(t-h^2)| / (I_h h^{1+alpha})
    double r2 = 0.0;  // |D^2u(t) - D^2u(t-h^2)| / (I_h h^alpha)
    double I_h = 0.0;
    double num1 = 0.0;
    double num2 = 0.0;
};

/// Time-increment ratios at the grid node nearest to `x`. I_h is the max of
/// [u_t]_alpha + [D^2u]_alpha over the stored slices in [t-h^2, t] and the two
/// endpoints (linear in time). A ratio is 0 when numerator and I_h vanish.
/// Throws ConfigError when dt_slices are missing or t-h^2 leaves the range.
std::vector<EmbeddingRow> embedding_check(const SpaceTimeFn& u, double alpha, double t, const Point& x,
                                          const std::vector<double>& h_list, const NormOptions& opts = {});

/// Least-squares slope of log E(h) against log h with E(h) = max over h' >= h
/// of r(h'). Zero entries are skipped; returns 0 with fewer than two points.
double envelope_slope(const std::vector<double>& h, const std::vector<double>& r);

}  // namespace schauder
