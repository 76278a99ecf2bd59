#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "schauder/grid.hpp"

namespace schauder {

/// Restricts which nodes take part in sup norms and Hölder pairs.
struct NormOptions {
    double max_dist = 1.0;
    /// When positive, only nodes with |x_k| <= window for every k.
    double window = 0.0;
    /// When non-empty, only nodes with mask[i] != 0.
    std::vector<std::uint8_t> mask;

    bool admits(const SpaceGrid& g, std::size_t i) const;
};

struct SeminormResult {
    double value = 0.0;
    std::size_t x = 0;
    std::size_t y = 0;
};

/// Sampled [g]_alpha: pairs along the direction set of `pair_directions`, with
/// step multiples 1, 2, 4, ... and kmax, kmax/2, ... where kmax * h * |dir|
/// is the largest admissible distance. Ties go to the smallest (x, y).
SeminormResult holder_seminorm_detail(const std::vector<GridFn>& components, double alpha,
                                      const NormOptions& opts = {});

double holder_seminorm(const GridFn& fn, double alpha, const NormOptions& opts = {});

/// Vector or matrix field: Euclidean (Frobenius) norm of the difference.
double holder_seminorm(const std::vector<GridFn>& components, double alpha, const NormOptions& opts = {});

/// All pairs. Throws ConfigError for grids with more than 64 points per axis.
double holder_seminorm_bruteforce(const GridFn& fn, double alpha, const NormOptions& opts = {});

struct HolderReport {
    double sup = 0.0;
    double grad_sup = 0.0;
    double hess_sup = 0.0;
    double seminorm_alpha = 0.0;
    double seminorm_2alpha = 0.0;
    double norm_2alpha = 0.0;
};

HolderReport norm_2alpha(const GridFn& fn, double alpha, const NormOptions& opts = {});

/// sup over admitted nodes.
double masked_sup(const GridFn& fn, const NormOptions& opts);

struct InterpolationRow {
    double eps = 0.0;
    double N = 0.0;
    bool finite = true;
};

/// Least N with |v|_2 <= N |v|_0 + eps [D^2 v]_alpha over the family, where
/// |v|_2 = sup + grad_sup + hess_sup.
std::vector<InterpolationRow> check_interpolation(const std::vector<GridFn>& fns, double alpha,
                                                  const std::vector<double>& eps_list,
                                                  const NormOptions& opts = {});

}  // namespace schauder
