#pragma once

#include <vector>

#include "schauder/grid.hpp"
#include "schauder/kernel.hpp"
#include "schauder/potential.hpp"

namespace schauder {

/// 1-d spectral evaluation of -Gf(t, .): each slice is zero-padded to twice
/// the box, transformed, damped by exp(-A_{tr} xi^2), integrated over r in
/// [t, t_support_end] with the same midpoint nodes as potential_G, and
/// transformed back. Throws ConfigError when d != 1.
GridFn fourier_oracle_1d(const TimeMatrixPath& path, const SpaceTimeFunction& f, double t, const SpaceGrid& grid,
                         double t_support_end, const PotentialOptions& opts = {});

GridFn fourier_oracle_1d(const TimeMatrixPath& path, const SpaceTimeFn& f, double t, double t_support_end,
                         const PotentialOptions& opts = {});

}  // namespace schauder
