#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "schauder/grid.hpp"
#include "schauder/small_linalg.hpp"

namespace schauder {

using TimeVector = std::function<SmallVec(double)>;
using TimeScalar = std::function<double(double)>;

struct ShiftedField {
    GridFn values;
    std::vector<std::uint8_t> valid;  // 0 where x + shift leaves the box
    bool exact = false;               // shift was a whole number of cells
};

/// v(x) = g(x + shift): exact re-indexing when every component of shift/h is
/// within 1e-9 of an integer, multilinear interpolation otherwise.
ShiftedField shift_field(const GridFn& g, const SmallVec& shift);

/// int_{t_ref}^t of a time-only vector field by composite Gauss-Legendre
/// with splits at breakpoints (sign follows the orientation).
SmallVec integrate_time_vector(const TimeVector& f, double t_ref, double t, const std::vector<double>& breakpoints = {});
double integrate_time_scalar(const TimeScalar& f, double t_ref, double t, const std::vector<double>& breakpoints = {});

struct GaugeTranslation {
    SpaceTimeFn v;
    std::vector<std::vector<std::uint8_t>> valid;
    std::vector<SmallVec> shift;  // B(t) per slice
    bool exact = true;
};

/// v(t, x) = u(t, x + B(t)) with B(t) = int_{t_ref}^t b0. When u carries
/// dt_slices, v_t = (u_t + b0 . Du) is formed on the original grid and then
/// shifted.
GaugeTranslation gauge_translate(const SpaceTimeFn& u, const TimeVector& b0,
                                 const std::vector<double>& breakpoints = {}, double t_ref = 0.0);

struct GaugeExp {
    SpaceTimeFn v;
    std::vector<double> C;  // C(t) per slice
};

/// v(t, .) = e^{-C(t)} u(t, .) with C(t) = int_{t_ref}^t c0, and
/// v_t = e^{-C}(u_t - c0 u) when dt_slices are present.
GaugeExp gauge_exp(const SpaceTimeFn& u, const TimeScalar& c0, const std::vector<double>& breakpoints = {},
                   double t_ref = 0.0);

}  // namespace schauder
