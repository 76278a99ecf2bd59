#pragma once

#include <vector>

#include "schauder/grid.hpp"
#include "schauder/kernel.hpp"

namespace schauder {

enum class Extension {
    Clamp,  // values beyond the box repeat the nearest boundary value
    Zero,
};

struct ConvolutionOptions {
    /// Stencil half-width in standard deviations sqrt(2 lambda_max(A)).
    double tail_sigmas = 8.0;
    Extension extension = Extension::Clamp;
};

/// Lattice convolution with the Gaussian of parameter A (covariance 2A).
/// Weights are normalised by their lattice sum; a diagonal A is applied as
/// successive 1-d passes.
GridFn gaussian_convolve(const GridFn& g, const SmallMat& A, const ConvolutionOptions& opts = {});

/// Same, with the source evaluated on a lattice extended by the stencil
/// half-width so no boundary extension is needed.
GridFn gaussian_convolve(const SpaceFunction& g, const SpaceGrid& grid, const SmallMat& A,
                         const ConvolutionOptions& opts = {});

/// Heat semigroup with a = I: covariance 2 tau.
GridFn heat_semigroup(const GridFn& h, double tau, const ConvolutionOptions& opts = {});

struct PotentialOptions {
    /// Midpoint subintervals over [s, t_support_end], shared among the
    /// breakpoint segments in proportion to their length (at least one each).
    int intervals = 64;
    TimeQuadrature quadrature;
    ConvolutionOptions convolution;
    /// Samples with |f| above this are rejected as unbounded.
    double bound = 1e12;
};

/// Nodes of the composite midpoint rule on [s, end] split at breakpoints.
struct MidpointNodes {
    std::vector<double> t;
    std::vector<double> w;
};
MidpointNodes midpoint_nodes(double s, double end, const std::vector<double>& breakpoints, int intervals);

/// Gf(s, .) = int_s^end p(s, t, .) * f(t, .) dt for a callable source.
GridFn potential_G(const TimeMatrixPath& path, const SpaceTimeFunction& f, double s, const SpaceGrid& grid,
                   double t_support_end, const std::vector<double>& f_breakpoints = {},
                   const PotentialOptions& opts = {});

/// Same with f given on time slices (linear in time between slices).
GridFn potential_G(const TimeMatrixPath& path, const SpaceTimeFn& f, double s, double t_support_end,
                   const PotentialOptions& opts = {});

/// 1 / integral of the bump exp(-1/(1-|x|^2)) over the unit ball of R^d.
double bump_constant(int d);

/// Convolution with the scaled bump of radius eps (lattice-normalised).
GridFn mollify(const GridFn& fn, double eps);

/// Solution of u_t + Δu - δu = f with u = 0 for t >= S, on the times of f
/// (which must lie in [., S] or beyond). Marches backward with
/// u(t_k) = e^{-δΔt} T_Δt u(t_{k+1}) - Δt e^{-δΔt/2} T_{Δt/2} f(midpoint).
/// dt_slices come from the equation: f - Δ_h u + δ u.
SpaceTimeFn heat_solve(const SpaceTimeFn& f, double delta, double S, const ConvolutionOptions& opts = {});

/// Same with a callable source and explicit output times.
SpaceTimeFn heat_solve(const SpaceTimeFunction& f, double delta, double S, const SpaceGrid& grid,
                       const std::vector<double>& times, const ConvolutionOptions& opts = {});

}  // namespace schauder
