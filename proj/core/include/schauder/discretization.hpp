#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/SparseCore>

#include "schauder/grid.hpp"
#include "schauder/operator_spec.hpp"

namespace schauder {

enum class BoundaryMode {
    DirichletFinal,  // boundary nodes hold the final condition
    DirichletZero,   // boundary nodes hold 0
    Ode,             // boundary nodes follow u_t - c u = f (spatial terms dropped)
};

struct AssemblyOptions {
    BoundaryMode boundary = BoundaryMode::DirichletFinal;
    /// Force the drift to first-order upwinding everywhere.
    bool full_upwind = false;
};

using SparseRow = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Discrete L_h at one time. Interior rows: centered diffusion, mixed terms
/// 2 a_ij (u++ - u+- - u-+ + u--)/(4h^2), drift blended between centered and
/// upwind with weight max(0, 1 - 1/Pe), Pe = |b_k| h / (2 a_kk), minus c.
/// Boundary rows are empty for Dirichlet modes and -c for Ode.
struct DiscreteOperator {
    SparseRow L;
    std::vector<std::uint8_t> dirichlet;  // 1 on rows whose value is prescribed
};

DiscreteOperator assemble_operator(const OperatorSpec& spec, const SpaceGrid& grid, double t,
                                   const AssemblyOptions& opts);

/// Δ_h - delta with the same boundary convention (Ode rows are -delta).
DiscreteOperator heat_operator(const SpaceGrid& grid, double delta, const AssemblyOptions& opts);

/// Source values at one time on the grid.
GridFn sample_source(const OperatorSpec& spec, const SpaceGrid& grid, double t);

/// Upwind blend weight for cell Péclet number pe.
double upwind_weight(double pe);

}  // namespace schauder
